#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace levyheat {

/// Seeded random stream with hand-rolled samplers on top of mt19937_64.
/// The engine is fully specified by the standard and the samplers below use
/// only its raw 64-bit output, so identical seeds give identical draws on
/// every platform. One stream per worker/path; never share across threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Independent substream for (master seed, index), splitmix64-mixed so
    /// that nearby indices decorrelate.
    static RngStream derive(std::uint64_t master, std::uint64_t index) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return RngStream(z ^ (z >> 31));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double uniform_positive() { return 1.0 - uniform01(); }

    double exponential(double rate) { return -std::log(uniform_positive()) / rate; }

    /// Standard normal via Box-Muller; the partner draw is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform_positive();
        double v = uniform01();
        double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * kPi_ * v);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi_ * v);
    }

    /// Index into a cumulative-weight table (strictly increasing, last = total).
    std::size_t pick(std::span<const double> cumulative) {
        double u = uniform01() * cumulative.back();
        std::size_t lo = 0, hi = cumulative.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] <= u)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

private:
    static constexpr double kPi_ = 3.141592653589793238462643383279502884;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace levyheat
