#include "levyheat/levy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyheat/quadrature.hpp"

namespace levyheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kCdfCells = 4096;

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
    if (std::isinf(hi)) return quad::integrate_to_infinity(f, lo, rel_tol);
    if (lo < 0.0 && hi > 0.0)
        return quad::adaptive_simpson(f, lo, 0.0, rel_tol) +
               quad::adaptive_simpson(f, 0.0, hi, rel_tol);
    return quad::adaptive_simpson(f, lo, hi, rel_tol);
}

} // namespace

LevyMeasureSpec LevyMeasureSpec::atoms(std::vector<Atom> atoms) {
    LevyMeasureSpec spec;
    double mass = 0.0, mean = 0.0;
    for (const Atom& a : atoms) {
        if (a.size == 0.0)
            throw contract_error("LevyMeasureSpec: atom sizes must be nonzero");
        if (!(a.rate > 0.0))
            throw contract_error("LevyMeasureSpec: atom rates must be positive");
        mass += a.rate;
        mean += a.rate * a.size;
    }
    spec.body_ = std::move(atoms);
    spec.total_mass_ = mass;
    spec.mean_rate_ = mean;
    return spec;
}

LevyMeasureSpec LevyMeasureSpec::density(std::function<double(double)> nu, double lo,
                                         double hi) {
    if (!(lo < hi))
        throw contract_error("LevyMeasureSpec: density support must satisfy lo < hi");
    if (std::isinf(lo))
        throw contract_error("LevyMeasureSpec: support must be bounded below");

    Density d;
    d.nu = std::move(nu);
    d.lo = lo;
    d.unbounded = std::isinf(hi);

    double mass;
    if (d.unbounded) {
        // Grow the sampling window until the remaining tail is negligible.
        double cursor = std::max(std::abs(lo), 1.0) + lo;
        mass = quad::adaptive_simpson(d.nu, lo, cursor, 1e-10);
        for (int k = 0;; ++k) {
            if (k >= 1000 || !std::isfinite(mass))
                throw contract_error("LevyMeasureSpec: density total mass diverges");
            double next = 2.0 * cursor;
            double piece = quad::adaptive_simpson(d.nu, cursor, next, 1e-10);
            if (piece < 1e-13 * mass && k > 2) break;
            mass += piece;
            cursor = next;
        }
        d.hi = cursor;
    } else {
        d.hi = hi;
        mass = integrate(d.nu, lo, hi, 1e-10);
    }
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw contract_error("LevyMeasureSpec: density must have positive finite mass");

    double mean = integrate([&d](double z) { return z * d.nu(z); }, lo,
                            d.unbounded ? kInf : hi, 1e-10);
    if (!std::isfinite(mean))
        throw contract_error("LevyMeasureSpec: compensator drift diverges");

    // Tabulated-inverse-CDF sampling recipe on the effective support.
    d.cdf_grid.resize(kCdfCells + 1);
    d.cdf.resize(kCdfCells + 1);
    double step = (d.hi - d.lo) / kCdfCells;
    d.cdf_grid[0] = d.lo;
    d.cdf[0] = 0.0;
    for (std::size_t c = 1; c <= kCdfCells; ++c) {
        d.cdf_grid[c] = d.lo + step * static_cast<double>(c);
        d.cdf[c] = d.cdf[c - 1] +
                   quad::adaptive_simpson(d.nu, d.cdf_grid[c - 1], d.cdf_grid[c], 1e-10);
    }

    LevyMeasureSpec spec;
    spec.body_ = std::move(d);
    spec.total_mass_ = mass;
    spec.mean_rate_ = mean;
    return spec;
}

bool LevyMeasureSpec::is_atoms() const {
    return std::holds_alternative<std::vector<Atom>>(body_);
}

std::span<const Atom> LevyMeasureSpec::atom_list() const {
    return std::get<std::vector<Atom>>(body_);
}

double LevyMeasureSpec::sample_jump(RngStream& rng) const {
    if (is_atoms()) {
        const auto& atoms = std::get<std::vector<Atom>>(body_);
        if (atoms.empty())
            throw contract_error("sample_jump: measure has no mass");
        // Small lists; a linear cumulative scan is deterministic and enough.
        double u = rng.uniform01() * total_mass_;
        double acc = 0.0;
        for (const Atom& a : atoms) {
            acc += a.rate;
            if (u < acc) return a.size;
        }
        return atoms.back().size;
    }
    const Density& d = std::get<Density>(body_);
    double u = rng.uniform01() * d.cdf.back();
    auto it = std::upper_bound(d.cdf.begin(), d.cdf.end(), u);
    std::size_t c = std::min<std::size_t>(std::distance(d.cdf.begin(), it), kCdfCells);
    if (c == 0) c = 1;
    double m0 = d.cdf[c - 1], m1 = d.cdf[c];
    double frac = m1 > m0 ? (u - m0) / (m1 - m0) : 0.5;
    return d.cdf_grid[c - 1] + frac * (d.cdf_grid[c] - d.cdf_grid[c - 1]);
}

double LevyMeasureSpec::moment(double p) const {
    if (!(p >= 1.0))
        throw contract_error("beta_moment: p must be >= 1");
    if (is_atoms()) {
        double acc = 0.0;
        for (const Atom& a : std::get<std::vector<Atom>>(body_))
            acc += a.rate * std::pow(std::abs(a.size), p);
        return acc;
    }
    const Density& d = std::get<Density>(body_);
    auto f = [&d, p](double z) { return std::pow(std::abs(z), p) * d.nu(z); };
    double value = integrate(f, d.lo, d.unbounded ? kInf : d.hi, 1e-8);
    if (!std::isfinite(value))
        throw infinite_moment_error("beta_moment: integral diverges");
    return value;
}

double beta_moment(const LevyMeasureSpec& nu, double p) { return nu.moment(p); }

JumpPath sample_path(const LevyMeasureSpec& nu, double horizon, RngStream& rng) {
    if (!(horizon > 0.0))
        throw contract_error("sample_path: horizon must be positive");
    JumpPath path;
    path.horizon = horizon;
    path.mean_rate = nu.mean_rate();
    double rate = nu.total_mass();
    if (rate <= 0.0) return path;

    double t = 0.0;
    for (;;) {
        double gap = rng.exponential(rate);
        while (gap <= 0.0) gap = rng.exponential(rate);
        t += gap;
        if (t > horizon) break;
        path.times.push_back(t);
        path.sizes.push_back(nu.sample_jump(rng));
    }
    path.cumulative.resize(path.sizes.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < path.sizes.size(); ++i) {
        acc += path.sizes[i];
        path.cumulative[i] = acc;
    }
    return path;
}

double increment(const JumpPath& path, double s, double t) {
    if (!(0.0 <= s && s <= t && t <= path.horizon))
        throw contract_error("increment: need 0 <= s <= t <= horizon");
    auto jump_sum = [&path](double x) {
        auto it = std::upper_bound(path.times.begin(), path.times.end(), x);
        std::size_t cnt = static_cast<std::size_t>(std::distance(path.times.begin(), it));
        return cnt == 0 ? 0.0 : path.cumulative[cnt - 1];
    };
    return jump_sum(t) - jump_sum(s) - (t - s) * path.mean_rate;
}

TruncationResult truncate_small_jumps(const InfiniteActivityDensity& nu, double epsilon) {
    if (!(epsilon > 0.0))
        throw contract_error("truncate_small_jumps: cutoff must be positive");
    if (!(epsilon < nu.z_max))
        throw contract_error("truncate_small_jumps: cutoff exceeds the support");

    double sides = nu.symmetric ? 2.0 : 1.0;
    auto var_integrand = [&nu](double z) { return z * z * nu.density(z); };
    double discarded = sides * quad::integrate_singular_lower(var_integrand, 0.0, epsilon, 1e-10);

    TruncationResult out;
    out.discarded_variance = discarded;
    if (nu.symmetric) {
        auto mirrored = [f = nu.density, epsilon](double z) {
            double a = std::abs(z);
            return a >= epsilon ? f(a) : 0.0;
        };
        out.measure = LevyMeasureSpec::density(mirrored, -nu.z_max, nu.z_max);
    } else {
        out.measure = LevyMeasureSpec::density(nu.density, epsilon, nu.z_max);
    }
    out.truncated_mass = out.measure.total_mass();
    return out;
}

TruncationResult truncate_small_jumps(const LevyMeasureSpec& nu, double epsilon) {
    if (!(epsilon > 0.0))
        throw contract_error("truncate_small_jumps: cutoff must be positive");
    TruncationResult out;
    if (nu.is_atoms()) {
        std::vector<Atom> kept;
        double discarded = 0.0;
        for (const Atom& a : nu.atom_list()) {
            if (std::abs(a.size) >= epsilon)
                kept.push_back(a);
            else
                discarded += a.rate * a.size * a.size;
        }
        out.measure = kept.empty() ? LevyMeasureSpec::atoms({})
                                   : LevyMeasureSpec::atoms(std::move(kept));
        out.discarded_variance = discarded;
        out.truncated_mass = out.measure.total_mass();
        return out;
    }
    throw contract_error(
        "truncate_small_jumps: use the InfiniteActivityDensity overload for densities");
}

} // namespace levyheat
