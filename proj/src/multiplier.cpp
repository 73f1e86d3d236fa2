#include "levyheat/multiplier.hpp"

#include <cmath>
#include <cstdio>

namespace levyheat {

Multiplier Multiplier::radial(std::string name, std::function<cplx(double)> fn) {
    return Multiplier{std::move(name), [fn = std::move(fn)](double xi0, double xi1) {
                          return fn(std::hypot(xi0, xi1));
                      }};
}

Multiplier Multiplier::identity() {
    return Multiplier{"identity", [](double, double) { return cplx(1.0, 0.0); }};
}

Field apply_multiplier(const Field& f, const Multiplier& m) {
    const Rep caller_rep = f.rep();
    Field four = to_fourier(f);
    auto& vals = four.mutable_values();
    const GridSpec& g = four.grid();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        auto xi = g.frequency(i);
        cplx s = m.symbol(xi[0], xi[1]);
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw singularity_error("apply_multiplier: symbol '" + m.name +
                                    "' is singular at a grid frequency");
        vals[i] *= s;
    }
    return caller_rep == Rep::Physical ? to_physical(four) : four;
}

Field heat_semigroup(const Field& f, double t) {
    if (!(t >= 0.0))
        throw contract_error("heat_semigroup: time must be nonnegative");
    if (t == 0.0) return f;
    const SemigroupKind kind = SemigroupKind::heat();
    return apply_multiplier(f, Multiplier::radial("heat", [t, kind](double r) {
                                return cplx(std::exp(-kind.rate(r) * t), 0.0);
                            }));
}

Field fractional_semigroup(const Field& f, double t, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw contract_error("fractional_semigroup: alpha must lie in (0,1)");
    if (!(t >= 0.0))
        throw contract_error("fractional_semigroup: time must be nonnegative");
    if (t == 0.0) return f;
    const SemigroupKind kind = SemigroupKind::fractional(alpha);
    return apply_multiplier(f, Multiplier::radial("fractional", [t, kind](double r) {
                                return cplx(std::exp(-kind.rate(r) * t), 0.0);
                            }));
}

Field bessel_potential(const Field& f, double s) {
    if (s == 0.0) return f;
    return apply_multiplier(f, Multiplier::radial("bessel", [s](double r) {
                                return cplx(std::pow(1.0 + 4.0 * kPi * kPi * r * r, s / 2.0), 0.0);
                            }));
}

Field riesz_potential(const Field& f, double s) {
    if (s == 0.0) return f;
    const Rep caller_rep = f.rep();
    Field four = to_fourier(f);
    if (s < 0.0 && std::abs(four[0]) > kMeanZeroTol)
        throw singularity_error("riesz_potential: negative order requires a mean-zero field");
    auto& vals = four.mutable_values();
    const GridSpec& g = four.grid();
    vals[0] = cplx(0.0, 0.0);
    for (std::size_t i = 1; i < vals.size(); ++i)
        vals[i] *= std::pow(2.0 * kPi * g.frequency_norm(i), s);
    return caller_rep == Rep::Physical ? to_physical(four) : four;
}

SemigroupKind SemigroupKind::fractional(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw contract_error("SemigroupKind: alpha must lie in (0,1)");
    return {Family::Fractional, alpha};
}

double SemigroupKind::rate(double xi_norm) const {
    if (family == Family::Heat) return 4.0 * kPi * kPi * xi_norm * xi_norm;
    return std::pow(2.0 * kPi * xi_norm, 2.0 * alpha);
}

double SemigroupKind::block_scale(int j) const {
    double a = family == Family::Heat ? 1.0 : alpha;
    return std::pow(2.0, 2.0 * a * j);
}

std::string SemigroupKind::label() const {
    if (family == Family::Heat) return "heat";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fractional(%.2f)", alpha);
    return buf;
}

Field semigroup_apply(const Field& f, double t, const SemigroupKind& kind) {
    return kind.family == SemigroupKind::Family::Heat ? heat_semigroup(f, t)
                                                      : fractional_semigroup(f, t, kind.alpha);
}

} // namespace levyheat
