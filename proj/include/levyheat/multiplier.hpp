#pragma once

#include <functional>
#include <string>

#include "levyheat/grid.hpp"

namespace levyheat {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Fourier multiplier: a symbol evaluated exactly at the grid frequencies.
struct Multiplier {
    std::string name;
    /// Symbol as a function of the continuous frequency components
    /// (xi1 == 0 when dim == 1).
    std::function<cplx(double xi0, double xi1)> symbol;

    static Multiplier radial(std::string name, std::function<cplx(double)> fn);
    static Multiplier identity();
};

/// Multiplies the Fourier coefficient at k by symbol(xi_k) and returns the
/// result in the caller's representation. Throws singularity_error if the
/// symbol is non-finite at a needed frequency.
Field apply_multiplier(const Field& f, const Multiplier& m);

/// Heat semigroup T_t, symbol e^{-4 pi^2 |xi|^2 t}, so u(t) = T_t f solves
/// u_t = Lap u under the e^{-2 pi i xi.x} transform convention. t >= 0;
/// T_0 is the exact identity.
Field heat_semigroup(const Field& f, double t);

/// Fractional semigroup with symbol e^{-t (2 pi |xi|)^{2 alpha}},
/// alpha in (0,1). The alpha -> 1 limit reproduces the heat symbol.
Field fractional_semigroup(const Field& f, double t, double alpha);

/// Bessel potential (I - Lap)^{s/2}: symbol (1 + 4 pi^2 |xi|^2)^{s/2}.
Field bessel_potential(const Field& f, double s);

/// Riesz potential (-Lap)^{s/2}: symbol (2 pi |xi|)^s with the zero mode
/// set to 0 for s != 0. For s < 0 the input must be mean-zero
/// (|zero mode| <= 1e-12), else singularity_error.
Field riesz_potential(const Field& f, double s);

/// Which dissipative semigroup an operation uses.
struct SemigroupKind {
    enum class Family { Heat, Fractional };
    Family family = Family::Heat;
    double alpha = 1.0;

    static SemigroupKind heat() { return {Family::Heat, 1.0}; }
    static SemigroupKind fractional(double alpha);

    /// Decay rate lambda(|xi|) such that the symbol is e^{-t lambda}.
    double rate(double xi_norm) const;

    /// Dyadic block decay scale: 2^{2j} for heat, 2^{2 j alpha} for fractional.
    /// Block j kernels collapse onto one curve in theta = block_scale(j) * t.
    double block_scale(int j) const;

    std::string label() const;
};

Field semigroup_apply(const Field& f, double t, const SemigroupKind& kind);

} // namespace levyheat
