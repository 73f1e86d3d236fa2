#pragma once

#include <functional>

#include "levyheat/grid.hpp"

namespace levyheat {

/// Smooth dyadic partition of unity on the resolved frequency band.
///
/// The radial profile chi satisfies chi(r) = 1 for r <= 1 and chi(r) = 0 for
/// r >= 2, smooth in between. The low block is psi_hat(xi) = chi(|xi|) and the
/// dyadic blocks are phi_hat_j(xi) = chi(|xi|/2^j) - chi(|xi|/2^{j-1}),
/// supported in 2^{j-1} <= |xi| <= 2^{j+1}. The sums telescope:
///   psi_hat + sum_{j>=1} phi_hat_j = 1        everywhere,
///   sum_{j in Z} phi_hat_j = 1                away from 0,
/// and both hold exactly on the grid once truncated to [j_min, j_max].
class DyadicPartition {
public:
    using Profile = std::function<double(double)>;

    /// Default profile chi(r) = h(2-r) / (h(2-r) + h(r-1)), h(x) = e^{-1/x}
    /// for x > 0 and 0 otherwise. Boundary values chi(1) = 1, chi(2) = 0 are
    /// exact, which makes single-mode block projections exact.
    static double default_profile(double r);

    static DyadicPartition build(const GridSpec& grid);
    static DyadicPartition build(const GridSpec& grid, Profile chi);

    const GridSpec& grid() const { return grid_; }
    /// Smallest dyadic index whose block meets a resolved nonzero frequency.
    int j_min() const { return j_min_; }
    /// Largest index kept; the first j with 2^{j-1} >= max resolved |xi|.
    int j_max() const { return j_max_; }

    double chi(double r) const { return chi_(r); }
    double psi_hat(double xi_norm) const { return chi_(xi_norm); }
    double phi_hat(int j, double xi_norm) const;

private:
    DyadicPartition(GridSpec grid, Profile chi, int j_min, int j_max)
        : grid_(grid), chi_(std::move(chi)), j_min_(j_min), j_max_(j_max) {}

    GridSpec grid_;
    Profile chi_;
    int j_min_;
    int j_max_;
};

/// Dyadic block projection: Fourier coefficients multiplied by phi_hat_j.
/// j must lie in [j_min, j_max].
Field project_block(const DyadicPartition& part, const Field& f, int j);

/// Low-frequency projection with multiplier psi_hat.
Field project_low(const DyadicPartition& part, const Field& f);

/// Besov norm B^k_p (inner and outer exponent both p).
///   nonhomogeneous: ||psi*f||_p + (sum_{j=1}^{j_max} (2^{kj} ||phi_j*f||_p)^p)^{1/p}
///   homogeneous:    (sum_{j=j_min}^{j_max} ...)^{1/p}, requires mean-zero f.
double besov_norm(const DyadicPartition& part, const Field& f, double k, double p,
                  bool homogeneous);

/// Sobolev norm: ||(I - Lap)^{k/2} f||_p, or ||(-Lap)^{k/2} f||_p for the
/// homogeneous version (mean-zero f required).
double sobolev_norm(const Field& f, double k, double p, bool homogeneous);

} // namespace levyheat
