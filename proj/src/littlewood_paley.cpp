#include "levyheat/littlewood_paley.hpp"

#include <cmath>

#include "levyheat/multiplier.hpp"

namespace levyheat {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

} // namespace

double DyadicPartition::default_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    double a = bump(2.0 - r);
    double b = bump(r - 1.0);
    return a / (a + b);
}

DyadicPartition DyadicPartition::build(const GridSpec& grid) {
    return build(grid, &DyadicPartition::default_profile);
}

DyadicPartition DyadicPartition::build(const GridSpec& grid, Profile chi) {
    const double xi_min = grid.min_nonzero_frequency();
    const double xi_max = grid.max_frequency_norm();

    // phi_hat_j is nonzero exactly on 2^{j-1} < |xi| < 2^{j+1}. The smallest
    // useful j is the first one whose open support reaches xi_min; the scan
    // starts well below any representable band.
    int j_min = static_cast<int>(std::floor(std::log2(xi_min))) - 2;
    while (!(std::exp2(j_min + 1) > xi_min)) ++j_min;

    int j_max = j_min;
    while (!(std::exp2(j_max - 1) >= xi_max)) ++j_max;

    return DyadicPartition(grid, std::move(chi), j_min, j_max);
}

double DyadicPartition::phi_hat(int j, double xi_norm) const {
    return chi_(xi_norm * std::exp2(-j)) - chi_(xi_norm * std::exp2(-(j - 1)));
}

Field project_block(const DyadicPartition& part, const Field& f, int j) {
    if (j < part.j_min() || j > part.j_max())
        throw contract_error("project_block: dyadic index out of the resolved range");
    const Rep caller_rep = f.rep();
    Field four = to_fourier(f);
    auto& vals = four.mutable_values();
    const GridSpec& g = four.grid();
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] *= part.phi_hat(j, g.frequency_norm(i));
    return caller_rep == Rep::Physical ? to_physical(four) : four;
}

Field project_low(const DyadicPartition& part, const Field& f) {
    const Rep caller_rep = f.rep();
    Field four = to_fourier(f);
    auto& vals = four.mutable_values();
    const GridSpec& g = four.grid();
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] *= part.psi_hat(g.frequency_norm(i));
    return caller_rep == Rep::Physical ? to_physical(four) : four;
}

double besov_norm(const DyadicPartition& part, const Field& f, double k, double p,
                  bool homogeneous) {
    if (!(p >= 1.0))
        throw contract_error("besov_norm: p must be >= 1");
    const Field four = to_fourier(f);
    if (homogeneous && std::abs(four[0]) > kMeanZeroTol)
        throw singularity_error("besov_norm: homogeneous norm requires a mean-zero field");

    const int j_lo = homogeneous ? part.j_min() : 1;
    double sum = 0.0;
    for (int j = j_lo; j <= part.j_max(); ++j) {
        double block = lp_norm(project_block(part, four, j), p);
        sum += std::pow(std::exp2(k * j) * block, p);
    }
    double dyadic = std::pow(sum, 1.0 / p);
    if (homogeneous) return dyadic;
    return lp_norm(project_low(part, four), p) + dyadic;
}

double sobolev_norm(const Field& f, double k, double p, bool homogeneous) {
    if (!homogeneous) return lp_norm(bessel_potential(f, k), p);
    if (zero_mode_modulus(f) > kMeanZeroTol)
        throw singularity_error("sobolev_norm: homogeneous norm requires a mean-zero field");
    return lp_norm(riesz_potential(f, k), p);
}

} // namespace levyheat
