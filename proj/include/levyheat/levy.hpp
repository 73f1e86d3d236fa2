#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "levyheat/errors.hpp"
#include "levyheat/random.hpp"

namespace levyheat {

/// One atom of a discrete jump measure: jumps of size `size` arrive at
/// Poisson rate `rate`.
struct Atom {
    double size = 0.0;
    double rate = 0.0;
};

/// Finite-activity Levy measure nu on R \ {0}: either a list of atoms or a
/// density with finite total mass. The density variant carries a tabulated
/// inverse CDF as its sampling recipe.
class LevyMeasureSpec {
public:
    /// Empty measure (no jumps, zero mass).
    LevyMeasureSpec() = default;

    static LevyMeasureSpec atoms(std::vector<Atom> atoms);

    /// Density nu(z) >= 0 supported on [lo, hi]; hi may be +infinity when the
    /// tail mass is finite. Total mass and mean rate are computed by adaptive
    /// quadrature at construction.
    static LevyMeasureSpec density(std::function<double(double)> nu, double lo, double hi);

    double total_mass() const { return total_mass_; }
    /// mu_1 = int z nu(dz), the compensator drift.
    double mean_rate() const { return mean_rate_; }

    bool is_atoms() const;
    std::span<const Atom> atom_list() const;

    /// One jump size drawn from nu / total_mass.
    double sample_jump(RngStream& rng) const;

    /// p-th absolute moment beta_p = int |z|^p nu(dz), exact for atoms,
    /// adaptive quadrature (rel. tol. 1e-8) for densities. p >= 1.
    /// Throws infinite_moment_error when the integral diverges.
    double moment(double p) const;

private:
    struct Density {
        std::function<double(double)> nu;
        double lo = 0.0;
        double hi = 0.0;                 // effective (finite) sampling bound
        bool unbounded = false;          // true if the declared support was [lo, inf)
        std::vector<double> cdf_grid;    // abscissae of the tabulated CDF
        std::vector<double> cdf;         // cumulative mass at cdf_grid
    };

    std::variant<std::vector<Atom>, Density> body_;
    double total_mass_ = 0.0;
    double mean_rate_ = 0.0;
};

double beta_moment(const LevyMeasureSpec& nu, double p);

/// A sampled compensated compound-Poisson path on (0, T]. The compensated
/// process X_t = sum_{tau_i <= t} z_i - t mu_1 is a mean-zero martingale.
struct JumpPath {
    double horizon = 0.0;
    std::vector<double> times;       // strictly increasing in (0, T]
    std::vector<double> sizes;
    double mean_rate = 0.0;          // mu_1 of the generating measure
    std::vector<double> cumulative;  // cumulative[i] = sum of sizes[0..i]
};

/// Compound-Poisson sampling via exponential inter-arrival gaps at the total
/// rate; sizes i.i.d. from nu / total_mass. Deterministic given the stream.
JumpPath sample_path(const LevyMeasureSpec& nu, double horizon, RngStream& rng);

/// Compensated increment X_t - X_s = sum_{s < tau_i <= t} z_i - (t-s) mu_1.
double increment(const JumpPath& path, double s, double t);

/// Infinite-activity jump density on (0, z_max] (or symmetric on
/// -z_max <= z < 0 too), possibly singular at the origin.
struct InfiniteActivityDensity {
    std::function<double(double)> density;  // evaluated at |z|
    double z_max = 1.0;
    bool symmetric = false;                 // mirror mass onto negative sizes
};

struct TruncationResult {
    LevyMeasureSpec measure;        // restricted to |z| >= epsilon
    double truncated_mass = 0.0;    // nu({|z| >= epsilon})
    double discarded_variance = 0.0;// int_{|z| < epsilon} z^2 nu(dz)
};

/// Restricts a (possibly infinite-activity) density to jumps |z| >= epsilon
/// and reports the variance of what was discarded.
TruncationResult truncate_small_jumps(const InfiniteActivityDensity& nu, double epsilon);

/// Finite-measure overload: atoms/mass below epsilon are dropped; a cutoff
/// below the smallest jump returns the measure unchanged with zero bias.
TruncationResult truncate_small_jumps(const LevyMeasureSpec& nu, double epsilon);

} // namespace levyheat
