#pragma once

#include <cstdint>
#include <vector>

#include "levyheat/grid.hpp"
#include "levyheat/levy.hpp"
#include "levyheat/multiplier.hpp"

namespace levyheat {

/// Uniform time discretization of (0, T): nodes t_n = n T / M, n = 0..M.
struct TimeGrid {
    double horizon = 1.0;
    int steps = 1;

    static TimeGrid make(double horizon, int steps);
    double dt() const { return horizon / steps; }
    double node(int n) const { return horizon * n / steps; }
};

/// Time-indexed family of Fields; frame n is the left-continuous
/// representative g(t_n, .). All frames share one GridSpec.
class SpaceTimeField {
public:
    SpaceTimeField(TimeGrid tgrid, std::vector<Field> frames);

    static SpaceTimeField constant(const TimeGrid& tgrid, const Field& frame);

    const TimeGrid& time_grid() const { return tgrid_; }
    const GridSpec& grid() const { return frames_.front().grid(); }
    int steps() const { return tgrid_.steps; }
    const Field& frame(int n) const { return frames_.at(static_cast<std::size_t>(n)); }

private:
    TimeGrid tgrid_;
    std::vector<Field> frames_;
};

/// Frame at node n_s propagated by the semigroup over the elapsed time
/// t_{n_t} - t_{n_s}. Requires n_s <= n_t.
Field evolve(const SpaceTimeField& g, int n_t, int n_s, const SemigroupKind& kind);

/// Quadrature of int_0^T int_0^t ||T_{t-s} g(s,.)||_p^p ds dt with the
/// left-endpoint rule in both variables (the inner sum respects the
/// predictable evaluation of g):
///   sum_{n=0}^{M-1} dt sum_{m<n} dt ||evolve(g, n, m)||_p^p.
double prop1_lhs(const SpaceTimeField& g, double p, const SemigroupKind& kind);

enum class Scheme { ExactJump, EulerGrid };

/// Stochastic convolution u(t) = int_0^t T_{t-s} g(s,.) dX_s on the time
/// grid, with frames returned in the Fourier representation and u(t_0) = 0.
///
///   ExactJump: u(t_n) = sum_{tau_i <= t_n} z_i T_{t_n - tau_i} g(floor(tau_i),.)
///                       - mu_1 sum_{m<n} dt T_{t_n - t_m} g(t_m,.)
///   EulerGrid: u(t_n) = sum_{m<n} T_{t_n - t_m} g(t_m,.) dX_m,
///              dX_m = increment(path, t_m, t_{m+1}),
/// where floor(tau) is the last grid node <= tau (predictable evaluation).
SpaceTimeField stochastic_convolution(const SpaceTimeField& g, const JumpPath& path,
                                      Scheme scheme, const SemigroupKind& kind);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Which norm the Monte Carlo solution functional integrates.
struct SolutionNorm {
    enum class Family { Sobolev, Besov };
    Family family = Family::Sobolev;
    double k = 0.0;
    double p = 2.0;
    bool homogeneous = false;
};

/// Monte Carlo mean (with standard error) over sampled paths of
/// sum_n dt ||u(t_n)||^p, where u is the ExactJump stochastic convolution and
/// ||.|| is the requested space norm. Deterministic given (seed, samples)
/// and independent of the worker count.
McEstimate mc_solution_norm_in(const SpaceTimeField& g, const LevyMeasureSpec& nu,
                               const SolutionNorm& norm, int samples, std::uint64_t seed,
                               const SemigroupKind& kind, int workers = 1);

/// Sobolev-norm specialization: mean of sum_n dt ||u(t_n)||_{H^k_p}^p.
McEstimate mc_solution_norm(const SpaceTimeField& g, const LevyMeasureSpec& nu, double k,
                            double p, bool homogeneous, int samples, std::uint64_t seed,
                            const SemigroupKind& kind, int workers = 1);

} // namespace levyheat
