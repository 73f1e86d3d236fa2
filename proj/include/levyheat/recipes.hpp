#pragma once

#include <array>
#include <cstdint>

#include "levyheat/convolution.hpp"
#include "levyheat/grid.hpp"

namespace levyheat {

/// Named, versioned field generators used by experiment configs and tests.
/// The schema version of the config format pins their meaning.

Field make_zero(const GridSpec& grid);

Field make_constant(const GridSpec& grid, cplx value);

/// Pure Fourier mode: coefficient `amplitude` at integer frequency k0
/// (second component ignored when dim == 1).
Field make_single_mode(const GridSpec& grid, std::array<int, 2> k0, cplx amplitude = 1.0);

/// Real random field with spectral coefficients |c_k| ~ (1 + |xi_k|^2)^{-slope/2}
/// times a complex normal draw, conjugate-symmetrized. mean_zero forces c_0 = 0.
Field make_random_decay(const GridSpec& grid, double slope, std::uint64_t seed,
                        bool mean_zero);

/// Time-constant space-time field.
SpaceTimeField make_constant_in_time(const TimeGrid& tgrid, const Field& frame);

/// Step in time: frames equal `frame` on on_from <= t_n < on_until, else zero.
SpaceTimeField make_time_window(const TimeGrid& tgrid, const Field& frame, double on_from,
                                double on_until);

} // namespace levyheat
