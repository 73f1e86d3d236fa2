#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace levyheat::quad {

/// Adaptive Simpson on [a, b] with relative tolerance. The integrand must be
/// finite on the closed interval.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10);

/// Integral over (a, b] with an integrable singularity allowed at a:
/// geometric subdivision toward the endpoint, each piece integrated
/// adaptively, until the pieces fall below the tolerance.
double integrate_singular_lower(const std::function<double(double)>& f, double a, double b,
                                double rel_tol = 1e-10);

/// Integral over [a, +inf) by dyadic intervals. Returns +inf when the piece
/// contributions fail to decay (divergent integral).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10);

} // namespace levyheat::quad
