#pragma once

// Finite-difference check that a composed physical field solves
// div(A_c grad u) + k^2 Sigma_c u = 0 in and around the cloak shell.

#include <span>

#include "cloakwave/fields.hpp"

namespace cloakwave::transform {

struct ResidualReport {
  Real residual = 0;       // max relative residual at step h
  Real residual_half = 0;  // same at h / 2
};

/// Relative residual |div_h(A grad_h u) + k^2 Sigma u| / sqrt(|u|^2 + |grad u|^2 / k^2)
/// with central differences in flux form, maximized over the points. Each point
/// also runs a Richardson test on steps h, h/2, h/4; if the successive
/// differences are above roundoff and their ratio leaves [2, 8] the step is
/// too large and ConvergenceError is thrown.
/// Preconditions: physical field, h in [1e-4, 1e-2], points outside B_1 and
/// more than 3h away from |y| = 1 and |y| = 2.
ResidualReport pde_residual_report(const fields::FieldSeries& field, const BlowupMap& m, std::span<const Vec> points,
                                   Real h);

inline Real pde_residual(const fields::FieldSeries& field, const BlowupMap& m, std::span<const Vec> points, Real h) {
  return pde_residual_report(field, m, points, h).residual;
}

/// Residual of an arbitrary field u(y) at one point, in the same flux form.
Complex pde_operator(const std::function<Complex(const Vec&)>& u, const BlowupMap& m, Real k, const Vec& y, Real h);

}  // namespace cloakwave::transform
