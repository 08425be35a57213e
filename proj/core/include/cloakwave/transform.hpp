#pragma once

// Radial blow-up map F_eps that expands B_eps onto B_1, compresses B_2 \ B_eps
// onto the cloak shell B_2 \ B_1 and fixes everything outside B_2, plus the
// push-forward material parameters it induces on the shell.

#include "cloakwave/types.hpp"

namespace cloakwave::transform {

/// epsilon == 0 denotes the limit map F_0 (point evaluation only).
struct BlowupMap {
  Real epsilon = 0.1L;
  int dimension = 3;
};

/// Eigen-decomposition of the push-forward tensors at a shell point:
/// A_c = radial_a * (r r^T) + tangential_a * (I - r r^T), Sigma_c = sigma_c.
struct ShellTensors {
  Real radial_a = 1;
  Real tangential_a = 1;
  Real sigma_c = 1;
};

/// Radial profile rho(r) of the map, so that F(x) = rho(|x|) x / |x|.
Real radial_forward(const BlowupMap& m, Real r);
/// Inverse radial profile; requires epsilon > 0.
Real radial_inverse(const BlowupMap& m, Real rho);
/// d rho / d r at virtual radius r (off the interfaces |x| = eps, |x| = 2).
Real radial_derivative(const BlowupMap& m, Real r);

Vec map_forward(const BlowupMap& m, const Vec& x);
Vec map_inverse(const BlowupMap& m, const Vec& y);

/// det DF at virtual point of radius r: rho'(r) (rho(r)/r)^(d-1).
Real jacobian_determinant(const BlowupMap& m, Real r);

/// Push-forward of (I, 1) at physical radius in (1, 2). Throws DomainError
/// outside the shell or for epsilon == 0.
ShellTensors shell_tensors(const BlowupMap& m, Real physical_radius);

/// Cartesian A_c at a physical point (identity outside the shell).
std::array<std::array<Real, 3>, 3> shell_tensor_matrix(const BlowupMap& m, const Vec& y);

void validate(const BlowupMap& m);

}  // namespace cloakwave::transform
