#pragma once

#include <cstddef>
#include <vector>

#include "cloakwave/specfun.hpp"
#include "cloakwave/types.hpp"

namespace cloakwave::mie {

/// Homogeneous isotropic shell r_{j-1} < r < outer_radius with div(a grad u) + k^2 sigma u = 0.
struct Layer {
  Real outer_radius = 1;
  Real a = 1;
  Complex sigma = 1;

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Concentric layers (innermost first) embedded in an exterior with a = 1.
struct LayeredMedium {
  int dimension = 3;
  std::vector<Layer> layers;
  Real exterior_sigma = 1;

  Real outer_radius() const { return layers.empty() ? 0 : layers.back().outer_radius; }
  Real exterior_wavenumber(Real k) const;
  /// k sqrt(sigma_j / a_j) on the principal branch (Im >= 0).
  Complex wavenumber(std::size_t layer, Real k) const;
  /// Index of the layer containing radius r, or layers.size() for the exterior.
  std::size_t locate(Real r) const;

  friend bool operator==(const LayeredMedium&, const LayeredMedium&) = default;
};

/// Throws ValidationError unless radii increase, a > 0, Re sigma > 0, Im sigma >= 0.
void validate(const LayeredMedium& medium);

Complex layer_wavenumber(Real k, Real a, Complex sigma);

/// Radial basis functions of the separated Helmholtz equation: regular
/// (J_n / j_n), singular (Y_n / y_n) and outgoing (H_n^(1) / h_n^(1)).
enum class Basis { Regular, Singular, Outgoing };

specfun::BesselTable basis_table(int dimension, Basis kind, int n_max, Complex z);
specfun::BesselEval basis_eval(int dimension, Basis kind, int n, Complex z);
Complex basis_second_derivative(int dimension, int n, Complex z, const specfun::BesselEval& f);

/// Eigenvalue of the angular Laplacian for mode n: n^2 (2D), n(n+1) (3D).
Real angular_eigenvalue(int dimension, int n);

/// Integral over the unit circle/sphere of the squared angular function of mode n,
/// cos(n theta) in 2D, P_n(cos theta) in 3D.
Real angular_weight(int dimension, int n);

}  // namespace cloakwave::mie
