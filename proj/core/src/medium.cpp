#include "cloakwave/medium.hpp"

#include <cmath>
#include <string>

#include "cloakwave/errors.hpp"

namespace cloakwave::mie {

Real LayeredMedium::exterior_wavenumber(Real k) const { return k * std::sqrt(exterior_sigma); }

Complex LayeredMedium::wavenumber(std::size_t layer, Real k) const {
  const Layer& l = layers.at(layer);
  return layer_wavenumber(k, l.a, l.sigma);
}

std::size_t LayeredMedium::locate(Real r) const {
  for (std::size_t j = 0; j < layers.size(); ++j) {
    if (r < layers[j].outer_radius) return j;
  }
  return layers.size();
}

Complex layer_wavenumber(Real k, Real a, Complex sigma) {
  Complex kappa = k * std::sqrt(sigma / a);
  if (kappa.imag() < 0) kappa = -kappa;
  return kappa;
}

void validate(const LayeredMedium& medium) {
  if (medium.dimension != 2 && medium.dimension != 3) {
    throw ValidationError("medium: dimension must be 2 or 3");
  }
  if (!(medium.exterior_sigma > 0) || !std::isfinite(medium.exterior_sigma)) {
    throw ValidationError("medium: exterior sigma must be positive");
  }
  Real previous = 0;
  for (std::size_t j = 0; j < medium.layers.size(); ++j) {
    const Layer& l = medium.layers[j];
    const std::string where = "medium layer " + std::to_string(j) + ": ";
    if (!(l.outer_radius > previous) || !std::isfinite(l.outer_radius)) {
      throw ValidationError(where + "radii must be strictly increasing and positive");
    }
    if (!(l.a > 0) || !std::isfinite(l.a)) throw ValidationError(where + "a must be positive");
    if (!(l.sigma.real() > 0)) throw ValidationError(where + "Re sigma must be positive");
    if (l.sigma.imag() < 0) throw ValidationError(where + "Im sigma must be nonnegative");
    previous = l.outer_radius;
  }
}

specfun::BesselTable basis_table(int dimension, Basis kind, int n_max, Complex z) {
  using namespace specfun;
  if (dimension == 2) {
    switch (kind) {
      case Basis::Regular: return cyl_table(CylKind::J, n_max, z);
      case Basis::Singular: return cyl_table(CylKind::Y, n_max, z);
      case Basis::Outgoing: return cyl_table(CylKind::H1, n_max, z);
    }
  }
  switch (kind) {
    case Basis::Regular: return sph_table(SphKind::j, n_max, z);
    case Basis::Singular: return sph_table(SphKind::y, n_max, z);
    case Basis::Outgoing: return sph_table(SphKind::h1, n_max, z);
  }
  return {};
}

specfun::BesselEval basis_eval(int dimension, Basis kind, int n, Complex z) {
  return basis_table(dimension, kind, n, z)[n];
}

Complex basis_second_derivative(int dimension, int n, Complex z, const specfun::BesselEval& f) {
  return dimension == 2 ? specfun::cyl_second_derivative(n, z, f) : specfun::sph_second_derivative(n, z, f);
}

Real angular_eigenvalue(int dimension, int n) {
  return dimension == 2 ? Real(n) * n : Real(n) * (n + 1);
}

Real angular_weight(int dimension, int n) {
  if (dimension == 2) return n == 0 ? 2 * kPi : kPi;
  return 4 * kPi / (2 * n + 1);
}

}  // namespace cloakwave::mie
