#include "cloakwave/interior_source.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "cloakwave/errors.hpp"

namespace cloakwave::mie {

Real eigenfunction_norm(int dimension, int n, Real kappa_star) {
  auto integrand = [&](Real rho) {
    const Real f = basis_eval(dimension, Basis::Regular, n, kappa_star * rho).value.real();
    return f * f * std::pow(rho, dimension - 1);
  };
  const Real radial = boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(integrand, Real(0), Real(1), 10, 1e-15L);
  return std::sqrt(angular_weight(dimension, n) * radial);
}

ModeSolution interior_source_mode_solve(const LayeredMedium& medium, Real k, const ResonanceSpec& spec,
                                        Real normalization) {
  if (medium.layers.size() != 1) {
    throw UnsupportedConfiguration("interior sources require a single homogeneous inclusion");
  }
  if (spec.dimension != medium.dimension) throw ValidationError("interior source: dimension mismatch");
  const Real r1 = medium.layers[0].outer_radius;
  const Real amplitude = normalization / (std::pow(r1, medium.dimension) *
                                          eigenfunction_norm(medium.dimension, spec.mode, spec.kappa_star));
  const ParticularSolution source{0, amplitude, spec.kappa_star / r1};
  return mode_solve_with_source(medium, k, spec.mode, 0, source);
}

}  // namespace cloakwave::mie
