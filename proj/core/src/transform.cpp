#include "cloakwave/transform.hpp"

#include <cmath>
#include <string>

#include "cloakwave/errors.hpp"

namespace cloakwave::transform {

void validate(const BlowupMap& m) {
  if (m.dimension != 2 && m.dimension != 3) {
    throw DomainError("blow-up map: dimension must be 2 or 3, got " + std::to_string(m.dimension));
  }
  if (!(m.epsilon >= 0 && m.epsilon <= 1)) throw DomainError("blow-up map: epsilon must lie in [0, 1]");
}

Real radial_forward(const BlowupMap& m, Real r) {
  const Real eps = m.epsilon;
  if (r >= 2) return r;
  if (r >= eps) return (2 - 2 * eps) / (2 - eps) + r / (2 - eps);
  if (eps == 0) throw DomainError("F_0 is undefined at the origin");
  return r / eps;
}

Real radial_inverse(const BlowupMap& m, Real rho) {
  const Real eps = m.epsilon;
  if (eps <= 0) throw DomainError("map_inverse requires epsilon > 0");
  if (rho >= 2) return rho;
  if (rho >= 1) return (2 - eps) * rho - (2 - 2 * eps);
  return eps * rho;
}

Real radial_derivative(const BlowupMap& m, Real r) {
  const Real eps = m.epsilon;
  if (r >= 2) return 1;
  if (r >= eps) return 1 / (2 - eps);
  return 1 / eps;
}

Vec map_forward(const BlowupMap& m, const Vec& x) {
  validate(m);
  const Real r = norm(x);
  if (r == 0) {
    if (m.epsilon == 0) throw DomainError("F_0 is undefined at the origin");
    return x;
  }
  return scaled(x, radial_forward(m, r) / r);
}

Vec map_inverse(const BlowupMap& m, const Vec& y) {
  validate(m);
  const Real rho = norm(y);
  if (rho == 0) {
    if (m.epsilon == 0) throw DomainError("map_inverse requires epsilon > 0");
    return y;
  }
  return scaled(y, radial_inverse(m, rho) / rho);
}

Real jacobian_determinant(const BlowupMap& m, Real r) {
  const Real tangential = radial_forward(m, r) / r;
  return radial_derivative(m, r) * std::pow(tangential, m.dimension - 1);
}

ShellTensors shell_tensors(const BlowupMap& m, Real physical_radius) {
  validate(m);
  if (m.epsilon <= 0) throw DomainError("shell tensors are singular at epsilon = 0");
  if (!(physical_radius > 1 && physical_radius < 2)) {
    throw DomainError("shell tensors requested outside the shell (1, 2)");
  }
  const Real r = radial_inverse(m, physical_radius);
  const Real drho = radial_derivative(m, r);
  const Real stretch = physical_radius / r;
  const Real det = drho * std::pow(stretch, m.dimension - 1);
  return {drho * drho / det, stretch * stretch / det, 1 / det};
}

std::array<std::array<Real, 3>, 3> shell_tensor_matrix(const BlowupMap& m, const Vec& y) {
  std::array<std::array<Real, 3>, 3> a{};
  const Real rho = norm(y);
  const int d = m.dimension;
  if (!(rho > 1 && rho < 2)) {
    for (int i = 0; i < d; ++i) a[i][i] = 1;
    return a;
  }
  const ShellTensors t = shell_tensors(m, rho);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Real rr = y[i] * y[j] / (rho * rho);
      a[i][j] = t.radial_a * rr + t.tangential_a * ((i == j ? 1 : 0) - rr);
    }
  }
  return a;
}

}  // namespace cloakwave::transform
