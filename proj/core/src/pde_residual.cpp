#include "cloakwave/pde_residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cloakwave/errors.hpp"

namespace cloakwave::transform {
namespace {

constexpr Real kRoundoffFloor = 1e-8L;

Vec shifted(const Vec& y, int axis, Real step) {
  Vec z = y;
  z[axis] += step;
  return z;
}

Real density(const BlowupMap& m, const Vec& y) {
  const Real rho = norm(y);
  return (rho > 1 && rho < 2) ? shell_tensors(m, rho).sigma_c : 1;
}

std::array<Complex, 3> gradient(const std::function<Complex(const Vec&)>& u, int d, const Vec& y, Real h) {
  std::array<Complex, 3> g{};
  for (int j = 0; j < d; ++j) g[j] = (u(shifted(y, j, h)) - u(shifted(y, j, -h))) / (2 * h);
  return g;
}

Complex flux(const std::function<Complex(const Vec&)>& u, const BlowupMap& m, int i, const Vec& z, Real h) {
  const auto a = shell_tensor_matrix(m, z);
  const auto g = gradient(u, m.dimension, z, h);
  Complex f = 0;
  for (int j = 0; j < m.dimension; ++j) f += a[i][j] * g[j];
  return f;
}

}  // namespace

Complex pde_operator(const std::function<Complex(const Vec&)>& u, const BlowupMap& m, Real k, const Vec& y, Real h) {
  Complex div = 0;
  for (int i = 0; i < m.dimension; ++i) {
    div += (flux(u, m, i, shifted(y, i, h), h) - flux(u, m, i, shifted(y, i, -h), h)) / (2 * h);
  }
  return div + k * k * density(m, y) * u(y);
}

ResidualReport pde_residual_report(const fields::FieldSeries& field, const BlowupMap& m, std::span<const Vec> points,
                                   Real h) {
  validate(m);
  if (field.domain != fields::Domain::Physical) throw DomainError("pde_residual needs a physical field");
  if (field.dimension != m.dimension) throw DomainError("pde_residual: dimension mismatch");
  if (std::abs(field.epsilon - m.epsilon) > 1e-15L) throw DomainError("pde_residual: map and field disagree on eps");
  if (!(h >= 1e-4L && h <= 1e-2L)) throw DomainError("pde_residual: h must lie in [1e-4, 1e-2]");
  const Real k = field.exterior_wavenumber();
  auto u = [&](const Vec& y) { return fields::eval_field(field, y); };

  ResidualReport report;
  for (const Vec& p : points) {
    const Vec y = m.dimension == 2 ? Vec{p[0], p[1], 0} : p;
    const Real rho = norm(y);
    if (rho < 1 + 3 * h || std::abs(rho - 2) <= 3 * h) {
      throw DomainError("pde_residual: point closer than 3h to an interface or inside B_1");
    }
    const auto g = gradient(u, m.dimension, y, h);
    Real grad2 = 0;
    for (int j = 0; j < m.dimension; ++j) grad2 += std::norm(g[j]);
    const Real scale = std::sqrt(std::norm(u(y)) + grad2 / (k * k));

    const Complex d1 = pde_operator(u, m, k, y, h);
    const Complex d2 = pde_operator(u, m, k, y, h / 2);
    const Complex d4 = pde_operator(u, m, k, y, h / 4);
    const Real e1 = std::abs(d1 - d2);
    const Real e2 = std::abs(d2 - d4);
    if (e1 > kRoundoffFloor * scale) {
      const Real ratio = e2 > 0 ? e1 / e2 : std::numeric_limits<Real>::infinity();
      if (ratio < 2 || ratio > 8) {
        throw ConvergenceError("pde_residual: step too large (Richardson ratio " + std::to_string(double(ratio)) +
                               ")");
      }
    }
    report.residual = std::max(report.residual, std::abs(d1) / scale);
    report.residual_half = std::max(report.residual_half, std::abs(d2) / scale);
  }
  return report;
}

}  // namespace cloakwave::transform
