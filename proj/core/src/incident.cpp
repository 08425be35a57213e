#include "cloakwave/incident.hpp"

#include <cmath>

#include "cloakwave/errors.hpp"
#include "cloakwave/specfun.hpp"

namespace cloakwave::fields {
namespace {

Vec planar(const Vec& v, int dimension) { return dimension == 2 ? Vec{v[0], v[1], 0} : v; }

Complex i_power(int n) {
  static constexpr Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[n % 4];
}

}  // namespace

void validate(const IncidentSpec& spec, int dimension) {
  if (spec.kind == IncidentKind::PlaneWave) {
    const Real len = norm(planar(spec.direction, dimension));
    if (std::abs(len - 1) > 1e-12L) throw ValidationError("incident: plane-wave direction must be a unit vector");
  } else {
    const Real r0 = norm(planar(spec.location, dimension));
    if (!(r0 > 2.5L && r0 < 4.5L)) throw ValidationError("incident: point source must satisfy 2.5 < |x0| < 4.5");
  }
  if (!std::isfinite(spec.amplitude.real()) || !std::isfinite(spec.amplitude.imag())) {
    throw ValidationError("incident: amplitude must be finite");
  }
}

Vec expansion_axis(const IncidentSpec& spec, int dimension) {
  const Vec v = planar(spec.kind == IncidentKind::PlaneWave ? spec.direction : spec.location, dimension);
  return scaled(v, 1 / norm(v));
}

std::vector<Complex> incident_coefficients(const IncidentSpec& spec, int dimension, Real k, int n_max) {
  validate(spec, dimension);
  std::vector<Complex> b(n_max + 1);
  if (spec.kind == IncidentKind::PlaneWave) {
    for (int n = 0; n <= n_max; ++n) {
      const Real weight = dimension == 2 ? (n == 0 ? 1 : 2) : 2 * n + 1;
      b[n] = spec.amplitude * weight * i_power(n);
    }
    return b;
  }
  const Real kr0 = k * norm(planar(spec.location, dimension));
  if (dimension == 2) {
    const auto h = specfun::cyl_table(specfun::CylKind::H1, n_max, kr0);
    for (int n = 0; n <= n_max; ++n) b[n] = spec.amplitude * (kI / Real(4)) * Real(n == 0 ? 1 : 2) * h.value[n];
  } else {
    const auto h = specfun::sph_table(specfun::SphKind::h1, n_max, kr0);
    for (int n = 0; n <= n_max; ++n) b[n] = spec.amplitude * (kI * k / (4 * kPi)) * Real(2 * n + 1) * h.value[n];
  }
  return b;
}

Complex incident_direct(const IncidentSpec& spec, int dimension, Real k, const Vec& x) {
  const Vec p = planar(x, dimension);
  if (spec.kind == IncidentKind::PlaneWave) {
    return spec.amplitude * std::exp(kI * k * dot(planar(spec.direction, dimension), p));
  }
  const Vec x0 = planar(spec.location, dimension);
  const Real dist = norm(Vec{p[0] - x0[0], p[1] - x0[1], p[2] - x0[2]});
  if (dimension == 2) {
    return spec.amplitude * (kI / Real(4)) * specfun::cyl_bessel(specfun::CylKind::H1, 0, k * dist).value;
  }
  return spec.amplitude * std::exp(kI * k * dist) / (4 * kPi * dist);
}

}  // namespace cloakwave::fields
