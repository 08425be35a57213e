#include "cloakwave/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cloakwave/errors.hpp"
#include "cloakwave/interior_source.hpp"

namespace cloakwave::fields {
namespace {

constexpr Real kInterfaceTolerance = 1e-13L;
constexpr int kTruncationStep = 10;
constexpr Real kTailTolerance = 1e-14L;

Vec planar(const Vec& v, int dimension) { return dimension == 2 ? Vec{v[0], v[1], 0} : v; }

bool tail_ok(const std::vector<mie::ModeSolution>& modes, int dimension, Real kext, Real r_tail) {
  const int n_max = static_cast<int>(modes.size()) - 1;
  const auto reg = mie::basis_table(dimension, mie::Basis::Regular, n_max, kext * r_tail);
  Real largest = 0;
  Real last = 0;
  for (int n = 0; n <= n_max; ++n) {
    const Real q = std::abs(modes[n].scattered) + std::abs(modes[n].incident * reg.value[n]);
    largest = std::max(largest, q);
    last = q;
  }
  return last <= kTailTolerance * largest;
}

Real point_source_radius(const FieldSeries& F) {
  if (!F.incident || F.incident->kind != IncidentKind::PointSource) return 0;
  return norm(planar(F.incident->location, F.dimension));
}

}  // namespace

int default_truncation(Real k, Real r_max) {
  return static_cast<int>(std::ceil(std::numbers::e_v<Real> * k * r_max / 2)) + 15;
}

FieldSeries solve_series(const mie::LayeredMedium& medium, Real k, const IncidentSpec& incident, int truncation,
                         Real r_max) {
  mie::validate(medium);
  validate(incident, medium.dimension);
  if (!(k > 0)) throw ValidationError("k must be positive");
  if (truncation < 0 || truncation > specfun::kMaxOrder) {
    throw ValidationError("truncation must lie in [0, " + std::to_string(specfun::kMaxOrder) + "]");
  }
  FieldSeries F;
  F.dimension = medium.dimension;
  F.k = k;
  F.medium = medium;
  F.axis = expansion_axis(incident, medium.dimension);
  F.incident = incident;
  const Real kext = medium.exterior_wavenumber(k);
  const Real r_tail = incident.kind == IncidentKind::PlaneWave ? r_max : std::min(r_max, Real(2));
  const bool automatic = truncation == 0;
  int n_max = automatic ? std::min(default_truncation(kext, r_max), specfun::kMaxOrder) : truncation;
  while (true) {
    const auto b = incident_coefficients(incident, medium.dimension, kext, n_max);
    F.modes = mie::solve_modes(medium, k, b);
    if (tail_ok(F.modes, medium.dimension, kext, r_tail)) return F;
    if (!automatic || n_max == specfun::kMaxOrder) {
      throw TruncationError("modal tail criterion fails at truncation " + std::to_string(n_max));
    }
    n_max = std::min(n_max + kTruncationStep, specfun::kMaxOrder);
  }
}

FieldSeries cloak_series(const CloakConfig& config, int truncation, Real r_max) {
  FieldSeries F = solve_series(mie::virtual_medium(config), config.k, config.incident, truncation, r_max);
  F.domain = Domain::Physical;
  F.epsilon = config.epsilon;
  return F;
}

FieldSeries source_series(const CloakConfig& config, const mie::ResonanceSpec& spec, Real normalization) {
  FieldSeries F;
  F.dimension = config.dimension;
  F.k = config.k;
  F.medium = mie::virtual_medium(config);
  F.axis = config.dimension == 2 ? Vec{1, 0, 0} : Vec{0, 0, 1};
  F.domain = Domain::Physical;
  F.epsilon = config.epsilon;
  F.modes.resize(spec.mode + 1);
  for (int n = 0; n < spec.mode; ++n) {
    F.modes[n].n = n;
    F.modes[n].layers.resize(F.medium.layers.size());
  }
  F.modes[spec.mode] = mie::interior_source_mode_solve(F.medium, config.k, spec, normalization);
  return F;
}

std::vector<Real> angular_functions(int dimension, int n_max, Real c) {
  std::vector<Real> p(n_max + 1);
  p[0] = 1;
  if (n_max >= 1) p[1] = c;
  for (int n = 1; n < n_max; ++n) {
    p[n + 1] = dimension == 2 ? 2 * c * p[n] - p[n - 1] : ((2 * n + 1) * c * p[n] - n * p[n - 1]) / (n + 1);
  }
  return p;
}

std::vector<Real> interfaces(const FieldSeries& F) {
  std::vector<Real> radii;
  for (const auto& l : F.medium.layers) radii.push_back(l.outer_radius);
  if (F.domain == Domain::Physical) {
    const auto m = F.map();
    for (Real& r : radii) r = transform::radial_forward(m, r);
    if (F.epsilon < 1) radii.push_back(2);
  }
  std::sort(radii.begin(), radii.end());
  return radii;
}

std::vector<mie::RadialSample> radial_modes(const FieldSeries& F, Real radius, Component which) {
  const int n_max = F.truncation();
  std::vector<mie::RadialSample> out(std::max(n_max + 1, 0));
  if (n_max < 0) return out;
  Real r = radius;
  Real jac = 1;
  if (F.domain == Domain::Physical) {
    const auto m = F.map();
    r = transform::radial_inverse(m, radius);
    jac = 1 / transform::radial_derivative(m, r);
  }
  const int d = F.dimension;
  const std::size_t j = F.medium.locate(r);
  const Real kext = F.exterior_wavenumber();
  const bool exterior = j == F.medium.layers.size();
  const Real r0 = point_source_radius(F);
  if (r0 > 0 && which != Component::Scattered && r >= r0) {
    throw UnsupportedConfiguration("regular expansion of a point source diverges beyond |x0|");
  }
  specfun::BesselTable incident;
  if (which != Component::Total || exterior) {
    incident = mie::basis_table(d, mie::Basis::Regular, n_max, kext * r);
  }
  if (exterior) {
    specfun::BesselTable outgoing;
    if (which != Component::Incident) outgoing = mie::basis_table(d, mie::Basis::Outgoing, n_max, kext * r);
    for (int n = 0; n <= n_max; ++n) {
      const auto& mode = F.modes[n];
      Complex v = 0;
      Complex dv = 0;
      if (which != Component::Scattered) {
        v += mode.incident * incident.value[n];
        dv += mode.incident * kext * incident.derivative[n];
      }
      if (which != Component::Incident) {
        v += mode.scattered * outgoing.value[n];
        dv += mode.scattered * kext * outgoing.derivative[n];
      }
      out[n] = {v, dv * jac};
    }
    return out;
  }
  const Complex kappa = F.medium.wavenumber(j, F.k);
  const auto reg = mie::basis_table(d, mie::Basis::Regular, n_max, kappa * r);
  specfun::BesselTable sing;
  if (j > 0) sing = mie::basis_table(d, mie::Basis::Singular, n_max, kappa * r);
  for (int n = 0; n <= n_max; ++n) {
    const auto& mode = F.modes[n];
    Complex v = 0;
    Complex dv = 0;
    if (which != Component::Incident) {
      const auto& c = mode.layers[j];
      v = c.regular * reg.value[n];
      dv = c.regular * kappa * reg.derivative[n];
      if (j > 0) {
        v += c.singular * sing.value[n];
        dv += c.singular * kappa * sing.derivative[n];
      }
      if (mode.particular && mode.particular->layer == j) {
        const auto p = mie::particular_sample(F.medium, F.k, n, *mode.particular, r);
        v += p.value;
        dv += p.derivative;
      }
    }
    if (which != Component::Total) {
      const Complex iv = mode.incident * incident.value[n];
      const Complex idv = mode.incident * kext * incident.derivative[n];
      if (which == Component::Incident) {
        v = iv;
        dv = idv;
      } else {
        v -= iv;
        dv -= idv;
      }
    }
    out[n] = {v, dv * jac};
  }
  return out;
}

Complex eval_field(const FieldSeries& F, const Vec& x, Component which) {
  const Vec p = planar(x, F.dimension);
  const Real rho = norm(p);
  for (Real R : interfaces(F)) {
    if (std::abs(rho - R) <= kInterfaceTolerance * R) {
      throw InterfaceError("field evaluated on the interface |x| = " + std::to_string(double(R)));
    }
  }
  const Vec v = F.domain == Domain::Physical ? transform::map_inverse(F.map(), p) : p;
  const bool exterior = F.medium.locate(norm(v)) == F.medium.layers.size();
  Complex direct = 0;
  Component series_part = which;
  if (exterior && F.incident && which != Component::Scattered) {
    direct = incident_direct(*F.incident, F.dimension, F.exterior_wavenumber(), v);
    if (which == Component::Incident) return direct;
    series_part = Component::Scattered;
  }
  const auto samples = radial_modes(F, rho, series_part);
  const Real c = rho > 0 ? dot(p, F.axis) / rho : 1;
  const auto theta = angular_functions(F.dimension, F.truncation(), c);
  Complex sum = direct;
  for (int n = F.truncation(); n >= 0; --n) sum += samples[n].value * theta[n];
  return sum;
}

}  // namespace cloakwave::fields
