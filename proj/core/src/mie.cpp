#include "cloakwave/mie.hpp"

#include <cmath>
#include <string>

#include "cloakwave/errors.hpp"

namespace cloakwave {

void validate(const CloakConfig& config) {
  if (config.dimension != 2 && config.dimension != 3) throw ValidationError("config: dimension must be 2 or 3");
  if (!(config.k > 0) || !std::isfinite(config.k)) throw ValidationError("config: k must be positive");
  if (!(config.epsilon > 0 && config.epsilon <= 1)) throw ValidationError("config: epsilon must lie in (0, 1]");
  if (config.interior.empty()) throw ValidationError("config: at least one interior layer is required");
  if (std::abs(config.interior.back().outer_radius - 1) > 1e-12L) {
    throw ValidationError("config: outermost interior layer must have radius 1");
  }
  mie::validate(mie::LayeredMedium{config.dimension, config.interior, 1});
  fields::validate(config.incident, config.dimension);
}

namespace mie {
namespace {

struct InterfaceTables {
  Real radius = 0;
  Complex inner_kappa = 0;
  Real inner_a = 1;
  specfun::BesselTable inner_regular;
  specfun::BesselTable inner_singular;  // empty for the innermost layer
  Complex outer_kappa = 0;
  Real outer_a = 1;
  specfun::BesselTable outer_regular;
  specfun::BesselTable outer_second;  // singular, or outgoing at the exterior
};

std::vector<InterfaceTables> build_tables(const LayeredMedium& medium, Real k, int n_max) {
  std::vector<InterfaceTables> tables;
  const int d = medium.dimension;
  const std::size_t count = medium.layers.size();
  tables.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    InterfaceTables t;
    t.radius = medium.layers[j].outer_radius;
    t.inner_kappa = medium.wavenumber(j, k);
    t.inner_a = medium.layers[j].a;
    t.inner_regular = basis_table(d, Basis::Regular, n_max, t.inner_kappa * t.radius);
    if (j > 0) t.inner_singular = basis_table(d, Basis::Singular, n_max, t.inner_kappa * t.radius);
    const bool exterior = (j + 1 == count);
    t.outer_kappa = exterior ? Complex(medium.exterior_wavenumber(k)) : medium.wavenumber(j + 1, k);
    t.outer_a = exterior ? Real(1) : medium.layers[j + 1].a;
    t.outer_regular = basis_table(d, Basis::Regular, n_max, t.outer_kappa * t.radius);
    t.outer_second =
        basis_table(d, exterior ? Basis::Outgoing : Basis::Singular, n_max, t.outer_kappa * t.radius);
    tables.push_back(std::move(t));
  }
  return tables;
}

struct Trace {
  std::vector<LayerCoefficients> layers;  // interior layers, then the exterior (regular, outgoing)
};

// Propagates a state that starts as (start, 0) in layer 0 plus an optional
// particular solution living in layer 0.
Trace propagate(const LayeredMedium& medium, Real k, int n, const std::vector<InterfaceTables>& tables,
                Complex start, const ParticularSolution* particular) {
  Trace trace;
  trace.layers.reserve(tables.size() + 1);
  LayerCoefficients state{start, 0};
  for (std::size_t j = 0; j < tables.size(); ++j) {
    const InterfaceTables& t = tables[j];
    trace.layers.push_back(state);
    Complex u = state.regular * t.inner_regular.value[n];
    Complex flux = state.regular * t.inner_regular.derivative[n];
    if (j > 0) {
      u += state.singular * t.inner_singular.value[n];
      flux += state.singular * t.inner_singular.derivative[n];
    }
    flux *= t.inner_a * t.inner_kappa;
    if (particular != nullptr && particular->layer == j) {
      const RadialSample p = particular_sample(medium, k, n, *particular, t.radius);
      u += p.value;
      flux += t.inner_a * p.derivative;
    }
    const Complex r = t.outer_regular.value[n];
    const Complex rp = t.outer_regular.derivative[n];
    const Complex s = t.outer_second.value[n];
    const Complex sp = t.outer_second.derivative[n];
    const Complex scale = t.outer_a * t.outer_kappa;
    const Complex det = scale * (r * sp - s * rp);
    state.regular = (u * scale * sp - s * flux) / det;
    state.singular = (r * flux - scale * rp * u) / det;
  }
  trace.layers.push_back(state);
  return trace;
}

ModeSolution assemble(const LayeredMedium& medium, Real k, int n, Complex incident,
                      const std::vector<InterfaceTables>& tables, const ParticularSolution* particular) {
  ModeSolution sol;
  sol.n = n;
  sol.incident = incident;
  if (particular != nullptr) sol.particular = *particular;
  if (tables.empty()) return sol;

  const Trace hom = propagate(medium, k, n, tables, 1, nullptr);
  const LayerCoefficients& ext = hom.layers.back();
  const InterfaceTables& last = tables.back();
  const Real kext = medium.exterior_wavenumber(k);
  const Real regular_size = std::hypot(std::abs(last.outer_regular.value[n]),
                                       kext * std::abs(last.outer_regular.derivative[n]));
  const Real outgoing_size = std::hypot(std::abs(last.outer_second.value[n]),
                                        kext * std::abs(last.outer_second.derivative[n]));
  const Real regular_part = std::abs(ext.regular) * regular_size;
  const Real outgoing_part = std::abs(ext.singular) * outgoing_size;
  if (!(regular_part > kSingularThreshold * (regular_part + outgoing_part))) {
    throw SingularSystemError("mode " + std::to_string(n) + ": interface system is singular (resonance)", n);
  }

  Trace part;
  if (particular != nullptr) part = propagate(medium, k, n, tables, 0, particular);
  const Complex part_regular = particular != nullptr ? part.layers.back().regular : Complex(0);
  const Complex part_outgoing = particular != nullptr ? part.layers.back().singular : Complex(0);

  const Complex c0 = (incident - part_regular) / ext.regular;
  sol.scattered = part_outgoing + c0 * ext.singular;
  sol.layers.resize(tables.size());
  for (std::size_t j = 0; j < tables.size(); ++j) {
    sol.layers[j].regular = c0 * hom.layers[j].regular;
    sol.layers[j].singular = c0 * hom.layers[j].singular;
    if (particular != nullptr) {
      sol.layers[j].regular += part.layers[j].regular;
      sol.layers[j].singular += part.layers[j].singular;
    }
  }
  return sol;
}

void check_mode(int n) {
  if (n < 0 || n > specfun::kMaxOrder) throw DomainError("mode index " + std::to_string(n) + " out of range");
}

}  // namespace

LayeredMedium virtual_medium(const CloakConfig& config) {
  validate(config);
  const Real eps = config.epsilon;
  const int d = config.dimension;
  LayeredMedium medium{d, {}, 1};
  for (const Layer& l : config.interior) {
    medium.layers.push_back({l.outer_radius * eps, l.a * std::pow(eps, Real(2 - d)), l.sigma * std::pow(eps, Real(-d))});
  }
  return medium;
}

ModeSolution mode_solve(const LayeredMedium& medium, Real k, int n, Complex incident) {
  validate(medium);
  check_mode(n);
  return assemble(medium, k, n, incident, build_tables(medium, k, n), nullptr);
}

std::vector<ModeSolution> solve_modes(const LayeredMedium& medium, Real k, std::span<const Complex> incident) {
  validate(medium);
  std::vector<ModeSolution> out;
  if (incident.empty()) return out;
  const int n_max = static_cast<int>(incident.size()) - 1;
  check_mode(n_max);
  const auto tables = build_tables(medium, k, n_max);
  out.reserve(incident.size());
  for (int n = 0; n <= n_max; ++n) out.push_back(assemble(medium, k, n, incident[n], tables, nullptr));
  return out;
}

ModeSolution mode_solve_with_source(const LayeredMedium& medium, Real k, int n, Complex incident,
                                    const ParticularSolution& source) {
  validate(medium);
  check_mode(n);
  if (source.layer != 0 || medium.layers.empty()) {
    throw UnsupportedConfiguration("sources are supported in the innermost layer only");
  }
  return assemble(medium, k, n, incident, build_tables(medium, k, n), &source);
}

RadialSample particular_sample(const LayeredMedium& medium, Real k, int n, const ParticularSolution& p, Real r) {
  const int d = medium.dimension;
  const Layer& layer = medium.layers.at(p.layer);
  const Complex kappa = medium.wavenumber(p.layer, k);
  const Complex ks = p.source_wavenumber;
  if (std::abs(ks - kappa) <= 1e-12L * std::abs(kappa)) {
    // d/dkappa of R_n(kappa r) solves a(Lap + kappa^2) psi = -2 a kappa R_n(kappa r).
    const Complex coef = -p.source_amplitude / (Real(2) * layer.a * kappa);
    const Complex x = kappa * r;
    const auto f = basis_eval(d, Basis::Regular, n, x);
    const Complex f2 = (x == Complex(0)) ? Complex(0) : basis_second_derivative(d, n, x, f);
    return {coef * r * f.derivative, coef * (f.derivative + x * f2)};
  }
  const Complex coef = p.source_amplitude / (layer.a * (kappa * kappa - ks * ks));
  const auto f = basis_eval(d, Basis::Regular, n, ks * r);
  return {coef * f.value, coef * ks * f.derivative};
}

}  // namespace mie
}  // namespace cloakwave
