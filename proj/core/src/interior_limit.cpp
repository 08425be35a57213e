#include "cloakwave/errors.hpp"
#include "cloakwave/fields.hpp"
#include "cloakwave/interior_source.hpp"

namespace cloakwave::fields {

FieldSeries interior_limit(const CloakConfig& config, Complex u_at_origin,
                           const std::optional<mie::ResonanceSpec>& resonance,
                           const std::optional<InteriorSource>& source) {
  validate(config);
  if (config.interior.size() != 1) {
    throw UnsupportedConfiguration("interior limit needs a single homogeneous interior layer");
  }
  const int d = config.dimension;
  FieldSeries F;
  F.dimension = d;
  F.k = config.k;
  F.medium = mie::LayeredMedium{d, config.interior, 1};
  F.axis = expansion_axis(config.incident, d);
  const Real a = config.interior[0].a;
  const Complex kappa = F.medium.wavenumber(0, config.k);

  int n_max = 0;
  if (source) n_max = std::max(n_max, source->eigen.mode);
  F.modes.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    F.modes[n].n = n;
    F.modes[n].layers.resize(1);
  }

  if (resonance) {
    if (resonance->dimension != d) throw DomainError("interior limit: resonance dimension mismatch");
    if (d == 2) throw UnsupportedConfiguration("no closed-form interior limit for 2D resonances");
    if (source && source->eigen.mode == resonance->mode) {
      throw UnsupportedConfiguration("interior source in the resonant mode " + std::to_string(resonance->mode) +
                                     ": no limit exists");
    }
    if (resonance->mode == 0) {
      const Complex j0 = mie::basis_eval(d, mie::Basis::Regular, 0, kappa).value;
      F.modes[0].layers[0].regular = u_at_origin / j0;
    }
  }

  if (source) {
    const auto& e = source->eigen;
    if (e.dimension != d) throw DomainError("interior limit: source dimension mismatch");
    const int n = e.mode;
    const Real amplitude = source->normalization / mie::eigenfunction_norm(d, n, e.kappa_star);
    const mie::ParticularSolution p{0, amplitude, e.kappa_star};
    const auto up = mie::particular_sample(F.medium, F.k, n, p, 1);
    const auto f = mie::basis_eval(d, mie::Basis::Regular, n, kappa);
    const Real coupling = (d == 2) ? n : 0;
    const Complex den = a * kappa * f.derivative + coupling * f.value;
    if (std::abs(den) == 0) throw SingularSystemError("interior limit: resonant source mode", n);
    F.modes[n].layers[0].regular += -(a * up.derivative + coupling * up.value) / den;
    F.modes[n].particular = p;
  }
  return F;
}

}  // namespace cloakwave::fields
