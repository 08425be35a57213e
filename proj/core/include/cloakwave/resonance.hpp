#pragma once

// Interior resonances of a homogeneous isotropic inclusion and the detuning
// of the interior density that drives the monopole coefficient to -1.

#include <vector>

#include "cloakwave/roots.hpp"
#include "cloakwave/types.hpp"

namespace cloakwave::mie {

/// Interior resonance of mode `mode`: the interior Bessel argument
/// kappa_star = k sqrt(sigma0 / a) satisfies
///   3D:            j_n'(kappa) = 0
///   2D, n = 0:     J_0'(kappa) = 0
///   2D, n >= 1:    a kappa J_n'(kappa) + n J_n(kappa) = 0
struct ResonanceSpec {
  int dimension = 3;
  int mode = 0;
  Real kappa_star = 0;
  Real sigma0 = 0;
  Real k = 1;
  Real a = 1;
};

/// Left-hand side a kappa C_n'(kappa) + [d == 2] n C_n(kappa) of the resonance condition.
Real resonance_condition(int dimension, int n, Real a, Real kappa);

/// The condition scaled by |a kappa C_n'| + max(n,1) |C_n|; lies in [-1, 1].
Real resonance_determinant(int dimension, int n, Real a, Real kappa);

/// First positive kappa_star of mode n, with sigma0 = a (kappa_star / k)^2.
ResonanceSpec first_resonance(int dimension, int n, Real a, Real k);

/// All (k, n) in [k_lo, k_hi] x [0, n_max] where the mode-n condition holds for
/// the interior (a, sigma); ordered by k, then mode.
std::vector<ResonanceSpec> detect_resonances(int dimension, Real a, Real sigma, Real k_lo, Real k_hi, int n_max);

/// Monopole scattering coefficient of the scaled single-inclusion problem,
/// t = k eps, x = k_eps:
///   3D: alpha0 = -(t j0'(t) j0(x) - x j0(t) j0'(x) / eps) / (t h0'(t) j0(x) - x h0(t) j0'(x) / eps)
///   2D: the same with J0, H0 and without the 1/eps factor.
Complex alpha0_closed_form(int dimension, Real k, Real eps, Real k_eps);

enum class Tuning { LeadingOrder, Exact };

/// Tuned interior argument k_eps with both density conventions:
/// sigma_literal = k_eps / k and sigma_consistent = (k_eps / k)^2.
struct TunedSigma {
  Real k_eps = 0;
  Real sigma_literal = 0;
  Real sigma_consistent = 0;
};

/// Exact: k_eps is the root of Im(denominator of alpha0_closed_form), so alpha0 = -1.
/// LeadingOrder: leading-order equations
///   3D: j0'(x)/j0(x) = -eps - k eps^2 tan(k eps)
///   2D: x J0'(x)/J0(x) = 1/ln(k eps/2)
/// Both search kappa_star +- min(1, kappa_star/4) of a mode-0 spec.
TunedSigma tune_sigma(int dimension, Real k, Real eps, const ResonanceSpec& spec, Tuning variant);

}  // namespace cloakwave::mie
