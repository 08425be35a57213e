#pragma once

// Per-mode transmission solve for concentric layered media.
//
// In layer j the mode-n radial function is c_j R_n(kappa_j r) + d_j S_n(kappa_j r)
// (regular / singular basis), in the exterior b_n R_n(k_ext r) + alpha_n H_n(k_ext r).
// The field and the flux a * du/dr are continuous at every interface. The
// coefficients are propagated outward with 2x2 transfer matrices, starting
// from the regular solution of the innermost layer.

#include <optional>
#include <span>
#include <vector>

#include "cloakwave/cloak_config.hpp"
#include "cloakwave/medium.hpp"

namespace cloakwave::mie {

struct LayerCoefficients {
  Complex regular = 0;
  Complex singular = 0;
};

/// Particular solution for a source s(r) = source_amplitude * R_n(source_wavenumber r)
/// on the right-hand side of div(a grad u) + k^2 sigma u = s in one layer.
struct ParticularSolution {
  std::size_t layer = 0;
  Complex source_amplitude = 0;
  Complex source_wavenumber = 0;
};

struct ModeSolution {
  int n = 0;
  Complex incident = 0;
  Complex scattered = 0;
  std::vector<LayerCoefficients> layers;
  std::optional<ParticularSolution> particular;
};

struct RadialSample {
  Complex value = 0;
  Complex derivative = 0;
};

/// Builds the virtual (pulled-back) medium of a cloak configuration: each
/// interior layer shrinks to radius eps * r_j with coefficients
/// (eps^(2-d) a_j, eps^(-d) sigma_j); the exterior is (1, 1).
LayeredMedium virtual_medium(const CloakConfig& config);

/// Throws SingularSystemError (carrying n) when the interior solution is,
/// to 1e-12, purely outgoing at the outer interface.
ModeSolution mode_solve(const LayeredMedium& medium, Real k, int n, Complex incident);

/// All modes 0..incident.size()-1, sharing the Bessel tables at each interface.
std::vector<ModeSolution> solve_modes(const LayeredMedium& medium, Real k, std::span<const Complex> incident);

/// As mode_solve, with an additional source term in one layer and the given incident coefficient.
ModeSolution mode_solve_with_source(const LayeredMedium& medium, Real k, int n, Complex incident,
                                    const ParticularSolution& source);

/// Value and r-derivative of the particular solution at radius r inside its layer.
RadialSample particular_sample(const LayeredMedium& medium, Real k, int n, const ParticularSolution& p, Real r);

/// Relative singularity threshold applied by the mode solver.
inline constexpr Real kSingularThreshold = 1e-12L;

}  // namespace cloakwave::mie
