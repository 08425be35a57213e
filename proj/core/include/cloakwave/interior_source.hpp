#pragma once

#include "cloakwave/mie.hpp"
#include "cloakwave/resonance.hpp"

namespace cloakwave::mie {

/// L2(B_1) norm of the mode function R_n(kappa_star rho) Theta_n (angular factor included).
Real eigenfunction_norm(int dimension, int n, Real kappa_star);

/// Transmission problem with zero incident field and the interior source
/// normalization * e, e = R_n(kappa_star rho) Theta_n / ||.||, placed in the
/// single inclusion of a virtual medium of radius r1. Pulled back through the
/// blow-up map the source reads r1^-d e(r / r1).
ModeSolution interior_source_mode_solve(const LayeredMedium& medium, Real k, const ResonanceSpec& spec,
                                        Real normalization);

}  // namespace cloakwave::mie
