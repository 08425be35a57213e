#pragma once

#include <vector>

#include "cloakwave/types.hpp"

namespace cloakwave::fields {

enum class IncidentKind { PlaneWave, PointSource };

/// Free-space incident field. A plane wave is amplitude * exp(i k direction.x);
/// a point source is the outgoing free-space kernel centred at `location`:
/// amplitude * exp(ik|x-x0|) / (4 pi |x-x0|) in 3D, amplitude * (i/4) H_0(k|x-x0|) in 2D.
struct IncidentSpec {
  IncidentKind kind = IncidentKind::PlaneWave;
  Vec direction{0, 0, 1};
  Vec location{0, 0, 3.5L};
  Complex amplitude = 1;

  friend bool operator==(const IncidentSpec&, const IncidentSpec&) = default;
};

/// Unit axis of the axisymmetric expansion (direction, or location / |location|).
Vec expansion_axis(const IncidentSpec& spec, int dimension);

/// Regular-wave coefficients b_0..b_N such that, with theta measured from the axis,
///   2D: u_inc = sum_n b_n J_n(k r) cos(n theta),
///   3D: u_inc = sum_n b_n j_n(k r) P_n(cos theta),
/// valid for all r (plane wave) or r < |x0| (point source).
std::vector<Complex> incident_coefficients(const IncidentSpec& spec, int dimension, Real k, int n_max);

/// Direct closed-form evaluation of the incident field (test and dump reference).
Complex incident_direct(const IncidentSpec& spec, int dimension, Real k, const Vec& x);

/// Checks the IncidentSpec invariants: unit direction, |x0| in (2.5, 4.5) for point sources.
void validate(const IncidentSpec& spec, int dimension);

}  // namespace cloakwave::fields
