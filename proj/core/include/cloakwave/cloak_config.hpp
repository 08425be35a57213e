#pragma once

#include <vector>

#include "cloakwave/incident.hpp"
#include "cloakwave/medium.hpp"

namespace cloakwave {

/// One cloaking experiment: the cloak built from F_eps around an interior
/// made of concentric isotropic layers given at unit scale (outermost radius 1).
struct CloakConfig {
  int dimension = 3;
  Real k = 1;
  Real epsilon = 0.1L;
  std::vector<mie::Layer> interior{{1, 1, 1}};
  fields::IncidentSpec incident{};

  friend bool operator==(const CloakConfig&, const CloakConfig&) = default;
};

/// Throws ValidationError on eps outside (0, 1], k <= 0, bad layers or incident field.
void validate(const CloakConfig& config);

}  // namespace cloakwave
