#pragma once

#include <string>

#include "cloakwave/types.hpp"

namespace cloakwave::cli {

struct CsvComparison {
  bool equal = true;
  std::string message;
};

/// Relative tolerance for golden comparisons: CLOAKWAVE_SEED_TOL, default 1e-9.
Real golden_tolerance();

/// Cell-by-cell comparison. Numeric cells match when
/// |a - b| <= tol * max(|a|, |b|) + 1e-12 (nan matches nan); other cells must be identical.
CsvComparison compare_csv(const std::string& actual, const std::string& expected, Real tol);

}  // namespace cloakwave::cli
