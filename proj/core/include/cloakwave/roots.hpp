#pragma once

#include <functional>

#include "cloakwave/types.hpp"

namespace cloakwave::roots {

struct RootOptions {
  /// Stop once the bracket is narrower than x_tolerance * max(1, |x|).
  /// Zero means "iterate to machine resolution".
  Real x_tolerance = 1e-14L;
  int max_iterations = 200;
};

struct RootResult {
  Real x = 0;
  Real f_x = 0;
  Real bracket_width = 0;
  int iterations = 0;
};

/// Bracketed scalar root: bisection-safeguarded secant (Illinois) iteration.
/// Throws BracketError if f(lo) and f(hi) share a sign, ConvergenceError after
/// max_iterations without meeting the tolerance.
RootResult find_root_detailed(const std::function<Real(Real)>& f, Real lo, Real hi,
                              const RootOptions& options = {});

inline Real find_root(const std::function<Real(Real)>& f, Real lo, Real hi,
                      const RootOptions& options = {}) {
  return find_root_detailed(f, lo, hi, options).x;
}

}  // namespace cloakwave::roots
