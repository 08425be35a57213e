#include "cloakwave/roots.hpp"

#include <cmath>
#include <sstream>

#include "cloakwave/errors.hpp"

namespace cloakwave::roots {

RootResult find_root_detailed(const std::function<Real(Real)>& f, Real lo, Real hi,
                              const RootOptions& options) {
  if (!(lo < hi)) std::swap(lo, hi);
  Real f_lo = f(lo);
  Real f_hi = f(hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
    throw DomainError("find_root: non-finite function value at bracket end");
  }
  if (f_lo == 0) return {lo, 0, 0, 0};
  if (f_hi == 0) return {hi, 0, 0, 0};
  if ((f_lo > 0) == (f_hi > 0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "find_root: no sign change on [" << double(lo) << ", " << double(hi) << "]";
    throw BracketError(msg.str());
  }

  // Secant weights; Illinois halves the weight of an end retained twice in a row.
  Real w_lo = f_lo;
  Real w_hi = f_hi;
  int stale_side = 0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Real width = hi - lo;
    const Real x_scale = std::max<Real>(1, std::max(std::abs(lo), std::abs(hi)));
    const Real mid = lo + width / 2;
    if (width <= options.x_tolerance * x_scale || mid <= lo || mid >= hi) {
      const bool take_lo = std::abs(f_lo) <= std::abs(f_hi);
      return {take_lo ? lo : hi, take_lo ? f_lo : f_hi, width, it - 1};
    }

    Real x = lo - w_lo * width / (w_hi - w_lo);
    // Bisect when the secant point leaves the interior, and on every third
    // step so the bracket at least halves per three iterations.
    const bool secant_ok = std::isfinite(x) && x > lo && x < hi;
    if (!secant_ok || it % 3 == 0) x = mid;

    const Real f_x = f(x);
    if (!std::isfinite(f_x)) throw DomainError("find_root: non-finite function value inside bracket");
    if (f_x == 0) return {x, 0, 0, it};

    if ((f_x > 0) == (f_lo > 0)) {
      lo = x;
      f_lo = w_lo = f_x;
      if (stale_side == 1) w_hi /= 2;
      stale_side = 1;
    } else {
      hi = x;
      f_hi = w_hi = f_x;
      if (stale_side == -1) w_lo /= 2;
      stale_side = -1;
    }
  }
  throw ConvergenceError("find_root: no convergence after " + std::to_string(options.max_iterations) +
                         " iterations");
}

}  // namespace cloakwave::roots
