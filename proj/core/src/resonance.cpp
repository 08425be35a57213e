#include "cloakwave/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cloakwave/errors.hpp"
#include "cloakwave/medium.hpp"

namespace cloakwave::mie {
namespace {

constexpr Real kScanStep = 0.02L;

specfun::BesselEval regular(int dimension, int n, Real x) { return basis_eval(dimension, Basis::Regular, n, x); }

void check_dimension(int dimension) {
  if (dimension != 2 && dimension != 3) throw DomainError("dimension must be 2 or 3");
}

}  // namespace

Real resonance_condition(int dimension, int n, Real a, Real kappa) {
  check_dimension(dimension);
  const auto f = regular(dimension, n, kappa);
  Real value = a * kappa * f.derivative.real();
  if (dimension == 2) value += n * f.value.real();
  return value;
}

Real resonance_determinant(int dimension, int n, Real a, Real kappa) {
  check_dimension(dimension);
  const auto f = regular(dimension, n, kappa);
  const Real flux = a * kappa * f.derivative.real();
  const Real value = f.value.real();
  const Real det = flux + (dimension == 2 ? n * value : 0);
  const Real scale = std::abs(flux) + std::max(n, 1) * std::abs(value);
  return scale == 0 ? 0 : det / scale;
}

ResonanceSpec first_resonance(int dimension, int n, Real a, Real k) {
  check_dimension(dimension);
  if (!(a > 0) || !(k > 0)) throw DomainError("first_resonance: a and k must be positive");
  auto f = [&](Real kappa) { return resonance_condition(dimension, n, a, kappa); };
  Real lo = kScanStep;
  Real f_lo = f(lo);
  const Real limit = 4 * n + 50;
  while (lo < limit) {
    const Real hi = lo + kScanStep;
    const Real f_hi = f(hi);
    if (f_lo == 0 || f_lo * f_hi < 0) {
      const Real kappa = f_lo == 0 ? lo : roots::find_root(f, lo, hi, {0, 200});
      return {dimension, n, kappa, a * (kappa / k) * (kappa / k), k, a};
    }
    lo = hi;
    f_lo = f_hi;
  }
  throw ConvergenceError("first_resonance: no root found for mode " + std::to_string(n));
}

std::vector<ResonanceSpec> detect_resonances(int dimension, Real a, Real sigma, Real k_lo, Real k_hi, int n_max) {
  check_dimension(dimension);
  if (!(a > 0) || !(sigma > 0)) throw DomainError("detect_resonances: a and sigma must be positive");
  std::vector<ResonanceSpec> found;
  if (!(k_hi > k_lo)) return found;
  const Real speed = std::sqrt(sigma / a);
  const Real kappa_lo = std::max(k_lo, Real(1e-6)) * speed;
  const Real kappa_hi = k_hi * speed;
  const int steps = std::max(1, static_cast<int>(std::ceil((kappa_hi - kappa_lo) / kScanStep)));
  const Real h = (kappa_hi - kappa_lo) / steps;
  for (int n = 0; n <= n_max; ++n) {
    auto f = [&](Real kappa) { return resonance_condition(dimension, n, a, kappa); };
    Real lo = kappa_lo;
    Real f_lo = f(lo);
    for (int s = 1; s <= steps; ++s) {
      const Real hi = (s == steps) ? kappa_hi : kappa_lo + s * h;
      const Real f_hi = f(hi);
      Real kappa = -1;
      if (f_lo == 0) {
        kappa = lo;
      } else if (f_hi == 0 && s == steps) {
        kappa = hi;
      } else if (f_lo * f_hi < 0) {
        kappa = roots::find_root(f, lo, hi, {0, 200});
      }
      if (kappa > 0) {
        const Real k = kappa / speed;
        found.push_back({dimension, n, kappa, a * (kappa / k) * (kappa / k), k, a});
      }
      lo = hi;
      f_lo = f_hi;
    }
  }
  std::sort(found.begin(), found.end(), [](const ResonanceSpec& l, const ResonanceSpec& r) {
    return l.k != r.k ? l.k < r.k : l.mode < r.mode;
  });
  return found;
}

Complex alpha0_closed_form(int dimension, Real k, Real eps, Real k_eps) {
  check_dimension(dimension);
  const Real t = k * eps;
  const Real flux = dimension == 3 ? 1 / eps : 1;
  const auto jt = regular(dimension, 0, t);
  const auto ht = basis_eval(dimension, Basis::Outgoing, 0, t);
  const auto jx = regular(dimension, 0, k_eps);
  const Complex num = t * jt.derivative * jx.value - flux * k_eps * jt.value * jx.derivative;
  const Complex den = t * ht.derivative * jx.value - flux * k_eps * ht.value * jx.derivative;
  if (den == Complex(0)) throw DomainError("alpha0_closed_form: vanishing denominator");
  return -num / den;
}

TunedSigma tune_sigma(int dimension, Real k, Real eps, const ResonanceSpec& spec, Tuning variant) {
  check_dimension(dimension);
  if (spec.mode != 0) throw UnsupportedConfiguration("tune_sigma: only mode-0 resonances can be tuned");
  if (!(eps > 0 && eps <= 1)) throw DomainError("tune_sigma: eps must lie in (0, 1]");
  const Real t = k * eps;
  std::function<Real(Real)> g;
  if (variant == Tuning::Exact) {
    const Real flux = dimension == 3 ? 1 / eps : 1;
    const auto yt = basis_eval(dimension, Basis::Singular, 0, t);
    const Real y = yt.value.real();
    const Real yp = yt.derivative.real();
    g = [=](Real x) {
      const auto jx = regular(dimension, 0, x);
      return t * yp * jx.value.real() - flux * x * y * jx.derivative.real();
    };
  } else if (dimension == 3) {
    const Real rhs = -eps - k * eps * eps * std::tan(t);
    g = [=](Real x) {
      const auto jx = regular(3, 0, x);
      return jx.derivative.real() - rhs * jx.value.real();
    };
  } else {
    const Real log_term = std::log(t / 2);
    g = [=](Real x) {
      const auto jx = regular(2, 0, x);
      return x * jx.derivative.real() * log_term - jx.value.real();
    };
  }
  const Real width = std::min(Real(1), spec.kappa_star / 4);
  const Real x = roots::find_root(g, spec.kappa_star - width, spec.kappa_star + width, {0, 200});
  return {x, x / k, (x / k) * (x / k)};
}

}  // namespace cloakwave::mie
