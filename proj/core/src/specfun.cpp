#include "cloakwave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cloakwave/errors.hpp"

namespace cloakwave::specfun {
namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void validate(int n_max, Complex z, bool singular_kind, const char* name) {
  if (n_max < 0 || n_max > kMaxOrder) {
    throw DomainError(std::string(name) + ": order " + std::to_string(n_max) + " outside [0, " +
                      std::to_string(kMaxOrder) + "]");
  }
  if (!is_finite(z)) throw DomainError(std::string(name) + ": non-finite argument");
  if (std::abs(z) > kMaxArgument) {
    throw DomainError(std::string(name) + ": |z| exceeds " + std::to_string(double(kMaxArgument)));
  }
  if (singular_kind && z == Complex(0)) {
    throw DomainError(std::string(name) + ": singular kind evaluated at z = 0");
  }
}

void check_finite(const std::vector<Complex>& values, const char* name) {
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (!is_finite(values[n])) {
      throw OverflowError(std::string(name) + ": recurrence overflow at order " + std::to_string(n));
    }
  }
}

// Starting order for the backward recurrence. Beyond the turning point |z| the
// minimal solution decays like exp(-(2m)^{3/2} / (3 sqrt|z|)); the cube-root
// term covers extended precision up to |z| = 1e4.
int miller_start(int n_max, Complex z) {
  const Real az = std::abs(z);
  return std::max(n_max, static_cast<int>(std::ceil(az))) + 30 + static_cast<int>(std::ceil(15 * std::cbrt(az)));
}

// ratio[n] = f_n / f_{n-1} for n = 1..n_top, from
// f_{n-1} + f_{n+1} = (2n + shift) / z * f_n  (shift 0 cylindrical, 1 spherical).
std::vector<Complex> backward_ratios(int n_top, int start, Complex z, int shift) {
  std::vector<Complex> ratio(static_cast<std::size_t>(n_top) + 1, Complex(0));
  const Real tiny = std::numeric_limits<Real>::min() * 1e10L;
  Complex next(0);
  for (int n = start; n >= 1; --n) {
    Complex denom = Real(2 * n + shift) - z * next;
    if (std::abs(denom) < tiny) denom = tiny;
    next = z / denom;
    if (n <= n_top) ratio[n] = next;
  }
  return ratio;
}

// J_0..J_top with top = miller_start(n_max, z), needed in full by the Neumann series.
std::vector<Complex> cyl_j_values(int n_max, Complex z) {
  const int top = miller_start(n_max, z);
  std::vector<Complex> j(static_cast<std::size_t>(top) + 1, Complex(0));
  if (z == Complex(0)) {
    j[0] = 1;
    return j;
  }
  const auto ratio = backward_ratios(top, top, z, 0);
  // Jacobi-Anger at theta = pi (or 0): exp(-+iz) = J0 + 2 sum (-+i)^n J_n. Pick the
  // side where the exponential is not small so the normalization does not cancel.
  const bool upper = z.imag() >= 0;
  const Complex phase_step = upper ? Complex(0, -1) : Complex(0, 1);
  const Complex target = upper ? std::exp(-kI * z) : std::exp(kI * z);
  Complex sum(1);
  Complex product(1);
  Complex phase(1);
  std::vector<Complex> relative(static_cast<std::size_t>(top) + 1, Complex(0));
  relative[0] = 1;
  for (int n = 1; n <= top; ++n) {
    product *= ratio[n];
    phase *= phase_step;
    relative[n] = product;
    sum += Real(2) * phase * product;
  }
  const Complex j0 = target / sum;
  for (int n = 0; n <= top; ++n) j[n] = j0 * relative[n];
  return j;
}

std::vector<Complex> cyl_y_values(int n_max, Complex z, const std::vector<Complex>& j) {
  const int count = std::max(n_max, 1);
  std::vector<Complex> y(static_cast<std::size_t>(count) + 1);
  const Complex log_term = std::log(z / Real(2)) + kEulerGamma;
  const int top = static_cast<int>(j.size()) - 1;

  // Neumann series: Y0 = (2/pi)[(ln(z/2)+gamma) J0 - 2 sum_k (-1)^k J_{2k}/k];
  // Y1 = -Y0' term by term.
  Complex s0(0);
  Complex s1(0);
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const Real sign = (k % 2 == 0) ? 1 : -1;
    s0 += sign * j[2 * k] / Real(k);
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / Real(k);
  }
  y[0] = (2 / kPi) * (log_term * j[0] - Real(2) * s0);
  y[1] = (2 / kPi) * (log_term * j[1] - j[0] / z + s1);
  for (int n = 1; n < count; ++n) y[n + 1] = (Real(2 * n) / z) * y[n] - y[n - 1];
  return y;
}

BesselTable cyl_with_derivatives(std::vector<Complex> values, int n_max, Complex z) {
  BesselTable t;
  t.value.assign(values.begin(), values.begin() + n_max + 1);
  t.derivative.resize(static_cast<std::size_t>(n_max) + 1);
  if (z == Complex(0)) {
    // Only reached for J: J0'(0) = 0, J1'(0) = 1/2.
    for (int n = 0; n <= n_max; ++n) t.derivative[n] = (n == 1) ? Complex(0.5L) : Complex(0);
    return t;
  }
  t.derivative[0] = -values[1];
  for (int n = 1; n <= n_max; ++n) t.derivative[n] = values[n - 1] - (Real(n) / z) * values[n];
  return t;
}

std::vector<Complex> sph_j_values(int n_max, Complex z) {
  const int count = std::max(n_max, 1);
  std::vector<Complex> j(static_cast<std::size_t>(count) + 1, Complex(0));
  if (z == Complex(0)) {
    j[0] = 1;
    return j;
  }
  const Complex s = std::sin(z);
  const Complex c = std::cos(z);
  const Complex j0 = s / z;
  const Complex j1_closed = s / (z * z) - c / z;
  const auto ratio = backward_ratios(count, miller_start(count, z), z, 1);
  j[0] = j0;
  // Anchor on whichever closed form is larger; j1's closed form cancels for small |z|.
  if (std::abs(z) < 1 || std::abs(j0) >= std::abs(j1_closed)) {
    for (int n = 1; n <= count; ++n) j[n] = j[n - 1] * ratio[n];
  } else {
    j[1] = j1_closed;
    for (int n = 2; n <= count; ++n) j[n] = j[n - 1] * ratio[n];
  }
  return j;
}

std::vector<Complex> sph_y_values(int n_max, Complex z) {
  const int count = std::max(n_max, 1);
  std::vector<Complex> y(static_cast<std::size_t>(count) + 1);
  const Complex s = std::sin(z);
  const Complex c = std::cos(z);
  y[0] = -c / z;
  y[1] = -c / (z * z) - s / z;
  for (int n = 1; n < count; ++n) y[n + 1] = (Real(2 * n + 1) / z) * y[n] - y[n - 1];
  return y;
}

BesselTable sph_with_derivatives(const std::vector<Complex>& values, int n_max, Complex z) {
  BesselTable t;
  t.value.assign(values.begin(), values.begin() + n_max + 1);
  t.derivative.resize(static_cast<std::size_t>(n_max) + 1);
  if (z == Complex(0)) {
    for (int n = 0; n <= n_max; ++n) t.derivative[n] = (n == 1) ? Complex(1.0L / 3) : Complex(0);
    return t;
  }
  t.derivative[0] = -values[1];
  for (int n = 1; n <= n_max; ++n) t.derivative[n] = values[n - 1] - (Real(n + 1) / z) * values[n];
  return t;
}

}  // namespace

BesselTable cyl_table(CylKind kind, int n_max, Complex z) {
  validate(n_max, z, kind != CylKind::J, "cyl_bessel");
  // One extra order feeds the derivative recurrence.
  auto j = cyl_j_values(std::max(n_max, 1), z);
  std::vector<Complex> values;
  switch (kind) {
    case CylKind::J:
      values = std::move(j);
      break;
    case CylKind::Y:
      values = cyl_y_values(std::max(n_max, 1), z, j);
      break;
    case CylKind::H1: {
      values = cyl_y_values(std::max(n_max, 1), z, j);
      for (std::size_t n = 0; n < values.size(); ++n) values[n] = j[n] + kI * values[n];
      break;
    }
  }
  check_finite(values, "cyl_bessel");
  auto table = cyl_with_derivatives(std::move(values), n_max, z);
  check_finite(table.derivative, "cyl_bessel");
  return table;
}

BesselTable sph_table(SphKind kind, int n_max, Complex z) {
  validate(n_max, z, kind != SphKind::j, "sph_bessel");
  std::vector<Complex> values;
  switch (kind) {
    case SphKind::j:
      values = sph_j_values(n_max, z);
      break;
    case SphKind::y:
      values = sph_y_values(n_max, z);
      break;
    case SphKind::h1: {
      const auto j = sph_j_values(n_max, z);
      values = sph_y_values(n_max, z);
      for (std::size_t n = 0; n < values.size(); ++n) values[n] = j[n] + kI * values[n];
      break;
    }
  }
  check_finite(values, "sph_bessel");
  auto table = sph_with_derivatives(values, n_max, z);
  check_finite(table.derivative, "sph_bessel");
  return table;
}

BesselEval cyl_bessel(CylKind kind, int n, Complex z) { return cyl_table(kind, n, z)[n]; }

BesselEval sph_bessel(SphKind kind, int n, Complex z) { return sph_table(kind, n, z)[n]; }

Complex cyl_second_derivative(int n, Complex z, const BesselEval& f) {
  return -f.derivative / z - (Real(1) - Real(n) * Real(n) / (z * z)) * f.value;
}

Complex sph_second_derivative(int n, Complex z, const BesselEval& f) {
  return -(Real(2) / z) * f.derivative - (Real(1) - Real(n) * Real(n + 1) / (z * z)) * f.value;
}

}  // namespace cloakwave::specfun
