#pragma once

// Integer-order Bessel functions of complex argument.
//
// Cylindrical J_n, Y_n, H_n^(1) and spherical j_n, y_n, h_n^(1), each returned
// together with its derivative with respect to the argument. The regular kinds
// are computed from backward ratio recurrences (Miller's algorithm) normalized
// by a closed-form sum, the irregular kinds by upward recurrence from
// Neumann-series (cylindrical) or closed-form (spherical) starting values.
//
// Validated envelope: 0 <= n <= 200, |z| <= 1e4. The Hankel kinds are formed as
// J + iY, which loses relative accuracy when Im z is large and positive; the
// solvers only call them with real exterior arguments.

#include <vector>

#include "cloakwave/types.hpp"

namespace cloakwave::specfun {

inline constexpr int kMaxOrder = 200;
inline constexpr Real kMaxArgument = 1e4L;

enum class CylKind { J, Y, H1 };
enum class SphKind { j, y, h1 };

struct BesselEval {
  Complex value;
  Complex derivative;
};

/// Values and derivatives for orders 0..n_max at a single argument.
struct BesselTable {
  std::vector<Complex> value;
  std::vector<Complex> derivative;

  int max_order() const { return static_cast<int>(value.size()) - 1; }
  BesselEval operator[](int n) const { return {value[n], derivative[n]}; }
};

BesselEval cyl_bessel(CylKind kind, int n, Complex z);
BesselEval sph_bessel(SphKind kind, int n, Complex z);

BesselTable cyl_table(CylKind kind, int n_max, Complex z);
BesselTable sph_table(SphKind kind, int n_max, Complex z);

/// Second derivative from the Bessel differential equation, given value and first derivative.
Complex cyl_second_derivative(int n, Complex z, const BesselEval& f);
Complex sph_second_derivative(int n, Complex z, const BesselEval& f);

}  // namespace cloakwave::specfun
