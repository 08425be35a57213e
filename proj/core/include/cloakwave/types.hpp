#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace cloakwave {

// Working precision for every solve. The tuned single-inclusion problems are
// sensitive to the interior wavenumber at order eps^-2, which exhausts
// binary64 near eps = 1e-4; the x87 extended format keeps ~3 more digits.
using Real = long double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kEulerGamma = std::numbers::egamma_v<Real>;
inline constexpr Complex kI{0, 1};

/// Cartesian point; the z component is ignored in 2D.
using Vec = std::array<Real, 3>;

inline Real norm(const Vec& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

inline Real dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec scaled(const Vec& v, Real s) { return {v[0] * s, v[1] * s, v[2] * s}; }

}  // namespace cloakwave
