#include "oracles.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace oracle {
namespace {

using cloakwave::mie::Basis;
using cloakwave::mie::basis_eval;
using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Vecc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct Pair {
  Complex value;
  Complex derivative;
};

// Monopole radial functions from elementary closed forms (3D) or the standard library (2D).
Pair regular0(int d, Real x) {
  if (d == 3) return {std::sin(x) / x, (x * std::cos(x) - std::sin(x)) / (x * x)};
  return {std::cyl_bessel_j(0.0L, x), -std::cyl_bessel_j(1.0L, x)};
}

Pair outgoing0(int d, Real x) {
  if (d == 3) {
    const Complex h = std::exp(Complex(0, x)) / Complex(0, x);
    return {h, h * (Complex(0, 1) - 1 / x)};
  }
  return {Complex(std::cyl_bessel_j(0.0L, x), std::cyl_neumann(0.0L, x)),
          -Complex(std::cyl_bessel_j(1.0L, x), std::cyl_neumann(1.0L, x))};
}

// Even Chebyshev polynomials T_0, T_2, ... with first and second derivatives.
void chebyshev_even(int count, Real r, VecR& t, VecR& dt, VecR& ddt) {
  const int n_max = 2 * count;
  std::vector<Real> T(n_max + 1), D(n_max + 1), DD(n_max + 1);
  T[0] = 1, D[0] = 0, DD[0] = 0;
  T[1] = r, D[1] = 1, DD[1] = 0;
  for (int n = 1; n < n_max; ++n) {
    T[n + 1] = 2 * r * T[n] - T[n - 1];
    D[n + 1] = 2 * T[n] + 2 * r * D[n] - D[n - 1];
    DD[n + 1] = 4 * D[n] + 2 * r * DD[n] - DD[n - 1];
  }
  t.resize(count), dt.resize(count), ddt.resize(count);
  for (int m = 0; m < count; ++m) t[m] = T[2 * m], dt[m] = D[2 * m], ddt[m] = DD[2 * m];
}

}  // namespace

Real bessel_j_series(int n, Real x) {
  Real term = 1;
  for (int m = 1; m <= n; ++m) term *= x / (2 * m);
  Real sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -(x * x / 4) / (Real(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

Real bisect(const std::function<Real(Real)>& f, Real lo, Real hi) {
  Real flo = f(lo);
  if (flo * f(hi) > 0) throw std::runtime_error("bisect: no sign change");
  for (int i = 0; i < 200 && hi - lo > 4 * std::numeric_limits<Real>::epsilon() * std::abs(hi); ++i) {
    const Real mid = (lo + hi) / 2;
    const Real fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid, flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

Real tan_x_root() {
  return bisect([](Real x) { return std::sin(x) - x * std::cos(x); }, 4.2L, 4.6L);
}

Real j1_first_zero() {
  return bisect([](Real x) { return bessel_j_series(1, x); }, 3.0L, 4.0L);
}

Complex alpha0_reference(int d, Real k, Real eps, Real k_eps) {
  // Exterior j + alpha h, interior c R(kappa r), kappa = k_eps / eps, interior a = eps^(2-d).
  const Real t = k * eps;
  const Pair R = regular0(d, t);
  const Pair H = outgoing0(d, t);
  const Pair I = regular0(d, k_eps);
  const Real a = std::pow(eps, Real(2 - d));
  const Real kappa = k_eps / eps;
  // [ H            -I       ] [alpha]   [ -R       ]
  // [ k H'     -a kappa I'  ] [  c  ] = [ -k R'    ]
  const Complex m11 = H.value, m12 = -I.value;
  const Complex m21 = k * H.derivative, m22 = -a * kappa * I.derivative;
  const Complex r1 = -R.value, r2 = -k * R.derivative;
  return (r1 * m22 - m12 * r2) / (m11 * m22 - m12 * m21);
}

DenseSolution dense_mode_solve(const cloakwave::mie::LayeredMedium& m, Real k, int n, Complex incident) {
  const int L = static_cast<int>(m.layers.size());
  const int size = 2 * L;
  Mat A = Mat::Zero(size, size);
  Vecc b = Vecc::Zero(size);
  const int d = m.dimension;
  auto reg_col = [](int j) { return j == 0 ? 0 : 2 * j - 1; };
  auto sing_col = [](int j) { return 2 * j; };
  for (int i = 0; i < L; ++i) {
    const Real r = m.layers[i].outer_radius;
    // inner side: layer i, sign +
    const Complex kin = m.wavenumber(i, k);
    const Real ain = m.layers[i].a;
    const auto Rin = basis_eval(d, Basis::Regular, n, kin * r);
    A(2 * i, reg_col(i)) += Rin.value;
    A(2 * i + 1, reg_col(i)) += ain * kin * Rin.derivative;
    if (i > 0) {
      const auto Sin = basis_eval(d, Basis::Singular, n, kin * r);
      A(2 * i, sing_col(i)) += Sin.value;
      A(2 * i + 1, sing_col(i)) += ain * kin * Sin.derivative;
    }
    // outer side, sign -
    if (i + 1 < L) {
      const Complex kout = m.wavenumber(i + 1, k);
      const Real aout = m.layers[i + 1].a;
      const auto Rout = basis_eval(d, Basis::Regular, n, kout * r);
      const auto Sout = basis_eval(d, Basis::Singular, n, kout * r);
      A(2 * i, reg_col(i + 1)) -= Rout.value;
      A(2 * i + 1, reg_col(i + 1)) -= aout * kout * Rout.derivative;
      A(2 * i, sing_col(i + 1)) -= Sout.value;
      A(2 * i + 1, sing_col(i + 1)) -= aout * kout * Sout.derivative;
    } else {
      const Real ke = m.exterior_wavenumber(k);
      const auto Re = basis_eval(d, Basis::Regular, n, ke * r);
      const auto He = basis_eval(d, Basis::Outgoing, n, ke * r);
      A(2 * i, size - 1) -= He.value;
      A(2 * i + 1, size - 1) -= ke * He.derivative;
      b(2 * i) += incident * Re.value;
      b(2 * i + 1) += incident * ke * Re.derivative;
    }
  }
  // Column equilibration: singular functions at small arguments are huge.
  std::vector<Real> scale(size);
  for (int j = 0; j < size; ++j) {
    scale[j] = A.col(j).cwiseAbs().maxCoeff();
    if (scale[j] > 0) A.col(j) /= scale[j];
  }
  Vecc x = A.fullPivLu().solve(b);
  for (int j = 0; j < size; ++j) {
    if (scale[j] > 0) x(j) /= scale[j];
  }
  DenseSolution s;
  for (int j = 0; j < L; ++j) {
    s.regular.push_back(x(reg_col(j)));
    s.singular.push_back(j == 0 ? Complex(0) : x(sing_col(j)));
  }
  s.alpha = x(size - 1);
  return s;
}

std::vector<Complex> radial_fd_solve(const cloakwave::mie::LayeredMedium& m, Real k, int n,
                                     const std::function<Complex(Real)>& source, Real R, int N) {
  const int d = m.dimension;
  const Real h = R / N;
  const Real lambda = d == 2 ? Real(n) * n : Real(n) * (n + 1);
  auto layer_at = [&](Real r) {
    const std::size_t j = m.locate(r);
    if (j < m.layers.size()) return std::pair<Real, Complex>{m.layers[j].a, m.layers[j].sigma};
    return std::pair<Real, Complex>{1, m.exterior_sigma};
  };
  auto weight = [&](Real r) { return std::pow(r, Real(d - 1)); };
  boost::math::quadrature::gauss<Real, 7> gl;

  std::vector<Complex> lower(N + 1), diag(N + 1), upper(N + 1), rhs(N + 1);
  for (int i = 0; i <= N; ++i) {
    const Real r = i * h;
    if (i == 0 && n > 0) {
      diag[0] = 1;
      continue;
    }
    const Real lo = std::max<Real>(0, r - h / 2);
    const Real hi = std::min(R, r + h / 2);
    // Half cells [lo, r] and [r, hi] each lie in one layer.
    for (auto [p, q] : {std::pair{lo, r}, std::pair{r, hi}}) {
      if (q <= p) continue;
      const auto [a, sigma] = layer_at((p + q) / 2);
      diag[i] += gl.integrate([&](Real s) { return (k * k * sigma - a * lambda / (s * s)) * weight(s); }, p, q);
      rhs[i] += gl.integrate([&](Real s) { return source(s) * weight(s); }, p, q);
    }
    if (i < N) {
      const Real face = r + h / 2;
      const Real c = weight(face) * layer_at(face).first / h;
      diag[i] -= c;
      upper[i] += c;
    }
    if (i > 0) {
      const Real face = r - h / 2;
      const Real c = weight(face) * layer_at(face).first / h;
      diag[i] -= c;
      lower[i] += c;
    }
    if (i == N) {
      const Real ke = m.exterior_wavenumber(k);
      const auto H = basis_eval(d, Basis::Outgoing, n, ke * R);
      diag[i] += weight(R) * ke * H.derivative / H.value;
    }
  }
  // Thomas algorithm.
  for (int i = 1; i <= N; ++i) {
    const Complex w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<Complex> u(N + 1);
  u[N] = rhs[N] / diag[N];
  for (int i = N - 1; i >= 0; --i) u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
  return u;
}

std::vector<Real> collocation_interior_limit(Real kappa, Real u0, const std::vector<Real>& radii) {
  const int M = 26;   // even Chebyshev terms per function
  const int P = 70;   // collocation points in (0, 1)
  const int cols = 2 * M + 1;  // v, w, A
  const int rows = 2 * P + 4;
  MatR A = MatR::Zero(rows, cols);
  VecR b = VecR::Zero(rows);
  VecR t, dt, ddt;
  int row = 0;
  for (int j = 0; j < P; ++j) {
    const Real r = (1 + std::cos(cloakwave::kPi * (j + 0.5L) / P)) / 2;
    chebyshev_even(M, r, t, dt, ddt);
    for (int m = 0; m < M; ++m) {
      const Real op = ddt[m] + 2 * dt[m] / r + kappa * kappa * t[m];
      A(row, m) = op;
      A(row + 1, M + m) = op;
    }
    row += 2;
  }
  chebyshev_even(M, 1, t, dt, ddt);
  for (int m = 0; m < M; ++m) {
    A(row, m) = dt[m];           // v_int'(1) = 0
    A(row + 1, m) = -t[m];       // v_ext(1) - v_int(1) = -u0, v_ext = A / r
    A(row + 2, M + m) = dt[m];   // -A = w'(1)
  }
  A(row + 1, 2 * M) = 1;
  b(row + 1) = -u0;
  A(row + 2, 2 * M) = 1;
  row += 3;
  // w orthogonal to the eigenfunction j0(kappa r) in L2(B_1).
  boost::math::quadrature::gauss<Real, 40> gl;
  for (int m = 0; m < M; ++m) {
    A(row, M + m) = gl.integrate(
        [&](Real r) {
          VecR tt, d1, d2;
          chebyshev_even(M, r, tt, d1, d2);
          return tt[m] * std::sin(kappa * r) / (kappa * r) * r * r;
        },
        Real(0), Real(1));
  }
  const VecR x = A.colPivHouseholderQr().solve(b);
  std::vector<Real> out;
  for (Real r : radii) {
    chebyshev_even(M, r, t, dt, ddt);
    out.push_back(t.dot(x.head(M)));
  }
  return out;
}

}  // namespace oracle
