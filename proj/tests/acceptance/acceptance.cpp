// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cloakwave/experiments.hpp"
#include "cloakwave/fields.hpp"
#include "cloakwave/interior_source.hpp"
#include "cloakwave/mie.hpp"
#include "cloakwave/pde_residual.hpp"
#include "cloakwave/resonance.hpp"
#include "cloakwave/specfun.hpp"
#include "support/oracles.hpp"

using namespace cloakwave;
using oracle::rel;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

CloakConfig unit_config(int d, Real eps = 0.1L, Real sigma = 1) {
  CloakConfig c;
  c.dimension = d;
  c.epsilon = eps;
  c.interior = {{1, 1, sigma}};
  c.incident.direction = d == 2 ? Vec{1, 0, 0} : Vec{0, 0, 1};
  return c;
}

const std::vector<Real> kRateEps{1e-1L, 3e-2L, 1e-2L, 3e-3L, 1e-3L};
const std::vector<Real> kResonantEps{1e-2L, 1e-3L, 1e-4L};

void criterion_rate_3d(Outcome& o) {
  // Window around the working k. Mode 0 carries the zero Neumann eigenvalue, so
  // its normalized determinant decays like k^2 / 3 as k -> 0.
  std::vector<Real> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.5L + i * (1.5L - 0.5L) / 200);
  const auto scan = experiments::nonresonance_scan(3, 1, 1, grid, 10);
  o.detail << "scan_min=" << double(scan.minimum);
  o.require(scan.minimum > 1e-2, "non-resonance scan");

  const auto r = experiments::convergence_sweep(unit_config(3), kRateEps);
  if (!r.fit) {
    o.require(false, "no fit");
    return;
  }
  o.detail << " slope=" << double(r.fit->slope) << " residual=" << double(r.fit->residual);
  o.require(r.fit->slope >= 0.9 && r.fit->slope <= 1.1, "slope in [0.9, 1.1]");
  o.require(r.fit->residual <= 0.1, "residual <= 0.1");
}

void criterion_rate_2d(Outcome& o) {
  const auto r = experiments::convergence_sweep(unit_config(2), kRateEps);
  o.detail << "spread(visibility*|ln eps|)=" << double(r.normalized_spread);
  o.require(r.normalized_spread < 2, "spread < 2");
}

void criterion_instability(Outcome& o) {
  for (int d : {2, 3}) {
    const auto r = experiments::instability_sweep(d, 1, kResonantEps, mie::Tuning::Exact);
    Real worst_alpha = 0, worst_floor = INFINITY;
    Real lo_lit = INFINITY, hi_lit = 0, lo_con = INFINITY, hi_con = 0;
    for (const auto& row : r.records) {
      if (!row.alpha0) {
        o.require(false, "missing alpha0");
        continue;
      }
      worst_alpha = std::max(worst_alpha, std::abs(*row.alpha0 + Real(1)));
      worst_floor = std::min(worst_floor, row.visibility_l2 - r.outgoing_norm);
      for (const auto& [name, value] : row.extras) {
        if (name == "product_literal") lo_lit = std::min(lo_lit, value), hi_lit = std::max(hi_lit, value);
        if (name == "product_consistent") lo_con = std::min(lo_con, value), hi_con = std::max(hi_con, value);
      }
    }
    o.detail << " d=" << d << ": |alpha0+1|=" << double(worst_alpha) << " min(vis-|h0|)=" << double(worst_floor)
             << " product ratios " << double(hi_lit / lo_lit) << "," << double(hi_con / lo_con);
    o.require(worst_alpha <= 1e-8, "alpha0 = -1");
    o.require(worst_floor >= -1e-8, "scattered norm >= outgoing monopole norm");
    o.require(lo_lit > 0 && hi_lit / lo_lit <= 2, "literal detuning product interval");
    o.require(lo_con > 0 && hi_con / lo_con <= 2, "consistent detuning product interval");
  }
}

void criterion_blowup(Outcome& o) {
  const auto r3 = experiments::blowup_sweep(3, 1, kResonantEps, experiments::default_blowup_mode(3));
  Real lo = INFINITY, hi = 0, ext_lo = INFINITY, ext_hi = 0;
  for (const auto& row : r3.records) {
    lo = std::min(lo, row.epsilon * row.interior_h1);
    hi = std::max(hi, row.epsilon * row.interior_h1);
    ext_lo = std::min(ext_lo, row.visibility_l2);
    ext_hi = std::max(ext_hi, row.visibility_l2);
  }
  o.detail << "3D eps*H1 in [" << double(lo) << ", " << double(hi) << "] exterior in [" << double(ext_lo) << ", "
           << double(ext_hi) << "]";
  o.require(lo > 0 && hi / lo <= 3, "3D eps*H1 within a factor 3");
  o.require(ext_lo > 0 && ext_lo / ext_hi >= 1.0L / 3, "3D exterior bounded below");

  const auto r2 = experiments::blowup_sweep(2, 1, kResonantEps, experiments::default_blowup_mode(2));
  const Real growth = r2.records.back().interior_h1 / r2.records.front().interior_h1;
  o.detail << " 2D H1 growth=" << double(growth);
  o.require(growth >= 10, "2D interior growth >= 10x");
}

void criterion_interior_limit(Outcome& o) {
  const auto spec = mie::first_resonance(3, 0, 1, 1);
  const std::vector<Real> eps{1e-1L, 3e-2L, 1e-2L, 3e-3L, 1e-3L};
  std::vector<Real> errors;
  for (Real e : eps) {
    const auto c = unit_config(3, e, spec.sigma0);
    const auto F = fields::cloak_series(c);
    const auto L = fields::interior_limit(c, 1, spec);
    errors.push_back(fields::norm_annulus(F, fields::Quantity::DiffVsReference, 0, 1, std::cref(L)).l2);
  }
  const auto fit = experiments::fit_rate(eps, errors, experiments::RateModel::LogEps);
  o.detail << "L2 error " << double(errors.front()) << " -> " << double(errors.back()) << " slope=" << double(fit.slope);
  o.require(fit.slope >= 0.8 && fit.slope <= 1.2, "error slope in [0.8, 1.2]");

  const auto L = fields::interior_limit(unit_config(3, 0.1L, spec.sigma0), 1, spec);
  const std::vector<Real> radii{0.0L, 0.2L, 0.5L, 0.8L, 0.99L};
  const auto colloc = oracle::collocation_interior_limit(spec.kappa_star, 1, radii);
  Real worst = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    worst = std::max(worst, std::abs(fields::radial_modes(L, radii[i])[0].value - colloc[i]) / std::abs(colloc[0]));
  }
  o.detail << " collocation diff=" << double(worst);
  o.require(worst <= 1e-8, "limit matches collocation");
}

Real std_regular(int d, int n, Real x) {
  return d == 3 ? std::sph_bessel(unsigned(n), x) : std::cyl_bessel_j(Real(n), x);
}

void criterion_oracles(Outcome& o) {
  oracle::Rng rng(7);
  Real worst_alpha = 0;
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Real k = rng.uniform(0.3L, 3);
      const Real eps = rng.log_uniform(1e-3L, 0.5L);
      const Real sigma = rng.uniform(0.5L, 40);
      CloakConfig c = unit_config(d, eps, sigma);
      c.k = k;
      const Real k_eps = k * std::sqrt(sigma);
      const Complex solved = mie::mode_solve(mie::virtual_medium(c), k, 0, 1).scattered;
      const Real scale = std::max<Real>(std::abs(solved), 1e-3L);
      worst_alpha = std::max({worst_alpha, std::abs(solved - mie::alpha0_closed_form(d, k, eps, k_eps)) / scale,
                              std::abs(solved - oracle::alpha0_reference(d, k, eps, k_eps)) / scale});
    }
  }
  o.detail << "alpha0=" << double(worst_alpha);
  o.require(worst_alpha <= 1e-11, "alpha0 closed forms");

  Real worst_dense = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = rng.integer(2, 3);
    const int layers = rng.integer(1, 4);
    mie::LayeredMedium m{d, {}, 1};
    Real r = 0;
    for (int j = 0; j < layers; ++j) {
      r += rng.uniform(0.1L, 0.6L);
      m.layers.push_back({r, rng.uniform(0.3L, 4), Complex(rng.uniform(0.3L, 6), trial % 3 == 0 ? rng.uniform(0, 1) : 0)});
    }
    const Real k = rng.uniform(0.2L, 4);
    for (int n : {0, 1, 2, rng.integer(3, 12)}) {
      const auto s = mie::mode_solve(m, k, n, 1);
      const auto ref = oracle::dense_mode_solve(m, k, n, 1);
      worst_dense = std::max(worst_dense, rel(s.scattered, ref.alpha, 1e-300L));
      for (int j = 0; j < layers; ++j) {
        worst_dense = std::max(worst_dense, rel(s.layers[j].regular, ref.regular[j], 1e-300L));
      }
    }
  }
  o.detail << " dense=" << double(worst_dense);
  o.require(worst_dense <= 1e-11, "dense interface system");

  struct Case {
    int d;
    int n;
    Real eps;
  };
  Real worst_fd = 0;
  for (const Case& cs : {Case{3, 0, 0.1L}, Case{3, 0, 0.02L}, Case{2, 1, 0.1L}, Case{2, 0, 0.05L}}) {
    const auto spec = mie::first_resonance(cs.d, cs.n, 1, 1);
    const auto m = mie::virtual_medium(unit_config(cs.d, cs.eps, spec.sigma0));
    const auto sol = mie::interior_source_mode_solve(m, 1, spec, 1);
    const Real r1 = m.layers[0].outer_radius;
    const Real radial = boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(
        [&](Real r) { return std::pow(std_regular(cs.d, cs.n, spec.kappa_star * r), 2) * std::pow(r, Real(cs.d - 1)); },
        0, 1);
    const Real angular = cs.d == 3 ? 4 * kPi / (2 * cs.n + 1) : (cs.n == 0 ? 2 * kPi : kPi);
    const Real enorm = std::sqrt(radial * angular);
    auto source = [&](Real r) -> Complex {
      if (r >= r1) return 0;
      return std::pow(r1, Real(-cs.d)) * std_regular(cs.d, cs.n, spec.kappa_star * r / r1) / enorm;
    };
    const int N = 10000;
    const Real R = 2 * r1;
    const auto coarse = oracle::radial_fd_solve(m, 1, cs.n, source, R, N);
    const auto fine = oracle::radial_fd_solve(m, 1, cs.n, source, R, 2 * N);
    Real scale = 0;
    for (const auto& u : fine) scale = std::max(scale, std::abs(u));
    for (int i : {N / 10, N / 4, N / 2, 3 * N / 4, N}) {
      const Real r = i * R / N;
      const Complex extrapolated = (Real(4) * fine[2 * i] - coarse[i]) / Real(3);
      Complex value;
      if (r < r1) {
        value = sol.layers[0].regular * mie::basis_eval(cs.d, mie::Basis::Regular, cs.n, m.wavenumber(0, 1) * r).value;
        if (sol.particular) value += mie::particular_sample(m, 1, cs.n, *sol.particular, r).value;
      } else {
        value = sol.scattered * mie::basis_eval(cs.d, mie::Basis::Outgoing, cs.n, m.exterior_wavenumber(1) * r).value;
      }
      worst_fd = std::max(worst_fd, std::abs(value - extrapolated) / scale);
    }
  }
  o.detail << " finite-difference=" << double(worst_fd);
  o.require(worst_fd <= 1e-6, "radial finite-difference oracle");
}

void criterion_specfun(Outcome& o) {
  using namespace specfun;
  Real wronskian = 0, recurrence = 0, closed = 0;
  for (Real x : {0.1L, 1.0L, 10.0L, 100.0L}) {
    const auto J = cyl_table(CylKind::J, 50, x);
    const auto Y = cyl_table(CylKind::Y, 50, x);
    const auto j = sph_table(SphKind::j, 50, x);
    const auto y = sph_table(SphKind::y, 50, x);
    for (int n = 0; n <= 50; ++n) {
      const Complex wc = J.value[n] * Y.derivative[n] - J.derivative[n] * Y.value[n];
      const Real sc = std::max<Real>(std::abs(J.value[n] * Y.derivative[n]), 2 / (kPi * x));
      const Complex ws = j.value[n] * y.derivative[n] - j.derivative[n] * y.value[n];
      const Real ss = std::max<Real>(std::abs(j.value[n] * y.derivative[n]), 1 / (x * x));
      wronskian = std::max({wronskian, std::abs(wc - 2 / (kPi * x)) / sc, std::abs(ws - 1 / (x * x)) / ss});
    }
  }
  for (Complex z : {Complex(0.7L), Complex(5.5L), Complex(20, 0.5L), Complex(2, 3)}) {
    for (auto kind : {CylKind::J, CylKind::Y, CylKind::H1}) {
      const auto t = cyl_table(kind, 31, z);
      for (int n = 1; n <= 30; ++n) {
        const Complex rhs = Real(2 * n) / z * t.value[n];
        const Real scale = std::max({std::abs(t.value[n - 1]), std::abs(t.value[n + 1]), std::abs(rhs)});
        recurrence = std::max(recurrence, std::abs(t.value[n - 1] + t.value[n + 1] - rhs) / scale);
      }
    }
  }
  for (Real x = 0.1L; x <= 20; x += 0.37L) {
    closed = std::max({closed, rel(sph_bessel(SphKind::j, 0, x).value, Complex(std::sin(x) / x)),
                       rel(sph_bessel(SphKind::y, 0, x).value, Complex(-std::cos(x) / x)),
                       rel(sph_bessel(SphKind::h1, 0, x).value, std::exp(kI * x) / (kI * x))});
  }
  const Real t = 1e-8L;
  const Real hankel = std::abs(t * cyl_bessel(CylKind::H1, 0, t).derivative - Real(-2) / (kI * kPi));
  o.detail << "wronskian=" << double(wronskian) << " recurrence=" << double(recurrence)
           << " closed=" << double(closed) << " hankel0=" << double(hankel);
  o.require(wronskian <= 1e-11, "Wronskians");
  o.require(recurrence <= 1e-10, "recurrence");
  o.require(closed <= 1e-13, "closed forms");
  o.require(hankel <= 1e-6, "small-argument Hankel derivative");
}

void criterion_residual(Outcome& o) {
  oracle::Rng rng(88);
  const auto F = fields::cloak_series(unit_config(3, 0.2L));
  const Real h = 1e-3L;
  std::vector<Vec> pts;
  while (pts.size() < 20) {
    const Vec x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    pts.push_back(scaled(x, rng.uniform(1 + 4 * h, 2 - 4 * h) / norm(x)));
  }
  const auto rep = transform::pde_residual_report(F, F.map(), pts, h);
  const Real ratio = rep.residual / rep.residual_half;
  o.detail << "residual=" << double(rep.residual) << " halving ratio=" << double(ratio);
  o.require(rep.residual <= 1e-3, "residual <= 1e-3");
  o.require(ratio > 3 && ratio < 5, "quadratic decrease");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0: no runtime limit
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "3D invisibility rate", 10, criterion_rate_3d},
      {2, "2D invisibility rate", 10, criterion_rate_2d},
      {3, "instability under detuning", 5, criterion_instability},
      {4, "resonant blow-up", 5, criterion_blowup},
      {5, "resonant 3D interior limit", 0, criterion_interior_limit},
      {6, "oracle equivalences", 0, criterion_oracles},
      {7, "special functions", 0, criterion_specfun},
      {8, "change-of-variables residual", 0, criterion_residual},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0) o.require(seconds <= c.budget_seconds, "runtime budget");
    failures += !o.pass;
    std::printf("%s C%d %s (%.2fs%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                c.budget_seconds > 0 ? (" / " + std::to_string(int(c.budget_seconds)) + "s").c_str() : "",
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
