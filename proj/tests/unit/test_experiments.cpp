#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "cloakwave/errors.hpp"
#include "cloakwave/experiments.hpp"
#include "support/oracles.hpp"

using namespace cloakwave;
using namespace cloakwave::experiments;
using oracle::rel;

namespace {

CloakConfig unit_config(int d, Real sigma = 1) {
  CloakConfig c;
  c.dimension = d;
  c.interior = {{1, 1, sigma}};
  c.incident.direction = d == 2 ? Vec{1, 0, 0} : Vec{0, 0, 1};
  return c;
}

const std::vector<Real> kRateEps{1e-1L, 3e-2L, 1e-2L, 3e-3L, 1e-3L};

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("fit_rate on exact lines") {
    const std::vector<Real> eps{1e-1L, 1e-2L, 1e-3L, 1e-4L};
    std::vector<Real> v;
    for (Real e : eps) v.push_back(2 * e);
    const auto f = fit_rate(eps, v, RateModel::LogEps);
    CHECK(std::abs(f.slope - 1) < 1e-12);
    CHECK(std::abs(f.intercept - std::log(2.0L)) < 1e-12);
    CHECK(f.residual < 1e-12);

    // 1/|ln eps| needs a wide eps range to span a decade.
    const std::vector<Real> wide{1e-2L, 1e-6L, 1e-12L, 1e-25L, 1e-40L};
    std::vector<Real> w;
    for (Real e : wide) w.push_back(3 / std::abs(std::log(e)));
    const auto g = fit_rate(wide, w, RateModel::LogInvLnEps);
    CHECK(std::abs(g.slope - 1) < 1e-12);
    CHECK(std::abs(g.intercept - std::log(3.0L)) < 1e-12);
  }

  TEST_CASE("fit_rate residual is the maximum deviation") {
    const std::vector<Real> eps{1e-1L, 1e-2L, 1e-3L};
    const std::vector<Real> v{1e-1L, 2e-2L, 1e-3L};
    const auto f = fit_rate(eps, v, RateModel::LogEps);
    Real worst = 0;
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, std::abs(std::log(v[i]) - (f.slope * std::log(eps[i]) + f.intercept)));
    }
    CHECK(std::abs(f.residual - worst) < 1e-15);
  }

  TEST_CASE("fit_rate rejects degenerate input") {
    const std::vector<Real> eps{1e-1L, 1e-2L, 1e-3L};
    CHECK_THROWS_AS(fit_rate(eps, std::vector<Real>{1, 2, 3}, RateModel::LogEps), UnsupportedConfiguration);
    CHECK_THROWS_AS(fit_rate(eps, std::vector<Real>{1, 0, 3}, RateModel::LogEps), ValidationError);
    CHECK_THROWS_AS(fit_rate(std::vector<Real>{1e-1L, 1e-2L}, std::vector<Real>{1, 0.1L}, RateModel::LogEps),
                    ValidationError);
  }

  TEST_CASE("3D sweep slope") {
    const auto r = convergence_sweep(unit_config(3), kRateEps);
    REQUIRE(r.fit);
    CHECK(r.fit->slope >= 0.9);
    CHECK(r.fit->slope <= 1.1);
    CHECK(r.fit->residual <= 0.1);
    REQUIRE(r.records.size() == 5);
    for (const auto& row : r.records) {
      CHECK(row.visibility_l2 > 0);
      CHECK(row.visibility_h1 >= row.visibility_l2);
      CHECK(std::isfinite(row.interior_h1));
    }
  }

  TEST_CASE("2D sweep normalized spread") {
    const auto r = convergence_sweep(unit_config(2), kRateEps);
    CHECK(r.model == RateModel::LogInvLnEps);
    CHECK(r.normalized_spread >= 1);
    CHECK(r.normalized_spread < 2);
  }

  TEST_CASE("eps = 1 reproduces bare-inclusion scattering") {
    const auto c = unit_config(3, 4);
    const auto r = convergence_sweep(c, std::vector<Real>{1, 0.5L, 0.1L});
    const auto bare = fields::solve_series({3, {{1, 1, 4}}, 1}, 1, c.incident);
    const Real expected = fields::norm_annulus(bare, fields::Quantity::Scattered, 2, 4).l2;
    CHECK(rel(r.records[0].visibility_l2, expected) < 1e-12);
    CHECK(expected > 0.1);
  }

  TEST_CASE("sweep input validation") {
    CHECK_THROWS_AS(convergence_sweep(unit_config(3), std::vector<Real>{0.1L, 0.2L, 0.01L}), ValidationError);
    CHECK_THROWS_AS(convergence_sweep(unit_config(3), std::vector<Real>{0.1L, 0.01L}), ValidationError);
    const auto spec = mie::first_resonance(3, 0, 1, 1);
    CHECK_THROWS_AS(convergence_sweep(unit_config(3, spec.sigma0), kRateEps), UnsupportedConfiguration);
  }

  TEST_CASE("rows are identical for any thread count") {
    for (int d : {2, 3}) {
      const auto a = convergence_sweep(unit_config(d), kRateEps, {1});
      const auto b = convergence_sweep(unit_config(d), kRateEps, {4});
      REQUIRE(a.records.size() == b.records.size());
      for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].visibility_l2 == b.records[i].visibility_l2);
        CHECK(a.records[i].visibility_h1 == b.records[i].visibility_h1);
        CHECK(a.records[i].interior_l2 == b.records[i].interior_l2);
        CHECK(a.records[i].interior_h1 == b.records[i].interior_h1);
      }
    }
  }

  TEST_CASE("singular rows are flagged, other failures carry eps") {
    SweepRecord row;
    row.epsilon = 0.01L;
    run_row(row, [](SweepRecord&) { throw SingularSystemError("boom", 3); });
    REQUIRE(row.flags.size() == 1);
    CHECK(row.flags[0] == "singular_mode_3");
    CHECK(std::isnan(row.visibility_l2));
    CHECK(row.singular());

    SweepRecord other;
    other.epsilon = 0.001L;
    try {
      run_row(other, [](SweepRecord&) { throw ConvergenceError("quadrature"); });
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("eps = 0.001") != std::string::npos);
    }
    CHECK_THROWS_AS(run_row(other, [](SweepRecord&) { throw ValidationError("bad"); }), ValidationError);
  }

  TEST_CASE("instability sweep") {
    for (int d : {2, 3}) {
      const std::vector<Real> eps{1e-2L, 1e-3L, 1e-4L};
      const auto r = instability_sweep(d, 1, eps, mie::Tuning::Exact);
      CHECK(r.resonance.mode == 0);
      Real lo = INFINITY, hi = 0;
      for (const auto& row : r.records) {
        REQUIRE(row.alpha0);
        CHECK(std::abs(*row.alpha0 + Real(1)) < 1e-8);
        CHECK(row.visibility_l2 >= r.outgoing_norm - 1e-8);
        for (const auto& [name, value] : row.extras) {
          if (name == "product_consistent") lo = std::min(lo, value), hi = std::max(hi, value);
        }
      }
      CHECK(lo > 0);
      CHECK(hi / lo <= 2);
    }
  }

  TEST_CASE("instability control arm matches a plain sweep") {
    const std::vector<Real> eps{1e-2L, 1e-3L, 1e-4L};
    const auto r = instability_sweep(3, 1, eps, mie::Tuning::Exact);
    REQUIRE(r.control.records.size() == 3);
    const auto plain = convergence_sweep(unit_config(3, r.resonance.sigma0 + 0.5L), eps);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(rel(r.control.records[i].visibility_l2, plain.records[i].visibility_l2) < 1e-12);
    }
    REQUIRE(r.control.fit);
    CHECK(r.control.fit->slope == doctest::Approx(1).epsilon(0.1));
  }

  TEST_CASE("outgoing monopole norm by quadrature") {
    const Real k = 1.2L;
    const Real n3 = boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(
        [&](Real r) { return 4 * kPi / (k * k); }, 2, 4);
    CHECK(rel(outgoing_monopole_norm(3, k, 2, 4), std::sqrt(n3)) < 1e-12);
    const Real n2 = boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(
        [&](Real r) {
          return 2 * kPi * r * (std::pow(std::cyl_bessel_j(0.0L, k * r), 2) + std::pow(std::cyl_neumann(0.0L, k * r), 2));
        },
        2, 4, 10, 1e-14L);
    CHECK(rel(outgoing_monopole_norm(2, k, 2, 4), std::sqrt(n2)) < 1e-11);
  }

  TEST_CASE("blow-up sweeps") {
    const std::vector<Real> eps{1e-2L, 1e-3L, 1e-4L};
    const auto r3 = blowup_sweep(3, 1, eps, default_blowup_mode(3));
    Real lo = INFINITY, hi = 0;
    for (const auto& row : r3.records) {
      lo = std::min(lo, row.epsilon * row.interior_h1);
      hi = std::max(hi, row.epsilon * row.interior_h1);
      CHECK(row.visibility_l2 > 0.1);
    }
    CHECK(lo > 0);
    CHECK(hi / lo <= 3);
    const auto r2 = blowup_sweep(2, 1, eps, default_blowup_mode(2));
    CHECK(r2.records[1].interior_h1 > r2.records[0].interior_h1);
    CHECK(r2.records[2].interior_h1 >= 10 * r2.records[0].interior_h1);
  }

  TEST_CASE("non-resonance scan") {
    std::vector<Real> small;
    for (int i = 1; i <= 100; ++i) small.push_back(i / 100.0L);
    const auto s2 = nonresonance_scan(2, 1, 1, small, 10);
    CHECK(s2.minimum > 0);
    const std::vector<Real> grid{4.0L, oracle::tan_x_root(), 5.0L};
    const auto s3 = nonresonance_scan(3, 1, 1, grid, 10);
    CHECK(s3.minimum < 1e-13);
    CHECK(s3.k_at_minimum == grid[1]);
    CHECK(s3.mode_at_minimum == 0);
    const auto empty = nonresonance_scan(3, 1, 1, std::vector<Real>{}, 10);
    CHECK(std::isinf(empty.minimum));
    CHECK(empty.mode_at_minimum == -1);
  }
}
