#include "cloakwave/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "cloakwave/errors.hpp"

namespace cloakwave::experiments {
namespace {

constexpr Real kResonanceGuard = 1e-6L;
constexpr int kResonanceModes = 10;
constexpr Real kControlDetuning = 0.5L;

std::string eps_label(Real eps) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "eps = %.6g", double(eps));
  return buf;
}

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// failure in index order is rethrown after all workers finish.
template <class Body>
void parallel_rows(std::size_t count, int threads, Body body) {
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

template <class Body>
void guarded_row(SweepRecord& record, Body body) {
  run_row(record, [&](SweepRecord&) { body(); });
}

void check_eps_list(std::span<const Real> eps_list, std::size_t minimum) {
  if (eps_list.size() < minimum) {
    throw ValidationError("eps list needs at least " + std::to_string(minimum) + " entries");
  }
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0 && eps_list[i] <= 1)) throw ValidationError("eps values must lie in (0, 1]");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw ValidationError("eps list must be strictly decreasing");
  }
}

fields::IncidentSpec default_plane_wave(int dimension) {
  fields::IncidentSpec inc;
  inc.direction = dimension == 2 ? Vec{1, 0, 0} : Vec{0, 0, 1};
  return inc;
}

void check_nonresonant(const CloakConfig& config, std::vector<std::string>& notes) {
  if (config.interior.size() != 1 || config.interior[0].sigma.imag() != 0) {
    notes.push_back("resonance pre-check skipped: interior is not a single lossless layer");
    return;
  }
  const auto& layer = config.interior[0];
  const Real kappa = config.k * std::sqrt(layer.sigma.real() / layer.a);
  for (int n = 0; n <= kResonanceModes; ++n) {
    if (std::abs(mie::resonance_determinant(config.dimension, n, layer.a, kappa)) < kResonanceGuard) {
      throw UnsupportedConfiguration("resonant configuration (mode " + std::to_string(n) +
                                     "): use the instability or blowup experiments");
    }
  }
}

std::optional<RateFit> try_fit(std::span<const SweepRecord> records, bool interior, RateModel model,
                               const std::string& what, std::vector<std::string>& notes) {
  std::vector<Real> eps;
  std::vector<Real> values;
  for (const auto& r : records) {
    if (r.singular()) continue;
    eps.push_back(r.epsilon);
    values.push_back(interior ? r.interior_l2 : r.visibility_l2);
  }
  try {
    return fit_rate(eps, values, model);
  } catch (const Error& e) {
    notes.push_back(what + " fit unavailable: " + e.what());
    return std::nullopt;
  }
}

}  // namespace

void run_row(SweepRecord& record, const std::function<void(SweepRecord&)>& body) {
  try {
    body(record);
  } catch (const SingularSystemError& e) {
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    record.visibility_l2 = record.visibility_h1 = record.interior_l2 = record.interior_h1 = nan;
    record.flags.push_back("singular_mode_" + std::to_string(e.mode()));
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw Error(eps_label(record.epsilon) + ": " + e.what());
  }
}

ConvergenceResult convergence_sweep(const CloakConfig& config, std::span<const Real> eps_list,
                                    const SweepOptions& options) {
  validate(config);
  check_eps_list(eps_list, 3);
  ConvergenceResult result;
  check_nonresonant(config, result.notes);
  const int d = config.dimension;
  result.model = d == 3 ? RateModel::LogEps : RateModel::LogInvLnEps;
  const Complex u0 = fields::incident_direct(config.incident, d, config.k, Vec{0, 0, 0});

  result.records.resize(eps_list.size());
  parallel_rows(eps_list.size(), options.threads, [&](std::size_t i) {
    SweepRecord& row = result.records[i];
    row.epsilon = eps_list[i];
    guarded_row(row, [&] {
      CloakConfig c = config;
      c.epsilon = eps_list[i];
      const auto F = fields::cloak_series(c, options.truncation, options.probe_outer);
      const auto vis = fields::norm_annulus(F, fields::Quantity::DiffVsReference, options.probe_inner,
                                            options.probe_outer, fields::LimitReference{});
      row.visibility_l2 = vis.l2;
      row.visibility_h1 = vis.h1;
      fields::AnnulusNorms interior;
      if (c.interior.size() == 1) {
        const auto limit = fields::interior_limit(c, u0);
        interior = fields::norm_annulus(F, fields::Quantity::DiffVsReference, 0, 1, std::cref(limit));
      } else {
        interior = fields::norm_annulus(F, fields::Quantity::Total, 0, 1);
      }
      row.interior_l2 = interior.l2;
      row.interior_h1 = interior.h1;
    });
  });

  Real lo = std::numeric_limits<Real>::infinity();
  Real hi = 0;
  for (const auto& r : result.records) {
    if (r.singular() || !(r.epsilon < 1 || result.model == RateModel::LogEps)) continue;
    const Real v = r.visibility_l2 / model_variable(result.model, r.epsilon);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  result.normalized_spread = hi > 0 ? hi / lo : std::numeric_limits<Real>::quiet_NaN();
  result.fit = try_fit(result.records, false, result.model, "visibility", result.notes);
  result.interior_fit = try_fit(result.records, true, RateModel::LogEps, "interior", result.notes);
  return result;
}

InstabilityResult instability_sweep(int dimension, Real k, std::span<const Real> eps_list, mie::Tuning tuning,
                                    const SweepOptions& options) {
  if (dimension != 2 && dimension != 3) throw ValidationError("dimension must be 2 or 3");
  if (!(k > 0)) throw ValidationError("k must be positive");
  check_eps_list(eps_list, 1);
  InstabilityResult result;
  result.tuning = tuning;
  result.resonance = mie::first_resonance(dimension, 0, 1, k);
  result.outgoing_norm = outgoing_monopole_norm(dimension, k, options.probe_inner, options.probe_outer);
  const auto& spec = result.resonance;

  result.records.resize(eps_list.size());
  parallel_rows(eps_list.size(), options.threads, [&](std::size_t i) {
    SweepRecord& row = result.records[i];
    const Real eps = eps_list[i];
    row.epsilon = eps;
    guarded_row(row, [&] {
      const auto tuned = mie::tune_sigma(dimension, k, eps, spec, tuning);
      const Real rate = dimension == 3 ? 1 / eps : std::abs(std::log(eps));
      row.sigma_eps = tuned.sigma_consistent;
      row.extras = {{"k_eps", tuned.k_eps},
                    {"sigma_literal", tuned.sigma_literal},
                    {"sigma_consistent", tuned.sigma_consistent},
                    {"product_literal", rate * std::abs(tuned.sigma_literal - spec.kappa_star / k)},
                    {"product_consistent", rate * std::abs(tuned.sigma_consistent - spec.sigma0)}};
      const Complex closed = mie::alpha0_closed_form(dimension, k, eps, tuned.k_eps);
      row.extras.emplace_back("alpha0_closed_re", closed.real());
      row.extras.emplace_back("alpha0_closed_im", closed.imag());

      CloakConfig c{dimension, k, eps, {{1, 1, tuned.sigma_consistent}}, default_plane_wave(dimension)};
      const auto F = fields::cloak_series(c, options.truncation, options.probe_outer);
      row.alpha0 = F.modes[0].scattered;
      const auto scattered =
          fields::norm_annulus(F, fields::Quantity::Scattered, options.probe_inner, options.probe_outer);
      row.visibility_l2 = scattered.l2;
      row.visibility_h1 = scattered.h1;
      const auto interior = fields::norm_annulus(F, fields::Quantity::Total, 0, 1);
      row.interior_l2 = interior.l2;
      row.interior_h1 = interior.h1;
    });
  });

  if (eps_list.size() >= 3) {
    CloakConfig control{dimension, k, eps_list[0], {{1, 1, spec.sigma0 + kControlDetuning}},
                        default_plane_wave(dimension)};
    result.control = convergence_sweep(control, eps_list, options);
  }
  return result;
}

int default_blowup_mode(int dimension) { return dimension == 2 ? 1 : 0; }

BlowupResult blowup_sweep(int dimension, Real k, std::span<const Real> eps_list, int mode,
                          const SweepOptions& options) {
  if (dimension != 2 && dimension != 3) throw ValidationError("dimension must be 2 or 3");
  if (!(k > 0)) throw ValidationError("k must be positive");
  if (mode < 0 || mode > specfun::kMaxOrder) throw ValidationError("blow-up mode out of range");
  check_eps_list(eps_list, 1);
  BlowupResult result;
  result.resonance = mie::first_resonance(dimension, mode, 1, k);
  const auto& spec = result.resonance;

  result.records.resize(eps_list.size());
  parallel_rows(eps_list.size(), options.threads, [&](std::size_t i) {
    SweepRecord& row = result.records[i];
    const Real eps = eps_list[i];
    row.epsilon = eps;
    guarded_row(row, [&] {
      CloakConfig c{dimension, k, eps, {{1, 1, spec.sigma0}}, default_plane_wave(dimension)};
      const auto F = fields::source_series(c, spec, 1);
      const auto interior = fields::norm_annulus(F, fields::Quantity::Total, 0, 1);
      const auto exterior =
          fields::norm_annulus(F, fields::Quantity::Scattered, options.probe_inner, options.probe_outer);
      row.interior_l2 = interior.l2;
      row.interior_h1 = interior.h1;
      row.visibility_l2 = exterior.l2;
      row.visibility_h1 = exterior.h1;
      row.extras = {{"eps_h1", eps * interior.h1}};
    });
  });
  return result;
}

ScanResult nonresonance_scan(int dimension, Real a, Real sigma, std::span<const Real> k_grid, int n_max) {
  if (!(a > 0) || !(sigma > 0)) throw ValidationError("scan: a and sigma must be positive");
  ScanResult result{std::numeric_limits<Real>::infinity(), 0, -1};
  for (Real k : k_grid) {
    if (!(k > 0)) throw ValidationError("scan: k values must be positive");
    const Real kappa = k * std::sqrt(sigma / a);
    for (int n = 0; n <= n_max; ++n) {
      const Real det = std::abs(mie::resonance_determinant(dimension, n, a, kappa));
      if (det < result.minimum) result = {det, k, n};
    }
  }
  return result;
}

Real outgoing_monopole_norm(int dimension, Real k, Real r_in, Real r_out) {
  auto density = [&](Real r) {
    const Complex h = mie::basis_eval(dimension, mie::Basis::Outgoing, 0, k * r).value;
    return mie::angular_weight(dimension, 0) * std::norm(h) * std::pow(r, dimension - 1);
  };
  return std::sqrt(boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(density, r_in, r_out, 15, 1e-14L));
}

}  // namespace cloakwave::experiments
