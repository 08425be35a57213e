#pragma once

// Experiment drivers. Rows of a sweep are independent and run on a small
// thread pool; results are always returned in the order of eps_list.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cloakwave/cloak_config.hpp"
#include "cloakwave/fields.hpp"
#include "cloakwave/resonance.hpp"

namespace cloakwave::experiments {

enum class RateModel { LogEps, LogInvLnEps };

struct RateFit {
  Real slope = 0;
  Real intercept = 0;
  Real residual = 0;  // max |log v - (slope log m + intercept)|
  RateModel model = RateModel::LogEps;
};

/// eps (LogEps) or 1 / |ln eps| (LogInvLnEps).
Real model_variable(RateModel model, Real eps);

/// Least-squares line through (log model_variable(eps), log value).
/// Throws ValidationError for fewer than 3 points or non-positive values and
/// UnsupportedConfiguration("degenerate") when the values span less than one decade.
RateFit fit_rate(std::span<const Real> eps, std::span<const Real> values, RateModel model);

struct SweepRecord {
  Real epsilon = 0;
  Real visibility_l2 = 0;
  Real visibility_h1 = 0;
  Real interior_l2 = 0;
  Real interior_h1 = 0;
  std::optional<Real> sigma_eps;
  std::optional<Complex> alpha0;
  std::vector<std::string> flags;
  std::vector<std::pair<std::string, Real>> extras;  // experiment-specific columns for the summary

  bool singular() const { return !flags.empty(); }
};

/// Runs one sweep row. A SingularSystemError marks the row "singular_mode_<n>"
/// with nan norms; other numeric errors are rethrown with the row's eps in the message.
void run_row(SweepRecord& record, const std::function<void(SweepRecord&)>& body);

struct SweepOptions {
  int threads = 1;
  int truncation = 0;  // 0: automatic
  Real probe_inner = 2;
  Real probe_outer = 4;
};

struct ConvergenceResult {
  std::vector<SweepRecord> records;
  RateModel model = RateModel::LogEps;
  std::optional<RateFit> fit;           // visibility (L2) against the model variable
  std::optional<RateFit> interior_fit;  // interior deviation against eps
  std::vector<std::string> notes;
  /// max / min over rows of visibility / model_variable(eps).
  Real normalized_spread = 0;
};

/// Rate sweep of a passive, non-resonant configuration. Visibility is
/// ||u_c - u o F_0^-1|| on the probe annulus; the interior columns hold
/// ||U_eps - interior_limit|| on B_1. Throws UnsupportedConfiguration for
/// resonant interiors and ValidationError for bad eps lists.
ConvergenceResult convergence_sweep(const CloakConfig& config, std::span<const Real> eps_list,
                                    const SweepOptions& options = {});

struct InstabilityResult {
  mie::ResonanceSpec resonance;
  mie::Tuning tuning = mie::Tuning::Exact;
  std::vector<SweepRecord> records;
  Real outgoing_norm = 0;  // ||h_0(k|x|)|| (3D) or ||H_0(k|x|)|| (2D) over the probe annulus
  ConvergenceResult control;  // interior sigma fixed at sigma0 + 0.5
};

/// Tuned-density sweep around the first mode-0 resonance of a unit interior
/// (a = 1), plane wave along the first axis (2D) or z (3D). Extras per row:
/// k_eps, sigma_literal, sigma_consistent, product_literal, product_consistent,
/// alpha0_closed_re, alpha0_closed_im.
InstabilityResult instability_sweep(int dimension, Real k, std::span<const Real> eps_list, mie::Tuning tuning,
                                    const SweepOptions& options = {});

struct BlowupResult {
  mie::ResonanceSpec resonance;
  std::vector<SweepRecord> records;
};

/// Exactly resonant unit interior (a = 1, sigma = sigma0 of `mode`) driven by
/// the normalized eigenfunction source, no incident field. interior_* hold
/// ||U_eps|| on B_1, visibility_l2 the exterior ||u_c|| on the probe annulus.
/// Extra per row: eps_h1 = eps ||U_eps||_{H1(B_1)}.
BlowupResult blowup_sweep(int dimension, Real k, std::span<const Real> eps_list, int mode,
                          const SweepOptions& options = {});

/// Default resonant mode for blow-up sweeps: 0 in 3D, 1 in 2D.
int default_blowup_mode(int dimension);

struct ScanResult {
  Real minimum = 0;  // +inf for an empty grid
  Real k_at_minimum = 0;
  int mode_at_minimum = -1;
};

/// Minimum of |resonance_determinant| over the k grid and modes 0..n_max.
ScanResult nonresonance_scan(int dimension, Real a, Real sigma, std::span<const Real> k_grid, int n_max);

/// ||h_0(k|x|)|| (3D) or ||H_0(k|x|)|| (2D) in L2(B_r_out \ B_r_in).
Real outgoing_monopole_norm(int dimension, Real k, Real r_in, Real r_out);

}  // namespace cloakwave::experiments
