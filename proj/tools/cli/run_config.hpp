#pragma once

// Run configuration of the command-line tool.
//
// Configs are YAML documents (comments allowed). Every key is optional:
//
//   experiment: sweep        # sweep | instability | blowup | resonances | scan-k | field | modes
//   dimension: 3
//   k: 1
//   epsilon: 0.1             # single-eps runs (field, modes)
//   eps_list: [0.1, 0.03, 0.01, 0.003, 0.001]
//   interior:                # innermost first, outermost radius 1
//     - {radius: 1, a: 1, sigma: 1}        # sigma: x or [re, im]
//   incident: {kind: plane_wave, direction: [0, 0, 1], amplitude: 1}
//             # or {kind: point_source, location: [0, 0, 3.5]}
//   probe: {inner: 2, outer: 4}
//   truncation: 0            # 0 = automatic
//   tuning: exact            # exact | leading-order
//   threads: 1
//   blowup: {mode: 0}
//   resonances: {k_min: 0.05, k_max: 5, modes: 10}
//   scan: {k_min: 0.05, k_max: 1, points: 200, modes: 10}
//   grid: {lower: [-3.5, -3.5, 0], upper: [3.5, 3.5, 0], points: [81, 81, 1]}
//   output: {dir: out}
//
// Numbers are stored as binary64 values so the JSON echo re-parses exactly.

#include <string>
#include <vector>

#include "json.hpp"

#include "cloakwave/cloak_config.hpp"
#include "cloakwave/fields.hpp"
#include "cloakwave/resonance.hpp"

namespace cloakwave::cli {

inline const std::vector<std::string> kExperiments{"sweep", "instability", "blowup", "resonances",
                                                  "scan-k", "field", "modes"};

struct RunConfig {
  std::string experiment = "sweep";
  CloakConfig cloak;
  std::vector<Real> eps_list{0.1L, 0.03L, 0.01L, 0.003L, 0.001L};
  Real probe_inner = 2;
  Real probe_outer = 4;
  int truncation = 0;
  mie::Tuning tuning = mie::Tuning::Exact;
  int threads = 1;
  int blowup_mode = 0;
  Real resonance_k_min = 0.05L;
  Real resonance_k_max = 5;
  int resonance_modes = 10;
  Real scan_k_min = 0.05L;
  Real scan_k_max = 1;
  int scan_points = 200;
  int scan_modes = 10;
  fields::GridSpec grid;
  std::string out_dir = "out";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Defaults for an experiment in a dimension (eps grid, incidence axis, grid slice).
RunConfig default_run_config(const std::string& experiment, int dimension);

/// Values that replace the document's experiment / dimension before the
/// experiment- and dimension-dependent defaults are filled in.
struct Overrides {
  std::string experiment;
  int dimension = 0;
};

/// Parses YAML (or JSON) text. Throws ValidationError on malformed documents,
/// unknown keys or invalid values.
RunConfig parse_run_config(const std::string& text, const Overrides& overrides = {});

RunConfig load_run_config(const std::string& path, const Overrides& overrides = {});

/// Checks eps in (0, 1], k > 0, layer and incident invariants, probe radii, list ordering.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

}  // namespace cloakwave::cli
