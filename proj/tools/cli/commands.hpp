#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cloakwave/experiments.hpp"
#include "cloakwave/fields.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace cloakwave::cli {

inline constexpr const char* kResultsHeader =
    "epsilon,visibility_l2,visibility_h1,interior_l2,interior_h1,sigma_eps,alpha0_re,alpha0_im,flags";

struct OutputFile {
  std::string name;
  std::string content;
};

/// Everything a run produces. Files are only written once the run has finished.
struct RunOutput {
  std::vector<OutputFile> files;
  nlohmann::json summary;
  /// Grid dumps are streamed straight to disk by write_outputs.
  std::optional<fields::FieldSeries> field;
};

/// 17 significant digits of the binary64 value; "nan"/"inf" for non-finite values.
std::string format_number(Real x);

std::string results_csv(const std::vector<experiments::SweepRecord>& records);

RunOutput run_experiment(const RunConfig& config);

/// Creates the output directory and writes results.csv / summary.json / ...
/// Returns the written paths.
std::vector<std::string> write_outputs(const RunConfig& config, const RunOutput& output);

}  // namespace cloakwave::cli
