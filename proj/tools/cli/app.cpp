#include "app.hpp"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "cloakwave/errors.hpp"
#include "commands.hpp"
#include "run_config.hpp"

#ifndef CLOAKWAVE_VERSION
#define CLOAKWAVE_VERSION "unknown"
#endif

namespace cloakwave::cli {
namespace {

struct Flags {
  std::string config;
  std::string out;
  int threads = 0;
  int truncation = -1;
  std::string tuning;
  int dimension = 0;
};

const char* describe(const std::string& experiment) {
  if (experiment == "sweep") return "visibility and interior error over a decreasing eps list";
  if (experiment == "instability") return "resonant interior with a tuned lossless lining";
  if (experiment == "blowup") return "interior source at a resonance";
  if (experiment == "resonances") return "list interior resonances in a k range";
  if (experiment == "scan-k") return "minimum interior determinant over a k grid";
  if (experiment == "field") return "dump the total field on a grid";
  return "dump the modal coefficients";
}

int execute(const std::string& experiment, const Flags& flags, std::ostream& out) {
  const Overrides overrides{experiment, flags.dimension};
  RunConfig c = flags.config.empty() ? parse_run_config("", overrides) : load_run_config(flags.config, overrides);
  if (!flags.out.empty()) c.out_dir = flags.out;
  if (flags.threads > 0) c.threads = flags.threads;
  if (flags.truncation >= 0) c.truncation = flags.truncation;
  if (!flags.tuning.empty()) c.tuning = flags.tuning == "leading-order" ? mie::Tuning::LeadingOrder : mie::Tuning::Exact;
  validate(c);
  const RunOutput result = run_experiment(c);
  for (const auto& path : write_outputs(c, result)) out << "wrote " << path << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Near-cloak scattering experiments", "cloakwave"};
  app.set_version_flag("--version", CLOAKWAVE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("-c,--config", flags.config, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("-o,--out", flags.out, "output directory (overrides output.dir)");
  app.add_option("--threads", flags.threads, "worker threads for eps sweeps")->check(CLI::Range(1, 256));
  app.add_option("--truncation", flags.truncation, "modal truncation, 0 = automatic")->check(CLI::Range(0, 200));
  app.add_option("--tuning", flags.tuning, "lining tuning for instability runs")
      ->check(CLI::IsMember({"exact", "leading-order"}));
  app.add_option("--dim", flags.dimension, "spatial dimension")->check(CLI::IsMember({2, 3}));

  for (const auto& name : kExperiments) app.add_subcommand(name, describe(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? 0 : 2;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    return execute(experiment, flags, out);
  } catch (const ValidationError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedConfiguration& e) {
    err << "unsupported configuration: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cloakwave::cli
