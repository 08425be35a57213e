#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cloakwave/errors.hpp"
#include "cloakwave/fields.hpp"
#include "cloakwave/resonance.hpp"

#ifndef CLOAKWAVE_VERSION
#define CLOAKWAVE_VERSION "unknown"
#endif

namespace cloakwave::cli {
namespace {

using nlohmann::json;

json number_json(Real x) { return std::isfinite(x) ? json(double(x)) : json(nullptr); }

const char* model_name(experiments::RateModel m) {
  return m == experiments::RateModel::LogEps ? "log_eps" : "log_inv_ln_eps";
}

json fit_json(const std::optional<experiments::RateFit>& fit) {
  if (!fit) return nullptr;
  return {{"slope", double(fit->slope)},
          {"intercept", double(fit->intercept)},
          {"residual", double(fit->residual)},
          {"model", model_name(fit->model)}};
}

json resonance_json(const mie::ResonanceSpec& r) {
  return {{"dimension", r.dimension}, {"mode", r.mode},        {"k", double(r.k)},
          {"a", double(r.a)},         {"kappa_star", double(r.kappa_star)}, {"sigma0", double(r.sigma0)}};
}

json row_json(const experiments::SweepRecord& r) {
  json j{{"epsilon", double(r.epsilon)},
         {"visibility_l2", number_json(r.visibility_l2)},
         {"visibility_h1", number_json(r.visibility_h1)},
         {"interior_l2", number_json(r.interior_l2)},
         {"interior_h1", number_json(r.interior_h1)},
         {"flags", r.flags}};
  if (r.sigma_eps) j["sigma_eps"] = double(*r.sigma_eps);
  if (r.alpha0) {
    j["alpha0_re"] = double(r.alpha0->real());
    j["alpha0_im"] = double(r.alpha0->imag());
  }
  for (const auto& [name, value] : r.extras) j[name] = number_json(value);
  return j;
}

json rows_json(const std::vector<experiments::SweepRecord>& records) {
  json rows = json::array();
  for (const auto& r : records) rows.push_back(row_json(r));
  return rows;
}

json convergence_json(const experiments::ConvergenceResult& r) {
  return {{"fit", fit_json(r.fit)},
          {"interior_fit", fit_json(r.interior_fit)},
          {"model", model_name(r.model)},
          {"normalized_spread", number_json(r.normalized_spread)},
          {"notes", r.notes}};
}

// Resonances of the configured interior when it is a single lossless layer.
json interior_resonances(const RunConfig& c) {
  json list = json::array();
  if (c.cloak.interior.size() != 1 || c.cloak.interior[0].sigma.imag() != 0) return list;
  const auto& l = c.cloak.interior[0];
  for (const auto& r : mie::detect_resonances(c.cloak.dimension, l.a, l.sigma.real(), c.resonance_k_min,
                                              c.resonance_k_max, c.resonance_modes)) {
    list.push_back(resonance_json(r));
  }
  return list;
}

experiments::SweepOptions sweep_options(const RunConfig& c) {
  return {c.threads, c.truncation, c.probe_inner, c.probe_outer};
}

std::string modes_csv(const fields::FieldSeries& F) {
  std::ostringstream out;
  out << "n,b_re,b_im,alpha_re,alpha_im";
  for (std::size_t j = 0; j < F.medium.layers.size(); ++j) {
    out << ",c" << j << "_re,c" << j << "_im,d" << j << "_re,d" << j << "_im";
  }
  out << '\n';
  for (const auto& m : F.modes) {
    out << m.n << ',' << format_number(m.incident.real()) << ',' << format_number(m.incident.imag()) << ','
        << format_number(m.scattered.real()) << ',' << format_number(m.scattered.imag());
    for (const auto& l : m.layers) {
      out << ',' << format_number(l.regular.real()) << ',' << format_number(l.regular.imag()) << ','
          << format_number(l.singular.real()) << ',' << format_number(l.singular.imag());
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string format_number(Real x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", double(x));
  return buf;
}

std::string results_csv(const std::vector<experiments::SweepRecord>& records) {
  std::ostringstream out;
  out << kResultsHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.epsilon) << ',' << format_number(r.visibility_l2) << ',' << format_number(r.visibility_h1)
        << ',' << format_number(r.interior_l2) << ',' << format_number(r.interior_h1) << ','
        << (r.sigma_eps ? format_number(*r.sigma_eps) : "") << ','
        << (r.alpha0 ? format_number(r.alpha0->real()) : "") << ','
        << (r.alpha0 ? format_number(r.alpha0->imag()) : "") << ',';
    for (std::size_t i = 0; i < r.flags.size(); ++i) out << (i ? ";" : "") << r.flags[i];
    out << '\n';
  }
  return out.str();
}

RunOutput run_experiment(const RunConfig& c) {
  validate(c);
  RunOutput out;
  json& s = out.summary;
  s["tool"] = "cloakwave";
  s["version"] = CLOAKWAVE_VERSION;
  s["experiment"] = c.experiment;
  s["config"] = to_json(c);
  const int d = c.cloak.dimension;
  const Real k = c.cloak.k;

  if (c.experiment == "sweep") {
    const auto r = experiments::convergence_sweep(c.cloak, c.eps_list, sweep_options(c));
    s["resonances"] = interior_resonances(c);
    s.update(convergence_json(r));
    s["rows"] = rows_json(r.records);
    out.files.push_back({"results.csv", results_csv(r.records)});
  } else if (c.experiment == "instability") {
    const auto r = experiments::instability_sweep(d, k, c.eps_list, c.tuning, sweep_options(c));
    s["resonances"] = json::array({resonance_json(r.resonance)});
    s["tuning"] = r.tuning == mie::Tuning::Exact ? "exact" : "leading-order";
    s["outgoing_norm"] = double(r.outgoing_norm);
    s["rows"] = rows_json(r.records);
    if (!r.control.records.empty()) {
      s["control"] = convergence_json(r.control);
      s["control"]["rows"] = rows_json(r.control.records);
    }
    out.files.push_back({"results.csv", results_csv(r.records)});
  } else if (c.experiment == "blowup") {
    const auto r = experiments::blowup_sweep(d, k, c.eps_list, c.blowup_mode, sweep_options(c));
    s["resonances"] = json::array({resonance_json(r.resonance)});
    s["rows"] = rows_json(r.records);
    out.files.push_back({"results.csv", results_csv(r.records)});
  } else if (c.experiment == "resonances") {
    s["resonances"] = interior_resonances(c);
    std::ostringstream csv;
    csv << "dimension,mode,k,kappa_star,sigma0\n";
    for (const auto& r : s["resonances"]) {
      csv << r["dimension"].get<int>() << ',' << r["mode"].get<int>() << ','
          << format_number(r["k"].get<double>()) << ',' << format_number(r["kappa_star"].get<double>()) << ','
          << format_number(r["sigma0"].get<double>()) << '\n';
    }
    out.files.push_back({"resonances.csv", csv.str()});
  } else if (c.experiment == "scan-k") {
    if (c.cloak.interior.size() != 1 || c.cloak.interior[0].sigma.imag() != 0) {
      throw ValidationError("scan-k needs a single lossless interior layer");
    }
    const auto& l = c.cloak.interior[0];
    std::vector<Real> grid;
    for (int i = 0; i < c.scan_points; ++i) {
      grid.push_back(c.scan_points == 1 ? c.scan_k_min
                                        : c.scan_k_min + (c.scan_k_max - c.scan_k_min) * i / (c.scan_points - 1));
    }
    std::ostringstream csv;
    csv << "k,min_determinant,mode\n";
    for (Real kk : grid) {
      const Real one[] = {kk};
      const auto r = experiments::nonresonance_scan(d, l.a, l.sigma.real(), one, c.scan_modes);
      csv << format_number(kk) << ',' << format_number(r.minimum) << ',' << r.mode_at_minimum << '\n';
    }
    const auto r = experiments::nonresonance_scan(d, l.a, l.sigma.real(), grid, c.scan_modes);
    s["minimum"] = number_json(r.minimum);
    s["empty_grid"] = grid.empty();
    if (!grid.empty()) {
      s["k_at_minimum"] = double(r.k_at_minimum);
      s["mode_at_minimum"] = r.mode_at_minimum;
    }
    s["resonances"] = interior_resonances(c);
    out.files.push_back({"scan.csv", csv.str()});
  } else if (c.experiment == "field") {
    auto F = fields::cloak_series(c.cloak, c.truncation, 5);
    s["truncation"] = F.truncation();
    const auto vis = fields::norm_annulus(F, fields::Quantity::DiffVsReference, c.probe_inner, c.probe_outer,
                                          fields::LimitReference{});
    s["visibility_l2"] = double(vis.l2);
    s["visibility_h1"] = double(vis.h1);
    s["resonances"] = interior_resonances(c);
    out.field = std::move(F);
  } else if (c.experiment == "modes") {
    const auto F = fields::cloak_series(c.cloak, c.truncation, c.probe_outer);
    s["truncation"] = F.truncation();
    s["resonances"] = interior_resonances(c);
    out.files.push_back({"modes.csv", modes_csv(F)});
  }
  return out;
}

std::vector<std::string> write_outputs(const RunConfig& c, const RunOutput& output) {
  namespace fs = std::filesystem;
  fs::create_directories(c.out_dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = (fs::path(c.out_dir) / name).string();
    std::ofstream f(path);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + path);
    written.push_back(path);
  };
  for (const auto& file : output.files) write(file.name, file.content);
  if (output.field) {
    const auto path = (fs::path(c.out_dir) / "field.csv").string();
    fields::dump_field(*output.field, c.grid, path);
    written.push_back(path);
  }
  write("summary.json", output.summary.dump(2) + "\n");
  return written;
}

}  // namespace cloakwave::cli
