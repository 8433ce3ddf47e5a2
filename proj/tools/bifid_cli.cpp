#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bifid/error_metrics.hpp"
#include "bifid/orchestrator.hpp"
#include "bifid/output.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumeric = 2, kIo = 3 };

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::string epsilon;
  std::string gamma_max;
  std::string delta;
  std::string diagnostics;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key = value config file");
  cmd->add_option("--preset", o.preset, "test1a | test1b | test2_riemann | test3_blast");
  cmd->add_option("--epsilon", o.epsilon, "Knudsen number");
  cmd->add_option("--gamma-max", o.gamma_max, "cap on selected velocity points");
  cmd->add_option("--delta", o.delta, "selection threshold");
  cmd->add_option("--diagnostics", o.diagnostics, "off | light | full");
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--set", o.overrides, "extra key=value entries (repeatable)");
}

bifid::RunConfig build_config(const CommonOptions& o) {
  bifid::ConfigEntries entries;
  if (!o.config_path.empty()) entries = bifid::read_config_file(o.config_path);
  if (!o.preset.empty()) entries.emplace_back("preset", o.preset);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw bifid::ConfigError("--set expects key=value, got '" + kv + "'");
    entries.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.epsilon.empty()) entries.emplace_back("epsilon", o.epsilon);
  if (!o.gamma_max.empty()) entries.emplace_back("gamma_max", o.gamma_max);
  if (!o.delta.empty()) entries.emplace_back("delta", o.delta);
  if (!o.diagnostics.empty()) entries.emplace_back("diagnostics", o.diagnostics);
  return bifid::resolve_config(entries);
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "profiles_t%g.csv", t);
  return buf;
}

const bifid::Field* find_snapshot(const bifid::SimulationResult& r, double t) {
  for (const auto& s : r.snapshots) {
    if (s.t == t) return &s.f;
  }
  return nullptr;
}

void write_profiles_set(const std::string& dir, const bifid::SimulationResult& run, const bifid::SimulationResult* ref) {
  bifid::write_profiles(dir + "/profiles.csv", run.space, run.velocity, run.final_state,
                        ref != nullptr ? &ref->final_state : nullptr);
  for (const auto& s : run.snapshots) {
    const bifid::Field* rf = ref != nullptr ? find_snapshot(*ref, s.t) : nullptr;
    bifid::write_profiles(dir + "/" + snapshot_name(s.t), run.space, run.velocity, s.f, rf);
  }
}

double mean_gamma(const bifid::SimulationResult& r) {
  if (r.history.empty()) return 0.0;
  double s = 0.0;
  for (const auto& h : r.history) s += h.gamma_size;
  return s / static_cast<double>(r.history.size());
}

void report(const bifid::RunConfig& cfg, const bifid::SimulationResult& r) {
  std::cerr << "preset " << cfg.preset << ", mode " << bifid::to_string(cfg.mode) << ", epsilon " << *cfg.epsilon << ": "
            << r.history.size() << " steps to t = " << r.final_time << ", mean |gamma| = " << mean_gamma(r) << '\n';
}

int cmd_run(const CommonOptions& o, bool with_reference) {
  bifid::RunConfig cfg = build_config(o);
  for (const auto& w : bifid::config_warnings(cfg)) std::cerr << "warning: " << w << '\n';
  bifid::ensure_directory(o.out_dir);
  const bifid::Problem pb = bifid::build_problem(cfg);
  const bifid::SimulationResult run = bifid::run_simulation(cfg, pb);
  report(cfg, run);
  std::optional<bifid::SimulationResult> ref;
  if (with_reference && cfg.mode != bifid::RunMode::kHfReference) {
    bifid::RunConfig rc = cfg;
    rc.mode = bifid::RunMode::kHfReference;
    rc.diagnostics = bifid::DiagnosticsLevel::kOff;
    ref = bifid::run_simulation(rc, pb);
    report(rc, *ref);
    std::cerr << "relative l1 error vs HF reference: " << bifid::relative_l1_error(ref->final_state, run.final_state)
              << '\n';
  }
  write_profiles_set(o.out_dir, run, ref ? &*ref : nullptr);
  bifid::write_history(o.out_dir + "/history.csv", run.history);
  bifid::write_selected_points(o.out_dir + "/selected_points.csv", run.velocity, run.history, run.gammas);
  return kOk;
}

int cmd_reference(const CommonOptions& o, bool low_fidelity) {
  bifid::RunConfig cfg = build_config(o);
  cfg.mode = low_fidelity ? bifid::RunMode::kLfReference : bifid::RunMode::kHfReference;
  bifid::ensure_directory(o.out_dir);
  const bifid::SimulationResult run = bifid::run_simulation(cfg);
  report(cfg, run);
  write_profiles_set(o.out_dir, run, nullptr);
  bifid::write_history(o.out_dir + "/history.csv", run.history);
  return kOk;
}

int cmd_sweep(const CommonOptions& o, const std::vector<int>& gamma_list) {
  bifid::RunConfig cfg = build_config(o);
  bifid::ensure_directory(o.out_dir);
  const bifid::Problem pb = bifid::build_problem(cfg);
  bifid::RunConfig rc = cfg;
  rc.mode = bifid::RunMode::kHfReference;
  rc.diagnostics = bifid::DiagnosticsLevel::kOff;
  const bifid::SimulationResult ref = bifid::run_simulation(rc, pb);
  report(rc, ref);

  std::vector<bifid::SweepRow> rows;
  for (int g : gamma_list) {
    bifid::RunConfig bc = cfg;
    bc.mode = bifid::RunMode::kBifidelity;
    bc.gamma_max = g;
    const bifid::SimulationResult run = bifid::run_simulation(bc, pb);
    report(bc, run);
    const double mg = mean_gamma(run);
    for (const auto& s : run.snapshots) {
      if (const bifid::Field* rf = find_snapshot(ref, s.t)) rows.push_back({g, s.t, bifid::relative_l1_error(*rf, s.f), mg});
    }
    rows.push_back({g, run.final_time, bifid::relative_l1_error(ref.final_state, run.final_state), mg});
  }
  bifid::write_sweep(o.out_dir + "/sweep.csv", rows);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-fidelity velocity-space reduction for kinetic equations"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  bool with_reference = false;
  auto* run = app.add_subcommand("run", "bi-fidelity (or configured-mode) simulation");
  add_common(run, run_opts);
  run->add_flag("--with-reference", with_reference, "also run the full high-fidelity solver and emit *_ref columns");

  CommonOptions ref_opts;
  bool low_fidelity = false;
  auto* reference = app.add_subcommand("reference", "single-fidelity simulation on the full velocity grid");
  add_common(reference, ref_opts);
  reference->add_flag("--low-fidelity", low_fidelity, "run the low-fidelity model instead of the high-fidelity one");

  CommonOptions sweep_opts;
  std::vector<int> gamma_list{5, 10, 20, 35, 50};
  auto* sweep = app.add_subcommand("sweep", "relative l1 error against the HF reference for several gamma_max values");
  add_common(sweep, sweep_opts);
  sweep->add_option("--gamma-list", gamma_list, "gamma_max values")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(run_opts, with_reference);
    if (*reference) return cmd_reference(ref_opts, low_fidelity);
    return cmd_sweep(sweep_opts, gamma_list);
  } catch (const bifid::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const bifid::CflError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const bifid::NumericAbort& e) {
    std::cerr << "numeric abort: " << e.what() << '\n';
    return kNumeric;
  } catch (const bifid::OutputError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
