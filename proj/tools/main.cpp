/* Copyright 2026 The Spinloop Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinloop/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStability = 3;

struct CommonOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool renormalize = false;
  bool quiet = false;
  bool emit_plot_script = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--out-dir", opts.out_dir, "Directory for CSV/JSON outputs");
  cmd->add_option("--seed", opts.seed, "Override the config's random seed");
  cmd->add_flag("--renormalize", opts.renormalize,
                "Rescale the traceless state norm to its initial value each step");
  cmd->add_flag("--quiet", opts.quiet, "Suppress the summary printout");
  cmd->add_flag("--emit-plot-script", opts.emit_plot_script,
                "Write a generic matplotlib script next to the CSV outputs");
}

spinloop::ScenarioConfig load_with_overrides(const std::string& path, const CommonOptions& opts) {
  spinloop::ScenarioConfig cfg = spinloop::load_scenario(path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.renormalize) cfg.integrator.renormalize = true;
  return cfg;
}

fs::path prepare_out_dir(const CommonOptions& opts) {
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  return dir;
}

int run_simulate(const std::string& config_path, const CommonOptions& opts) {
  const auto cfg = load_with_overrides(config_path, opts);
  const auto result = spinloop::run_scenario(cfg);
  const fs::path dir = prepare_out_dir(opts);

  const fs::path traj_path = dir / (cfg.name + "_trajectory.csv");
  const fs::path trace_path = dir / (cfg.name + "_trace.csv");
  const fs::path summary_path = dir / (cfg.name + "_summary.json");
  spinloop::write_trajectory_csv(traj_path, result.trajectory);
  spinloop::write_trace_csv(trace_path, result.trace);
  std::ofstream(summary_path, std::ios::binary) << result.summary.to_json() << "\n";
  if (opts.emit_plot_script) spinloop::write_plot_script(dir / "plot_trajectory.py");

  if (!opts.quiet) {
    std::cout << result.summary.to_json() << "\n";
    std::cout << "trajectory: " << traj_path.string() << "\n";
    std::cout << "trace:      " << trace_path.string() << "\n";
  }
  return kExitOk;
}

int run_check(const std::string& config_path, const CommonOptions& opts, int span_depth) {
  const auto cfg = load_with_overrides(config_path, opts);
  const auto result = spinloop::check_scenario(cfg, span_depth);
  std::cout << result.to_json(cfg.n_spins) << "\n";
  return kExitOk;
}

int run_span(const std::string& config_path, const CommonOptions& opts, int span_depth) {
  const auto cfg = load_with_overrides(config_path, opts);
  const auto gf = spinloop::generator(cfg.drift);
  const auto gc = spinloop::generator(cfg.channels.front().spec);
  const auto span = spinloop::bracket_span(gf, gc, span_depth);
  spinloop::CheckResult printer;
  printer.span = span;
  std::cout << printer.to_json(cfg.n_spins) << "\n";
  return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& sweep_path,
                  const CommonOptions& opts) {
  std::ifstream in(config_path);
  if (!in) throw spinloop::ConfigError("cannot open config file: " + config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  spinloop::parse_scenario(text);  // surface config errors before spawning workers
  const auto sweep = spinloop::load_sweep(sweep_path);
  const auto rows = spinloop::run_sweep(text, sweep);
  const fs::path dir = prepare_out_dir(opts);
  const fs::path out = dir / (fs::path(config_path).stem().string() + "_sweep.csv");
  spinloop::write_sweep_csv(out, sweep, rows);
  if (!opts.quiet) {
    std::cout << "value,mean_tracking_error,sup_tracking_error,v_final\n";
    for (const auto& row : rows)
      std::cout << row.value << "," << row.mean_tracking_error << "," << row.sup_tracking_error
                << "," << row.v_final << "\n";
    std::cout << "sweep table: " << out.string() << "\n";
  }
  return kExitOk;
}

int run_replay(const std::string& config_path, const std::string& trace_path,
               const CommonOptions& opts) {
  const auto cfg = load_with_overrides(config_path, opts);
  const auto trace = spinloop::read_trace_csv(trace_path);
  spinloop::IntegratorConfig integ = cfg.integrator;
  integ.t_final = 0.0;  // replay the full recorded horizon
  integ.dt = trace.dt();
  const auto traj = spinloop::replay_open_loop(cfg.make_model(), cfg.initial, trace, integ);
  const fs::path dir = prepare_out_dir(opts);
  const fs::path out = dir / (cfg.name + "_replay.csv");
  spinloop::write_trajectory_csv(out, traj);
  if (!opts.quiet) {
    if (traj.resampled_zoh) std::cout << "note: trace resampled with zero-order hold\n";
    std::cout << "replay trajectory: " << out.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov feedback control of coupled spin-1/2 ensembles"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string config_path, sweep_path, trace_path;
  int span_depth = 20;

  auto* simulate = app.add_subcommand("simulate", "Run a closed-loop scenario and export CSVs");
  simulate->add_option("config", config_path, "Scenario JSON")->required();
  add_common(simulate, opts);

  auto* check = app.add_subcommand("check", "Regularity and bracket-span diagnostics");
  check->add_option("config", config_path, "Scenario JSON")->required();
  check->add_option("--max-depth", span_depth, "Bracket iteration depth");
  add_common(check, opts);

  auto* span = app.add_subcommand("span", "Bracket-span obstruction report only");
  span->add_option("config", config_path, "Scenario JSON")->required();
  span->add_option("--max-depth", span_depth, "Bracket iteration depth");
  add_common(span, opts);

  auto* sweep = app.add_subcommand("sweep", "Run a scenario over a parameter grid");
  sweep->add_option("config", config_path, "Scenario JSON")->required();
  sweep->add_option("sweep", sweep_path, "Sweep JSON (parameter pointer + values)")->required();
  add_common(sweep, opts);

  auto* replay = app.add_subcommand("replay", "Drive the model open-loop with a recorded trace");
  replay->add_option("config", config_path, "Scenario JSON")->required();
  replay->add_option("trace", trace_path, "Control trace CSV")->required();
  add_common(replay, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(config_path, opts);
    if (check->parsed()) return run_check(config_path, opts, span_depth);
    if (span->parsed()) return run_span(config_path, opts, span_depth);
    if (sweep->parsed()) return run_sweep_cmd(config_path, sweep_path, opts);
    if (replay->parsed()) return run_replay(config_path, trace_path, opts);
  } catch (const spinloop::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const spinloop::StabilityError& e) {
    std::cerr << "numerical-stability error: " << e.what() << "\n";
    return kExitStability;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
