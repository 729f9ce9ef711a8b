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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "spinloop/dynamics.hpp"

namespace spinloop {

/// Malformed or inconsistent configuration input (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string name;
  std::string description;
  int n_spins = 1;
  HamiltonianSpec drift{1};
  HamiltonianSpec desired_drift{1};
  std::vector<ControlChannel> channels;
  FeedbackKind law_kind = FeedbackKind::orbit_tracking;
  std::vector<double> gains;
  StokesTensor initial{1};
  StokesTensor desired_initial{1};
  IntegratorConfig integrator;
  std::uint64_t seed = 0;

  FeedbackLaw make_law() const;
  SpinModel make_model() const;
};

ScenarioConfig load_scenario(const std::filesystem::path& config_json);
ScenarioConfig parse_scenario(const std::string& json_text);

struct RunSummary {
  std::string name;
  double v_initial = 0.0;
  double v_final = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double norm_drift = 0.0;  // | ||~state(T)|| - ||~state(0)|| |
  SingularityReport singularity;
  RegularityReport regularity;  // desired drift vs first channel
  bool renormalized = false;
  std::vector<std::string> warnings;

  std::string to_json() const;
};

struct RunResult {
  Trajectory trajectory;
  ControlTrace trace;
  RunSummary summary;
};

/// Runs the closed loop described by the config; the singularity diagnostic
/// runs first and lands in the summary.
RunResult run_scenario(const ScenarioConfig& cfg);

/// Per-channel regularity plus the bracket-span obstruction report.
struct CheckResult {
  std::vector<RegularityReport> regularity;  // one per channel
  SpanReport span;                           // drift vs first channel
  std::string to_json(int n_spins) const;
};
CheckResult check_scenario(const ScenarioConfig& cfg, int span_depth = 20);

/// Sum of the tensor components carrying a single lambda_1 index; for three
/// spins this is the transverse magnetization signal r^{001}+r^{010}+r^{100}.
double fid(const StokesTensor& state);
std::vector<double> fid_series(const Trajectory& traj);
std::vector<double> fid_series_desired(const Trajectory& traj);

struct SweepSpec {
  /// JSON pointer into the scenario document, e.g. "/feedback/gains/0".
  std::string parameter;
  std::vector<double> values;
};
SweepSpec load_sweep(const std::filesystem::path& sweep_json);

struct SweepRow {
  double value = 0.0;
  double v_final = 0.0;
  double mean_tracking_error = 0.0;  // time-averaged V over the second half
  double sup_tracking_error = 0.0;   // sup V over the second half
  double fid_rms_error = 0.0;        // 0 when no desired trajectory
  double u_max = 0.0;
};

/// One scenario run per grid value, executed on parallel workers. The rows
/// come back in grid order regardless of scheduling.
std::vector<SweepRow> run_sweep(const std::string& scenario_json_text, const SweepSpec& sweep);

// -- file I/O ---------------------------------------------------------------

/// Columns: t, u_1..u_m, V, state components by flat index, then desired
/// components. 17 significant digits, LF endings; re-reading reproduces
/// every double bit-exactly.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Columns: t, then per channel the stage values u_m, u_m_s2..u_m_s4.
/// A plain trace (t, u_1..u_m) reads back as stage_resolved = false.
void write_trace_csv(const std::filesystem::path& path, const ControlTrace& trace);
ControlTrace read_trace_csv(const std::filesystem::path& path);

void write_sweep_csv(const std::filesystem::path& path, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows);

/// Generic matplotlib script that plots any trajectory CSV written above.
void write_plot_script(const std::filesystem::path& path);

}  // namespace spinloop
