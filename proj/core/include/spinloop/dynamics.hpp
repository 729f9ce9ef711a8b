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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinloop/feedback.hpp"

namespace spinloop {

/// Violation of the fixed-step stability bound dt * rho <= 0.1.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegratorConfig {
  double dt = 1e-3;          // step (s)
  double t_final = 1.0;      // horizon (s)
  int record_every = 1;      // sample stride in steps
  bool renormalize = false;  // rescale ||~state|| to its initial value each step
};

struct SpinModel {
  HamiltonianSpec drift;
  std::vector<ControlChannel> channels;
};

/// Time-indexed record of a run. All vectors have equal length; desired,
/// controls and lyapunov are populated only where meaningful.
struct Trajectory {
  int n_spins = 0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> desired;
  std::vector<Eigen::VectorXd> controls;
  std::vector<double> lyapunov;
  bool renormalized = false;
  bool resampled_zoh = false;
  std::vector<std::string> warnings;

  std::size_t samples() const { return times.size(); }
  bool has_desired() const { return !desired.empty(); }
  /// Tracking error view e = desired - state at a sample.
  Eigen::VectorXd error(std::size_t i) const { return desired.at(i) - states.at(i); }
};

/// Control values recorded at every RK4 stage of every step, so a replay can
/// rerun the exact same update without re-evaluating any feedback.
/// Layout: value(step, stage, channel), stages 0..3 at t, t+dt/2, t+dt/2, t+dt.
class ControlTrace {
 public:
  ControlTrace() = default;
  ControlTrace(double dt, int channels, bool stage_resolved);

  double dt() const { return dt_; }
  int channels() const { return channels_; }
  bool stage_resolved() const { return stage_resolved_; }
  std::size_t steps() const { return steps_; }
  double horizon() const { return dt_ * static_cast<double>(steps_); }

  void append_step(const Eigen::VectorXd& u1, const Eigen::VectorXd& u2,
                   const Eigen::VectorXd& u3, const Eigen::VectorXd& u4);
  /// Plain sampled trace: one value per step, held across stages.
  void append_step(const Eigen::VectorXd& u);

  double value(std::size_t step, int stage, int channel) const;
  Eigen::VectorXd stage_values(std::size_t step, int stage) const;
  double max_abs_value() const;

 private:
  double dt_ = 0.0;
  int channels_ = 0;
  bool stage_resolved_ = false;
  std::size_t steps_ = 0;
  std::vector<double> values_;  // [step][stage][channel]
};

/// Orthogonal flow matrix exp(G t) of the drift generator, computed with a
/// single dense scaling-and-squaring exponential. For commuting drifts the
/// factorized product of per-term exponentials is equal; that identity is a
/// test, not the construction.
Eigen::MatrixXd drift_propagator(const HamiltonianSpec& drift, double t);

/// Reference orbit advanced by the exact propagator sampled on the record
/// grid; the traceless norm is conserved to machine precision.
Trajectory simulate_reference(const StokesTensor& desired0, const HamiltonianSpec& desired_drift,
                              const IntegratorConfig& cfg);

/// Coupled closed loop: classical RK4 advancing (state, desired) together,
/// with the feedback re-evaluated at each stage. Records the published
/// control and V at each sample; optionally records the stage-resolved
/// control trace for later open-loop replay.
Trajectory simulate_closed_loop(const SpinModel& model, const FeedbackLaw& law,
                                const StokesTensor& state0, const StokesTensor& desired0,
                                const HamiltonianSpec& desired_drift, const IntegratorConfig& cfg,
                                ControlTrace* trace = nullptr);

/// Drives the model with a recorded control trace, no feedback evaluation.
/// A stage-resolved trace on a matching grid replays the closed-loop update
/// exactly; otherwise the trace is held zero-order and the trajectory is
/// flagged resampled_zoh. cfg.t_final <= 0 means the full trace horizon.
Trajectory replay_open_loop(const SpinModel& model, const StokesTensor& state0,
                            const ControlTrace& trace, const IntegratorConfig& cfg);

}  // namespace spinloop
