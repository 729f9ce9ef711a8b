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

#include "spinloop/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinloop {

namespace {

constexpr double kStabilityLimit = 0.10;
constexpr double kStabilityWarn = 0.05;
constexpr double kNormMatchTol = 1e-9;

long step_count(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrator dt must be positive");
  if (!(cfg.t_final >= 0.0)) throw std::invalid_argument("integrator horizon must be >= 0");
  if (cfg.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  return std::lround(cfg.t_final / cfg.dt);
}

void check_stability(double spectral_sum, const IntegratorConfig& cfg,
                     std::vector<std::string>& warnings) {
  const double product = cfg.dt * spectral_sum;
  if (product > kStabilityLimit) {
    throw StabilityError("dt * generator spectral radius = " + std::to_string(product) +
                         " exceeds the RK4 stability bound 0.1; reduce dt");
  }
  if (product > kStabilityWarn) {
    warnings.push_back("dt * generator spectral radius = " + std::to_string(product) +
                       " above the 0.05 comfort threshold");
  }
}

}  // namespace

ControlTrace::ControlTrace(double dt, int channels, bool stage_resolved)
    : dt_(dt), channels_(channels), stage_resolved_(stage_resolved) {
  if (!(dt > 0.0)) throw std::invalid_argument("trace dt must be positive");
  if (channels < 1) throw std::invalid_argument("trace needs at least one channel");
}

void ControlTrace::append_step(const Eigen::VectorXd& u1, const Eigen::VectorXd& u2,
                               const Eigen::VectorXd& u3, const Eigen::VectorXd& u4) {
  if (!stage_resolved_) throw std::logic_error("appending stages to a plain trace");
  for (const auto* u : {&u1, &u2, &u3, &u4}) {
    if (u->size() != channels_) throw std::invalid_argument("trace channel count mismatch");
    values_.insert(values_.end(), u->data(), u->data() + u->size());
  }
  ++steps_;
}

void ControlTrace::append_step(const Eigen::VectorXd& u) {
  if (stage_resolved_) throw std::logic_error("appending a plain sample to a stage trace");
  if (u.size() != channels_) throw std::invalid_argument("trace channel count mismatch");
  for (int stage = 0; stage < 4; ++stage)
    values_.insert(values_.end(), u.data(), u.data() + u.size());
  ++steps_;
}

double ControlTrace::value(std::size_t step, int stage, int channel) const {
  return values_.at((step * 4 + static_cast<std::size_t>(stage)) * static_cast<std::size_t>(channels_) +
                    static_cast<std::size_t>(channel));
}

Eigen::VectorXd ControlTrace::stage_values(std::size_t step, int stage) const {
  Eigen::VectorXd u(channels_);
  for (int c = 0; c < channels_; ++c) u[c] = value(step, stage, c);
  return u;
}

double ControlTrace::max_abs_value() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::MatrixXd drift_propagator(const HamiltonianSpec& drift, double t) {
  const Generator g = generator(drift);
  return (g.matrix() * t).exp();
}

Trajectory simulate_reference(const StokesTensor& desired0, const HamiltonianSpec& desired_drift,
                              const IntegratorConfig& cfg) {
  if (desired0.n_spins() != desired_drift.n_spins())
    throw std::invalid_argument("simulate_reference: spin count mismatch");
  const long steps = step_count(cfg);
  const double sample_dt = cfg.dt * cfg.record_every;
  const Eigen::MatrixXd propagator = drift_propagator(desired_drift, sample_dt);

  Trajectory traj;
  traj.n_spins = desired0.n_spins();
  Eigen::VectorXd x = desired0.components();
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(x);
  for (long i = cfg.record_every; i <= steps; i += cfg.record_every) {
    x = propagator * x;
    t = cfg.dt * static_cast<double>(i);
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

Trajectory simulate_closed_loop(const SpinModel& model, const FeedbackLaw& law,
                                const StokesTensor& state0, const StokesTensor& desired0,
                                const HamiltonianSpec& desired_drift, const IntegratorConfig& cfg,
                                ControlTrace* trace) {
  const int n = model.drift.n_spins();
  if (state0.n_spins() != n || desired0.n_spins() != n || desired_drift.n_spins() != n ||
      law.n_spins() != n)
    throw std::invalid_argument("simulate_closed_loop: spin count mismatch");

  Trajectory traj;
  traj.n_spins = n;
  traj.renormalized = cfg.renormalize;

  const double norm0 = traceless_norm(state0);
  const double norm0_desired = traceless_norm(desired0);
  if (std::abs(norm0 - norm0_desired) > kNormMatchTol * std::max(1.0, norm0_desired)) {
    traj.warnings.push_back("initial traceless norms differ (" + std::to_string(norm0) + " vs " +
                            std::to_string(norm0_desired) + "); exact tracking is unreachable");
  }

  const Generator gf = generator(model.drift);
  const Generator gfd = generator(desired_drift);
  const auto& channel_gens = law.channel_generators();
  const std::size_t m = law.channel_count();

  double spectral_sum = gf.spectral_norm();
  {
    const Eigen::VectorXd bounds = law.control_bounds(desired0, state0);
    for (std::size_t c = 0; c < m; ++c)
      spectral_sum += bounds[static_cast<Eigen::Index>(c)] * channel_gens[c].spectral_norm();
  }
  check_stability(spectral_sum, cfg, traj.warnings);

  const long steps = step_count(cfg);
  if (trace) *trace = ControlTrace(cfg.dt, static_cast<int>(m), true);

  Eigen::VectorXd x = state0.components();
  Eigen::VectorXd xd = desired0.components();
  const auto dim = x.size();

  auto eval_u = [&](const Eigen::VectorXd& xv, const Eigen::VectorXd& xdv) {
    return law.control(StokesTensor(n, xdv), StokesTensor(n, xv));
  };
  auto rhs = [&](const Eigen::VectorXd& xv, const Eigen::VectorXd& xdv, const Eigen::VectorXd& u,
                 Eigen::VectorXd& dx, Eigen::VectorXd& dxd) {
    dx.noalias() = gf.matrix() * xv;
    for (std::size_t c = 0; c < m; ++c)
      dx.noalias() += u[static_cast<Eigen::Index>(c)] * (channel_gens[c].matrix() * xv);
    dxd.noalias() = gfd.matrix() * xdv;
  };

  auto record_sample = [&](double t) {
    traj.times.push_back(t);
    traj.states.emplace_back(x);
    traj.desired.emplace_back(xd);
    traj.controls.emplace_back(eval_u(x, xd));
    traj.lyapunov.push_back(hs_distance(StokesTensor(n, xd), StokesTensor(n, x)));
  };
  record_sample(0.0);

  Eigen::VectorXd k1x(dim), k2x(dim), k3x(dim), k4x(dim);
  Eigen::VectorXd k1d(dim), k2d(dim), k3d(dim), k4d(dim);
  const double dt = cfg.dt;
  for (long i = 0; i < steps; ++i) {
    const Eigen::VectorXd u1 = eval_u(x, xd);
    rhs(x, xd, u1, k1x, k1d);
    const Eigen::VectorXd u2 = eval_u(x + 0.5 * dt * k1x, xd + 0.5 * dt * k1d);
    rhs(x + 0.5 * dt * k1x, xd + 0.5 * dt * k1d, u2, k2x, k2d);
    const Eigen::VectorXd u3 = eval_u(x + 0.5 * dt * k2x, xd + 0.5 * dt * k2d);
    rhs(x + 0.5 * dt * k2x, xd + 0.5 * dt * k2d, u3, k3x, k3d);
    const Eigen::VectorXd u4 = eval_u(x + dt * k3x, xd + dt * k3d);
    rhs(x + dt * k3x, xd + dt * k3d, u4, k4x, k4d);

    x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    xd += (dt / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    if (cfg.renormalize) {
      const double current = x.tail(dim - 1).norm();
      if (current > 0.0) x.tail(dim - 1) *= norm0 / current;
    }
    if (trace) trace->append_step(u1, u2, u3, u4);
    if ((i + 1) % cfg.record_every == 0) record_sample(dt * static_cast<double>(i + 1));
  }
  return traj;
}

Trajectory replay_open_loop(const SpinModel& model, const StokesTensor& state0,
                            const ControlTrace& trace, const IntegratorConfig& cfg) {
  const int n = model.drift.n_spins();
  if (state0.n_spins() != n) throw std::invalid_argument("replay_open_loop: spin count mismatch");
  if (static_cast<std::size_t>(trace.channels()) != model.channels.size())
    throw std::invalid_argument("replay_open_loop: trace channel count mismatch");
  if (trace.steps() == 0) throw std::invalid_argument("replay_open_loop: empty trace");

  IntegratorConfig local = cfg;
  if (local.t_final <= 0.0) local.t_final = trace.horizon();
  if (local.dt <= 0.0) local.dt = trace.dt();
  if (local.t_final > trace.horizon() + 0.5 * trace.dt())
    throw std::invalid_argument("replay horizon exceeds the recorded trace");

  Trajectory traj;
  traj.n_spins = n;
  const bool grid_matches = std::abs(local.dt - trace.dt()) <= 1e-12 * trace.dt();
  const bool exact = grid_matches && trace.stage_resolved();
  traj.resampled_zoh = !exact;
  if (!exact)
    traj.warnings.push_back("trace resampled with zero-order hold onto the integration grid");

  const Generator gf = generator(model.drift);
  std::vector<Generator> channel_gens;
  channel_gens.reserve(model.channels.size());
  for (const auto& ch : model.channels) channel_gens.push_back(generator(ch.spec));

  double spectral_sum = gf.spectral_norm();
  for (const auto& g : channel_gens) spectral_sum += trace.max_abs_value() * g.spectral_norm();
  check_stability(spectral_sum, local, traj.warnings);

  const long steps = step_count(local);
  Eigen::VectorXd x = state0.components();
  const auto dim = x.size();

  auto rhs = [&](const Eigen::VectorXd& xv, const Eigen::VectorXd& u, Eigen::VectorXd& dx) {
    dx.noalias() = gf.matrix() * xv;
    for (std::size_t c = 0; c < channel_gens.size(); ++c)
      dx.noalias() += u[static_cast<Eigen::Index>(c)] * (channel_gens[c].matrix() * xv);
  };
  const double dt = local.dt;
  auto u_for = [&](long step, int stage) -> Eigen::VectorXd {
    if (exact)
      return trace.stage_values(std::min(static_cast<std::size_t>(step), trace.steps() - 1), stage);
    // zero-order hold on the trace grid, evaluated at the stage time
    const double t =
        dt * static_cast<double>(step) + (stage == 3 ? dt : stage >= 1 ? 0.5 * dt : 0.0);
    const auto cell = static_cast<std::size_t>(std::floor(t / trace.dt() + 1e-12));
    return trace.stage_values(std::min(cell, trace.steps() - 1), 0);
  };

  traj.times.push_back(0.0);
  traj.states.emplace_back(x);
  traj.controls.emplace_back(u_for(0, 0));

  Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim);
  for (long i = 0; i < steps; ++i) {
    rhs(x, u_for(i, 0), k1);
    rhs(x + 0.5 * dt * k1, u_for(i, 1), k2);
    rhs(x + 0.5 * dt * k2, u_for(i, 2), k3);
    rhs(x + dt * k3, u_for(i, 3), k4);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((i + 1) % local.record_every == 0) {
      traj.times.push_back(dt * static_cast<double>(i + 1));
      traj.states.emplace_back(x);
      traj.controls.emplace_back(u_for(std::min(i + 1, steps - 1), 0));
    }
  }
  return traj;
}

}  // namespace spinloop
