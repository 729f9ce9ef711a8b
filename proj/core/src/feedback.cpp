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

#include "spinloop/feedback.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinloop {

namespace {
constexpr double kEqualTol = 1e-9;
constexpr double kNearSingularFraction = 1e-3;
constexpr double kProductTol = 1e-9;
}  // namespace

FeedbackKind feedback_kind_from_string(const std::string& name) {
  if (name == "orbit_tracking") return FeedbackKind::orbit_tracking;
  if (name == "scalar_z") return FeedbackKind::scalar_z;
  if (name == "product_approx") return FeedbackKind::product_approx;
  throw std::invalid_argument("unknown feedback kind: " + name);
}

std::string to_string(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::orbit_tracking: return "orbit_tracking";
    case FeedbackKind::scalar_z: return "scalar_z";
    case FeedbackKind::product_approx: return "product_approx";
  }
  return "?";
}

FeedbackLaw::FeedbackLaw(FeedbackKind kind, std::vector<double> gains,
                         std::vector<ControlChannel> channels)
    : kind_(kind), gains_(std::move(gains)), channels_(std::move(channels)) {
  if (channels_.empty()) throw std::invalid_argument("feedback law needs at least one channel");
  if (gains_.size() != channels_.size())
    throw std::invalid_argument("one gain per channel required");
  for (double k : gains_)
    if (!(k > 0.0)) throw std::invalid_argument("feedback gains must be positive");
  const int n = channels_.front().spec.n_spins();
  for (const auto& ch : channels_)
    if (ch.spec.n_spins() != n) throw std::invalid_argument("channel spin counts differ");
  if (kind_ == FeedbackKind::scalar_z && (n != 1 || channels_.size() != 1))
    throw std::invalid_argument("scalar_z law is single-spin, single-channel");
  generators_.reserve(channels_.size());
  for (const auto& ch : channels_) generators_.push_back(generator(ch.spec));
}

Eigen::VectorXd FeedbackLaw::control(const StokesTensor& desired, const StokesTensor& state) const {
  const int n = n_spins();
  if (desired.n_spins() != n || state.n_spins() != n)
    throw std::invalid_argument("feedback: spin count mismatch");
  Eigen::VectorXd u(static_cast<Eigen::Index>(channels_.size()));

  if (kind_ == FeedbackKind::scalar_z) {
    u[0] = gains_[0] * state[2] * (desired[3] - state[3]);
    return u;
  }

  const Eigen::VectorXd* plant = &state.components();
  Eigen::VectorXd approx;
  if (kind_ == FeedbackKind::product_approx) {
    std::vector<SingleSpinBloch> factors;
    factors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) factors.push_back(reduced_state(state, i));
    approx = product_state(factors).components();
    plant = &approx;
  }
  for (std::size_t m = 0; m < channels_.size(); ++m) {
    u[static_cast<Eigen::Index>(m)] =
        gains_[m] * desired.components().dot(generators_[m].matrix() * (*plant));
  }
  return u;
}

Eigen::VectorXd FeedbackLaw::control_bounds(const StokesTensor& desired,
                                            const StokesTensor& state) const {
  const double nd = traceless_norm(desired);
  const double ns = traceless_norm(state);
  Eigen::VectorXd bounds(static_cast<Eigen::Index>(channels_.size()));
  for (std::size_t m = 0; m < channels_.size(); ++m) {
    bounds[static_cast<Eigen::Index>(m)] =
        kind_ == FeedbackKind::scalar_z
            ? gains_[m] * ns * (nd + ns)
            : gains_[m] * nd * generators_[m].spectral_norm() * ns;
  }
  return bounds;
}

LyapunovRate lyapunov_rate_components(const StokesTensor& desired, const StokesTensor& state,
                                      const Generator& mismatch_generator, const FeedbackLaw& law) {
  LyapunovRate rate;
  rate.disturbance_term = desired.components().dot(mismatch_generator.matrix() * state.components());
  const Eigen::VectorXd u = law.control(desired, state);
  const auto& gens = law.channel_generators();
  for (std::size_t m = 0; m < gens.size(); ++m) {
    rate.damping_term -= u[static_cast<Eigen::Index>(m)] *
                         desired.components().dot(gens[m].matrix() * state.components());
  }
  return rate;
}

SingularityReport singularity_diagnostic(const StokesTensor& state0, const StokesTensor& desired0) {
  if (state0.n_spins() != desired0.n_spins())
    throw std::invalid_argument("singularity_diagnostic: spin count mismatch");
  const int n = state0.n_spins();
  SingularityReport report;
  report.equatorial_pair.resize(static_cast<std::size_t>(n), false);
  report.non_product_input =
      product_defect(state0) > kProductTol || product_defect(desired0) > kProductTol;

  bool all_antipodal = true;
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const SingleSpinBloch r = reduced_state(state0, i);
    const SingleSpinBloch rd = reduced_state(desired0, i);
    const double antipodal_gap = (r.components.tail<3>() + rd.components.tail<3>()).norm();
    const double scale = std::max(rd.traceless_norm(), 1e-300);
    if (antipodal_gap > kEqualTol * std::max(1.0, scale)) all_antipodal = false;
    report.equatorial_pair[static_cast<std::size_t>(i)] =
        std::abs(r.components[3]) < kEqualTol && std::abs(rd.components[3]) < kEqualTol;
    margin = std::min(margin, std::max(std::abs(rd.components[3]), antipodal_gap));
  }
  report.antipodal_product = all_antipodal;
  report.near_singular_margin = margin;
  report.near_singular = margin < kNearSingularFraction * traceless_norm(desired0);
  return report;
}

}  // namespace spinloop
