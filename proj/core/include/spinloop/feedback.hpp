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

#include <string>
#include <vector>

#include "spinloop/generator.hpp"
#include "spinloop/state.hpp"

namespace spinloop {

enum class FeedbackKind {
  /// u_m = k_m <desired, G_{c,m} state>, one value per channel.
  orbit_tracking,
  /// Single-spin scalar law u = k r^2 (r^3_d - r^3).
  scalar_z,
  /// Orbit tracking evaluated on the product of the state's reductions,
  /// i.e. feedback from per-spin measurements only.
  product_approx,
};

FeedbackKind feedback_kind_from_string(const std::string& name);
std::string to_string(FeedbackKind kind);

class FeedbackLaw {
 public:
  /// Gains must be positive, one per channel. Channel generators are built
  /// once here and shared by every closed-loop evaluation.
  FeedbackLaw(FeedbackKind kind, std::vector<double> gains, std::vector<ControlChannel> channels);

  FeedbackKind kind() const { return kind_; }
  const std::vector<double>& gains() const { return gains_; }
  const std::vector<ControlChannel>& channels() const { return channels_; }
  const std::vector<Generator>& channel_generators() const { return generators_; }
  int n_spins() const { return channels_.front().spec.n_spins(); }
  std::size_t channel_count() const { return channels_.size(); }

  /// Per-channel control values for the given desired/true pair.
  Eigen::VectorXd control(const StokesTensor& desired, const StokesTensor& state) const;

  /// Conservative per-channel bound on |u_m| over the whole run (norms are
  /// conserved), used for integrator stability estimates.
  Eigen::VectorXd control_bounds(const StokesTensor& desired, const StokesTensor& state) const;

 private:
  FeedbackKind kind_;
  std::vector<double> gains_;
  std::vector<ControlChannel> channels_;
  std::vector<Generator> generators_;
};

struct LyapunovRate {
  /// <desired, G_delta state>: sign-indefinite drive from the Hamiltonian
  /// mismatch delta = desired_drift - drift.
  double disturbance_term = 0.0;
  /// -sum_m u_m <desired, G_{c,m} state>; equals -sum u_m^2/k_m for the
  /// orbit-tracking law.
  double damping_term = 0.0;

  double total() const { return disturbance_term + damping_term; }
};

LyapunovRate lyapunov_rate_components(const StokesTensor& desired, const StokesTensor& state,
                                      const Generator& mismatch_generator, const FeedbackLaw& law);

struct SingularityReport {
  /// Every reduced traceless part is the negative of its desired partner.
  bool antipodal_product = false;
  /// Per spin: both r^3 and r^3_d vanish (horizontal great circles).
  std::vector<bool> equatorial_pair;
  /// min over spins of max(|r^3_d|, || ~r + ~r_d ||).
  double near_singular_margin = 0.0;
  /// margin < 1e-3 * ||~desired||: convergence may be very slow.
  bool near_singular = false;
  /// Inputs were not product states; reductions were used anyway.
  bool non_product_input = false;
};

/// Flags initial pairs on or near the sets where the feedback vanishes
/// identically (antipodal product states, equatorial pairs). Simulations
/// proceed regardless; the report is advisory.
SingularityReport singularity_diagnostic(const StokesTensor& state0, const StokesTensor& desired0);

}  // namespace spinloop
