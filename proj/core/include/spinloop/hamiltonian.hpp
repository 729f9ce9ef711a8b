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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinloop/basis.hpp"

namespace spinloop {

/// Sparse real coefficient map over the product-operator basis. Coefficients
/// are angular frequencies (rad/s). The all-identity label is excluded: a
/// trace term never enters the dynamics.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(int n_spins);

  int n_spins() const { return n_spins_; }
  const std::map<std::size_t, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Accumulates coeff onto the given label; exact zeros are dropped.
  HamiltonianSpec& add(std::span<const int> indices, double coeff);
  HamiltonianSpec& add(std::initializer_list<int> indices, double coeff);
  HamiltonianSpec& add_flat(std::size_t flat, double coeff);

  double coeff(std::span<const int> indices) const;
  double coeff_flat(std::size_t flat) const;

  /// Real coefficient vector of length 4^n (zero on the identity slot).
  Eigen::VectorXd coefficient_vector() const;

  /// Dense Hermitian matrix sum h^mu Lambda_mu of size 2^n.
  OperatorMatrix matrix() const;

  HamiltonianSpec& operator+=(const HamiltonianSpec& other);
  HamiltonianSpec& operator-=(const HamiltonianSpec& other);
  HamiltonianSpec& operator*=(double scale);
  friend HamiltonianSpec operator+(HamiltonianSpec a, const HamiltonianSpec& b) { return a += b; }
  friend HamiltonianSpec operator-(HamiltonianSpec a, const HamiltonianSpec& b) { return a -= b; }

 private:
  int n_spins_;
  std::map<std::size_t, double> terms_;
};

/// A single rf control direction: a sum of single-spin transverse terms
/// (exactly one non-identity slot, axis 1 or 2).
struct ControlChannel {
  HamiltonianSpec spec;
  std::string name;

  ControlChannel(HamiltonianSpec spec, std::string name);
};

/// Linear chain: local lambda_3 offsets plus adjacent lambda_3-lambda_3
/// couplings. offsets.size() == n, couplings.size() == n-1.
HamiltonianSpec ising_chain(int n_spins, std::span<const double> offsets,
                            std::span<const double> couplings);

/// Dipole-dipole pair between spins i and j (0-based):
///   -omega * (L_11 + L_22 - 2 L_33) on the (i, j) slots.
HamiltonianSpec dipole_pair(int n_spins, int i, int j, double omega);

/// Common rf field seen by every spin along the given transverse axis (1 or 2).
ControlChannel nonselective_channel(int n_spins, int phase_axis = 1);

/// One independently addressable lambda_1 channel per spin.
std::vector<ControlChannel> selective_channels(int n_spins);

/// Closed-form regularity conditions for the two-spin Ising drift with the
/// nonselective channel: h03 != h30, h33 != 0, h33 != +/-(h03 - h30)/2.
bool two_spin_ising_regular(double h03, double h30, double h33);

struct RegularityReport {
  /// Energy levels in the same units as the h coefficients. For diagonal
  /// drifts the computational-basis order is kept so transition labels are
  /// reproducible; otherwise levels are ascending.
  std::vector<double> energy_levels;
  /// Level pairs connected by the control Hamiltonian (i < j, 0-based).
  std::vector<std::pair<int, int>> transition_pairs;
  bool degenerate_levels = false;
  bool degenerate_transitions = false;
  bool connected = false;
  bool strongly_regular = false;
  /// Smallest gap between any two levels / any two transition frequencies,
  /// before tolerance comparison. Useful for excluding marginal samples.
  double min_level_gap = 0.0;
  double min_transition_gap = 0.0;
  double tolerance = 0.0;
};

/// Spectral diagnostics of the drift against a control channel's graph.
/// strongly_regular == no degenerate levels and no repeated |transition|
/// frequencies over the channel-connected pairs (tolerance 1e-9 * scale).
RegularityReport strong_regularity(const HamiltonianSpec& drift, const ControlChannel& channel);

}  // namespace spinloop
