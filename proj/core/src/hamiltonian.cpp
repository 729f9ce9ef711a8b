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

#include "spinloop/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinloop {

HamiltonianSpec::HamiltonianSpec(int n_spins) : n_spins_(n_spins) {
  basis_size(n_spins);  // validates the range
}

HamiltonianSpec& HamiltonianSpec::add(std::span<const int> indices, double coeff) {
  if (static_cast<int>(indices.size()) != n_spins_)
    throw std::invalid_argument("term index count does not match spin count");
  return add_flat(label_to_flat(indices), coeff);
}

HamiltonianSpec& HamiltonianSpec::add(std::initializer_list<int> indices, double coeff) {
  return add(std::span<const int>(indices.begin(), indices.size()), coeff);
}

HamiltonianSpec& HamiltonianSpec::add_flat(std::size_t flat, double coeff) {
  if (flat >= basis_size(n_spins_)) throw std::invalid_argument("term label out of range");
  if (flat == 0) throw std::invalid_argument("the all-identity label carries no dynamics");
  if (!std::isfinite(coeff)) throw std::invalid_argument("non-finite Hamiltonian coefficient");
  if (coeff == 0.0) return *this;
  auto [it, inserted] = terms_.try_emplace(flat, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
  return *this;
}

double HamiltonianSpec::coeff(std::span<const int> indices) const {
  return coeff_flat(label_to_flat(indices));
}

double HamiltonianSpec::coeff_flat(std::size_t flat) const {
  auto it = terms_.find(flat);
  return it == terms_.end() ? 0.0 : it->second;
}

Eigen::VectorXd HamiltonianSpec::coefficient_vector() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_size(n_spins_)));
  for (const auto& [flat, h] : terms_) v[static_cast<Eigen::Index>(flat)] = h;
  return v;
}

OperatorMatrix HamiltonianSpec::matrix() const {
  const auto& basis = build_basis(n_spins_);
  const Eigen::Index dim = Eigen::Index{1} << n_spins_;
  OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
  for (const auto& [flat, h] : terms_) m += h * basis[flat];
  return m;
}

HamiltonianSpec& HamiltonianSpec::operator+=(const HamiltonianSpec& other) {
  if (other.n_spins_ != n_spins_) throw std::invalid_argument("spin count mismatch");
  for (const auto& [flat, h] : other.terms_) add_flat(flat, h);
  return *this;
}

HamiltonianSpec& HamiltonianSpec::operator-=(const HamiltonianSpec& other) {
  if (other.n_spins_ != n_spins_) throw std::invalid_argument("spin count mismatch");
  for (const auto& [flat, h] : other.terms_) add_flat(flat, -h);
  return *this;
}

HamiltonianSpec& HamiltonianSpec::operator*=(double scale) {
  if (!std::isfinite(scale)) throw std::invalid_argument("non-finite scale");
  if (scale == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [flat, h] : terms_) h *= scale;
  return *this;
}

ControlChannel::ControlChannel(HamiltonianSpec spec_in, std::string name_in)
    : spec(std::move(spec_in)), name(std::move(name_in)) {
  for (const auto& [flat, h] : spec.terms()) {
    const auto indices = flat_to_label(spec.n_spins(), flat);
    int transverse = 0;
    for (int j : indices) {
      if (j == 3) throw std::invalid_argument("control channel term on a longitudinal axis");
      if (j != 0) ++transverse;
    }
    if (transverse != 1)
      throw std::invalid_argument("control channel terms must be single-spin transverse");
  }
}

HamiltonianSpec ising_chain(int n_spins, std::span<const double> offsets,
                            std::span<const double> couplings) {
  if (static_cast<int>(offsets.size()) != n_spins)
    throw std::invalid_argument("ising_chain: offsets must have one entry per spin");
  if (static_cast<int>(couplings.size()) != n_spins - 1)
    throw std::invalid_argument("ising_chain: couplings must have one entry per adjacent pair");
  HamiltonianSpec spec(n_spins);
  std::vector<int> idx(static_cast<std::size_t>(n_spins), 0);
  for (int i = 0; i < n_spins; ++i) {
    idx.assign(static_cast<std::size_t>(n_spins), 0);
    idx[static_cast<std::size_t>(i)] = 3;
    spec.add(idx, offsets[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i + 1 < n_spins; ++i) {
    idx.assign(static_cast<std::size_t>(n_spins), 0);
    idx[static_cast<std::size_t>(i)] = 3;
    idx[static_cast<std::size_t>(i) + 1] = 3;
    spec.add(idx, couplings[static_cast<std::size_t>(i)]);
  }
  return spec;
}

HamiltonianSpec dipole_pair(int n_spins, int i, int j, double omega) {
  if (i == j) throw std::invalid_argument("dipole_pair: spin indices must differ");
  if (i < 0 || j < 0 || i >= n_spins || j >= n_spins)
    throw std::invalid_argument("dipole_pair: spin index out of range");
  HamiltonianSpec spec(n_spins);
  std::vector<int> idx(static_cast<std::size_t>(n_spins), 0);
  for (int axis = 1; axis <= 3; ++axis) {
    idx.assign(static_cast<std::size_t>(n_spins), 0);
    idx[static_cast<std::size_t>(i)] = axis;
    idx[static_cast<std::size_t>(j)] = axis;
    spec.add(idx, axis == 3 ? 2.0 * omega : -omega);
  }
  return spec;
}

ControlChannel nonselective_channel(int n_spins, int phase_axis) {
  if (phase_axis != 1 && phase_axis != 2)
    throw std::invalid_argument("nonselective_channel: phase axis must be 1 or 2");
  HamiltonianSpec spec(n_spins);
  std::vector<int> idx;
  for (int i = 0; i < n_spins; ++i) {
    idx.assign(static_cast<std::size_t>(n_spins), 0);
    idx[static_cast<std::size_t>(i)] = phase_axis;
    spec.add(idx, 1.0);
  }
  return ControlChannel(std::move(spec), phase_axis == 1 ? "x-nonselective" : "y-nonselective");
}

std::vector<ControlChannel> selective_channels(int n_spins) {
  std::vector<ControlChannel> channels;
  channels.reserve(static_cast<std::size_t>(n_spins));
  std::vector<int> idx;
  for (int i = 0; i < n_spins; ++i) {
    idx.assign(static_cast<std::size_t>(n_spins), 0);
    idx[static_cast<std::size_t>(i)] = 1;
    HamiltonianSpec spec(n_spins);
    spec.add(idx, 1.0);
    channels.emplace_back(std::move(spec), "x-spin" + std::to_string(i));
  }
  return channels;
}

bool two_spin_ising_regular(double h03, double h30, double h33) {
  const double half_gap = (h03 - h30) / 2.0;
  return h03 != h30 && h33 != 0.0 && h33 != half_gap && h33 != -half_gap;
}

RegularityReport strong_regularity(const HamiltonianSpec& drift, const ControlChannel& channel) {
  if (drift.n_spins() != channel.spec.n_spins())
    throw std::invalid_argument("strong_regularity: spin count mismatch");
  const int n = drift.n_spins();
  const Eigen::Index dim = Eigen::Index{1} << n;
  const OperatorMatrix hf = drift.matrix();
  const OperatorMatrix hc = channel.spec.matrix();
  // Levels in h units: the normalized basis scales matrix entries by 2^{-n/2}.
  const double unit_scale = std::pow(2.0, 0.5 * n);

  RegularityReport report;
  Eigen::VectorXd levels(dim);
  OperatorMatrix hc_eig;

  const double off_diag = (hf - OperatorMatrix(hf.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (off_diag < 1e-12) {
    // Diagonal drift: keep the computational-basis order so transition
    // labels are reproducible.
    levels = hf.diagonal().real() * unit_scale;
    hc_eig = hc;
  } else {
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(hf);
    levels = solver.eigenvalues() * unit_scale;
    hc_eig = solver.eigenvectors().adjoint() * hc * solver.eigenvectors();
  }

  report.energy_levels.assign(levels.data(), levels.data() + dim);
  const double level_scale = std::max(levels.cwiseAbs().maxCoeff(), 1e-300);
  report.tolerance = 1e-9 * level_scale;

  const double hc_scale = std::max(hc_eig.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j)
      if (std::abs(hc_eig(i, j)) > 1e-12 * hc_scale)
        report.transition_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

  report.min_level_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j)
      report.min_level_gap = std::min(report.min_level_gap, std::abs(levels[i] - levels[j]));
  report.degenerate_levels = report.min_level_gap < report.tolerance;

  std::vector<double> freqs;
  freqs.reserve(report.transition_pairs.size());
  for (const auto& [i, j] : report.transition_pairs) freqs.push_back(std::abs(levels[i] - levels[j]));
  report.min_transition_gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < freqs.size(); ++a)
    for (std::size_t b = a + 1; b < freqs.size(); ++b)
      report.min_transition_gap = std::min(report.min_transition_gap, std::abs(freqs[a] - freqs[b]));
  report.degenerate_transitions = report.min_transition_gap < report.tolerance;

  // Connectivity of the transition graph over the 2^n levels.
  std::vector<int> component(static_cast<std::size_t>(dim), -1);
  std::vector<int> stack{0};
  component[0] = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [i, j] : report.transition_pairs) {
      const int w = (i == v) ? j : (j == v) ? i : -1;
      if (w >= 0 && component[static_cast<std::size_t>(w)] < 0) {
        component[static_cast<std::size_t>(w)] = 0;
        stack.push_back(w);
      }
    }
  }
  report.connected = std::all_of(component.begin(), component.end(), [](int c) { return c == 0; });

  report.strongly_regular = !report.degenerate_levels && !report.degenerate_transitions;
  return report;
}

}  // namespace spinloop
