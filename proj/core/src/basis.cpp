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

#include "spinloop/basis.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

namespace spinloop {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_spin_count(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw std::invalid_argument("spin count " + std::to_string(n_spins) +
                                " outside supported range [1, " + std::to_string(kMaxSpins) +
                                "] (dense 4^n storage)");
  }
}

}  // namespace

std::size_t basis_size(int n_spins) {
  check_spin_count(n_spins);
  return std::size_t{1} << (2 * n_spins);
}

std::size_t label_to_flat(std::span<const int> indices) {
  if (indices.empty()) throw std::invalid_argument("empty basis label");
  std::size_t flat = 0;
  for (int j : indices) {
    if (j < 0 || j > 3) throw std::invalid_argument("basis index out of {0,1,2,3}");
    flat = flat * 4 + static_cast<std::size_t>(j);
  }
  return flat;
}

std::vector<int> flat_to_label(int n_spins, std::size_t flat) {
  if (flat >= basis_size(n_spins)) throw std::invalid_argument("flat index out of range");
  std::vector<int> indices(static_cast<std::size_t>(n_spins));
  for (int i = n_spins - 1; i >= 0; --i) {
    indices[static_cast<std::size_t>(i)] = static_cast<int>(flat % 4);
    flat /= 4;
  }
  return indices;
}

BasisLabel BasisLabel::from_indices(std::span<const int> indices) {
  BasisLabel label;
  label.indices.assign(indices.begin(), indices.end());
  label.flat_index = label_to_flat(indices);
  return label;
}

BasisLabel BasisLabel::from_flat(int n_spins, std::size_t flat) {
  BasisLabel label;
  label.indices = flat_to_label(n_spins, flat);
  label.flat_index = flat;
  return label;
}

const std::array<Eigen::Matrix2cd, 4>& single_spin_basis() {
  static const std::array<Eigen::Matrix2cd, 4> basis = [] {
    using namespace std::complex_literals;
    std::array<Eigen::Matrix2cd, 4> b;
    b[0] << 1, 0, 0, 1;
    b[1] << 0, 1, 1, 0;
    b[2] << 0, -1i, 1i, 0;
    b[3] << 1, 0, 0, -1;
    for (auto& m : b) m *= kInvSqrt2;
    return b;
  }();
  return basis;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd kron_real(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

const std::vector<OperatorMatrix>& build_basis(int n_spins) {
  check_spin_count(n_spins);
  static std::array<std::vector<OperatorMatrix>, kMaxSpins + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(n_spins)];
  if (!slot.empty()) return slot;

  const auto& single = single_spin_basis();
  const std::size_t count = basis_size(n_spins);
  slot.reserve(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    const auto indices = flat_to_label(n_spins, flat);
    OperatorMatrix m = single[static_cast<std::size_t>(indices[0])];
    for (int i = 1; i < n_spins; ++i) {
      m = kron(m, single[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])]);
    }
    slot.push_back(std::move(m));
  }
  return slot;
}

StructureTensors::StructureTensors() {
  const auto& b = single_spin_basis();
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const Eigen::Matrix2cd comm = b[j] * b[k] - b[k] * b[j];
      const Eigen::Matrix2cd anti = b[j] * b[k] + b[k] * b[j];
      for (int l = 0; l < 4; ++l) {
        c_[idx(l, j, k)] = (b[l].adjoint() * comm).trace();
        const std::complex<double> sv = (b[l].adjoint() * anti).trace();
        s_[idx(l, j, k)] = sv.real();
      }
    }
  }
}

Eigen::Matrix4cd StructureTensors::ad(int j) const {
  Eigen::Matrix4cd m;
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k) m(l, k) = c(l, j, k);
  return m;
}

Eigen::Matrix4d StructureTensors::aad(int j) const {
  Eigen::Matrix4d m;
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k) m(l, k) = s(l, j, k);
  return m;
}

const StructureTensors& structure_tensors() {
  static const StructureTensors tensors;
  return tensors;
}

}  // namespace spinloop
