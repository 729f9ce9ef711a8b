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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinloop {

/// Dense matrices stay manageable up to five spins (1024 x 1024 generators).
inline constexpr int kMaxSpins = 5;

using OperatorMatrix = Eigen::MatrixXcd;

/// Multi-index of a product-operator basis element. Each per-spin index is
/// in {0,1,2,3} (0 = scaled identity, 1..3 = scaled Pauli axes); the flat
/// index orders labels with the first spin most significant.
struct BasisLabel {
  std::vector<int> indices;
  std::size_t flat_index = 0;

  static BasisLabel from_indices(std::span<const int> indices);
  static BasisLabel from_flat(int n_spins, std::size_t flat);

  int n_spins() const { return static_cast<int>(indices.size()); }
  bool operator==(const BasisLabel& other) const = default;
};

std::size_t label_to_flat(std::span<const int> indices);
std::vector<int> flat_to_label(int n_spins, std::size_t flat);

/// Number of basis elements (4^n). Throws if n is outside [1, kMaxSpins].
std::size_t basis_size(int n_spins);

/// The four single-spin basis matrices, normalized so tr(l_j l_k) = delta_jk
/// (l_0 = I/sqrt(2), l_j = sigma_j/sqrt(2)).
const std::array<Eigen::Matrix2cd, 4>& single_spin_basis();

/// Full n-spin product-operator basis, ordered by flat index. The result is
/// cached per n and immutable; callers may hold the reference indefinitely.
const std::vector<OperatorMatrix>& build_basis(int n_spins);

/// su(2) structure constants in the normalized basis:
///   [l_j, l_k] = sum_l c(l,j,k) l_l      (c purely imaginary, antisymmetric)
///   {l_j, l_k} = sum_l s(l,j,k) l_l      (s real, symmetric)
class StructureTensors {
 public:
  std::complex<double> c(int l, int j, int k) const { return c_[idx(l, j, k)]; }
  double s(int l, int j, int k) const { return s_[idx(l, j, k)]; }

  /// 4x4 matrix of the commutator action ad_{l_j}: (ad_j)_{l,k} = c(l,j,k).
  Eigen::Matrix4cd ad(int j) const;
  /// 4x4 matrix of the anticommutator action aad_{l_j}: (aad_j)_{l,k} = s(l,j,k).
  Eigen::Matrix4d aad(int j) const;

 private:
  friend const StructureTensors& structure_tensors();
  StructureTensors();
  static std::size_t idx(int l, int j, int k) {
    return static_cast<std::size_t>(l) * 16 + static_cast<std::size_t>(j) * 4 +
           static_cast<std::size_t>(k);
  }
  std::array<std::complex<double>, 64> c_{};
  std::array<double, 64> s_{};
};

const StructureTensors& structure_tensors();

/// Kronecker product helper used across the basis and state modules.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
Eigen::MatrixXd kron_real(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace spinloop
