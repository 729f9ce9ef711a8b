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

#include <complex>
#include <random>

#include <Eigen/Dense>

// Oracle helpers kept independent of the library construction paths.
namespace testutil {

// Plain Kronecker product, written out so basis tests do not lean on the
// library's own helper.
inline Eigen::MatrixXcd kron2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Random density matrix: rho = A A^dag / tr(A A^dag).
inline Eigen::MatrixXcd random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

// Partial trace down to the single spin `keep` of an n-spin density matrix.
inline Eigen::Matrix2cd partial_trace_to_spin(const Eigen::MatrixXcd& rho, int n, int keep) {
  const int dim = 1 << n;
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  const int shift = n - 1 - keep;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int rest = 0; rest < dim / 2; ++rest) {
        // interleave `rest` bits around the kept spin's bit position
        const int low = rest & ((1 << shift) - 1);
        const int high = rest >> shift;
        const int row = (high << (shift + 1)) | (a << shift) | low;
        const int col = (high << (shift + 1)) | (b << shift) | low;
        out(a, b) += rho(row, col);
      }
  return out;
}

}  // namespace testutil
