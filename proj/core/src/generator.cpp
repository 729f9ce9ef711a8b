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

#include "spinloop/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace spinloop {

namespace {
constexpr double kImagTol = 1e-12;
constexpr double kRankTol = 1e-10;
constexpr double kTouchTol = 1e-12;
}  // namespace

Generator::Generator(Eigen::MatrixXd matrix, HamiltonianSpec source)
    : matrix_(std::move(matrix)), source_(std::move(source)) {
  if (matrix_.rows() != matrix_.cols() ||
      matrix_.rows() != static_cast<Eigen::Index>(basis_size(source_.n_spins())))
    throw std::invalid_argument("generator matrix size does not match spin count");
}

double Generator::spectral_norm() const {
  if (matrix_.rows() == 0) return 0.0;
  // Power iteration on G^T G; generators are small and well conditioned.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(matrix_.rows());
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    Eigen::VectorXd w = matrix_.transpose() * (matrix_ * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = nw;
    if (std::abs(next - lambda) <= 1e-12 * std::max(next, 1.0)) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(lambda);
}

Generator generator(const HamiltonianSpec& hamiltonian) {
  const int n = hamiltonian.n_spins();
  const auto& basis = build_basis(n);
  const auto count = static_cast<Eigen::Index>(basis_size(n));
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(count, count);
  if (hamiltonian.empty()) return Generator(std::move(g), hamiltonian);

  const OperatorMatrix h = hamiltonian.matrix();
  const std::complex<double> minus_i(0.0, -1.0);
  double max_imag = 0.0;
  for (Eigen::Index nu = 0; nu < count; ++nu) {
    const OperatorMatrix commutator = minus_i * (h * basis[static_cast<std::size_t>(nu)] -
                                                 basis[static_cast<std::size_t>(nu)] * h);
    for (Eigen::Index mu = 0; mu < count; ++mu) {
      // tr(A^dag C) as an elementwise sum; basis matrices are Hermitian.
      const std::complex<double> entry =
          basis[static_cast<std::size_t>(mu)].conjugate().cwiseProduct(commutator).sum();
      max_imag = std::max(max_imag, std::abs(entry.imag()));
      g(mu, nu) = entry.real();
    }
  }
  if (max_imag > kImagTol)
    throw std::runtime_error("generator projection produced non-real entries");
  return Generator(std::move(g), hamiltonian);
}

Generator tensor_generator_pair(int j, int k) {
  if (j < 0 || j > 3 || k < 0 || k > 3)
    throw std::invalid_argument("tensor_generator_pair indices must be in {0,..,3}");
  const auto& st = structure_tensors();
  const Eigen::Matrix4cd ad_j = st.ad(j);
  const Eigen::Matrix4cd ad_k = st.ad(k);
  const Eigen::Matrix4cd aad_j = st.aad(j).cast<std::complex<double>>();
  const Eigen::Matrix4cd aad_k = st.aad(k).cast<std::complex<double>>();
  const std::complex<double> minus_i(0.0, -1.0);
  const Eigen::MatrixXcd g_c = minus_i * 0.5 * (kron(ad_j, aad_k) + kron(aad_j, ad_k));
  if (g_c.imag().cwiseAbs().maxCoeff() > kImagTol)
    throw std::runtime_error("tensor generator has non-real entries");
  HamiltonianSpec source(2);
  if (!(j == 0 && k == 0)) source.add({j, k}, 1.0);
  return Generator(g_c.real(), std::move(source));
}

HamiltonianSpec hamiltonian_bracket(const HamiltonianSpec& a, const HamiltonianSpec& b) {
  if (a.n_spins() != b.n_spins())
    throw std::invalid_argument("hamiltonian_bracket: spin count mismatch");
  const int n = a.n_spins();
  const auto& basis = build_basis(n);
  const OperatorMatrix bracket =
      std::complex<double>(0.0, -1.0) * (a.matrix() * b.matrix() - b.matrix() * a.matrix());
  HamiltonianSpec out(n);
  for (std::size_t flat = 1; flat < basis_size(n); ++flat) {
    const std::complex<double> coeff = basis[flat].conjugate().cwiseProduct(bracket).sum();
    if (std::abs(coeff.imag()) > kImagTol)
      throw std::runtime_error("hamiltonian_bracket produced a non-Hermitian result");
    if (std::abs(coeff.real()) > 0.0) out.add_flat(flat, coeff.real());
  }
  return out;
}

SpanReport bracket_span(const Generator& drift, const Generator& control, int max_depth) {
  if (drift.n_spins() != control.n_spins())
    throw std::invalid_argument("bracket_span: spin count mismatch");
  if (max_depth < 1) throw std::invalid_argument("bracket_span: max_depth must be >= 1");

  const auto dim = static_cast<Eigen::Index>(drift.dim());
  SpanReport report;
  report.max_abs_coefficient = Eigen::VectorXd::Zero(dim);

  std::vector<Eigen::VectorXd> ortho;  // unit, mutually orthogonal
  auto try_insert = [&](Eigen::VectorXd v) {
    const double scale = v.norm();
    if (scale < kRankTol) return false;
    for (const auto& q : ortho) v -= q.dot(v) * q;
    // second pass guards against cancellation in nearly dependent vectors
    for (const auto& q : ortho) v -= q.dot(v) * q;
    if (v.norm() < kRankTol * scale || v.norm() < kRankTol) return false;
    v.normalize();
    ortho.push_back(std::move(v));
    return true;
  };
  auto record = [&](const Eigen::VectorXd& v) {
    const double scale = v.norm();
    if (scale == 0.0) return;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double a = std::abs(v[i]) / scale;
      if (a > report.max_abs_coefficient[i]) report.max_abs_coefficient[i] = a;
    }
  };

  const Eigen::VectorXd drift_vec = drift.source().coefficient_vector();
  Eigen::VectorXd iterate = control.source().coefficient_vector();
  record(drift_vec);
  record(iterate);
  try_insert(drift_vec);
  try_insert(iterate);

  report.depth_saturated = max_depth;
  for (int depth = 1; depth <= max_depth; ++depth) {
    iterate = drift.matrix() * iterate;
    const double scale = iterate.norm();
    if (scale == 0.0) {
      report.depth_saturated = depth;
      break;
    }
    iterate /= scale;  // keeps iterates O(1); span is scale-free
    record(iterate);
    if (!try_insert(iterate)) {
      // Krylov chain: once an iterate is dependent, all later ones are too.
      report.depth_saturated = depth;
      break;
    }
  }

  report.dimension = static_cast<int>(ortho.size());
  for (Eigen::Index i = 1; i < dim; ++i) {
    const auto flat = static_cast<std::size_t>(i);
    if (report.max_abs_coefficient[i] > kTouchTol)
      report.touched.insert(flat);
    else
      report.untouched.insert(flat);
  }
  return report;
}

}  // namespace spinloop
