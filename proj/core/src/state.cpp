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

#include "spinloop/state.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinloop {

namespace {
constexpr double kHermitianTol = 1e-10;

int spins_from_dim(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim && n <= kMaxSpins) {
    d <<= 1;
    ++n;
  }
  if (d != dim || n < 1 || n > kMaxSpins)
    throw std::invalid_argument("density matrix size is not 2^n for supported n");
  return n;
}
}  // namespace

SingleSpinBloch bloch_at(double theta, double phi, double radius) {
  SingleSpinBloch b;
  b.components[0] = 0.70710678118654752440;
  b.components[1] = radius * std::sin(theta) * std::cos(phi);
  b.components[2] = radius * std::sin(theta) * std::sin(phi);
  b.components[3] = radius * std::cos(theta);
  return b;
}

StokesTensor::StokesTensor(int n_spins)
    : n_spins_(n_spins),
      components_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_size(n_spins)))) {}

StokesTensor::StokesTensor(int n_spins, Eigen::VectorXd components)
    : n_spins_(n_spins), components_(std::move(components)) {
  if (components_.size() != static_cast<Eigen::Index>(basis_size(n_spins)))
    throw std::invalid_argument("component count does not match 4^n");
}

StokesTensor stokes_from_density(const OperatorMatrix& rho) {
  const int n = spins_from_dim(rho.rows());
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw std::invalid_argument("density matrix is not Hermitian");
  const auto& basis = build_basis(n);
  StokesTensor out(n);
  for (std::size_t flat = 0; flat < basis_size(n); ++flat) {
    out[flat] = basis[flat].conjugate().cwiseProduct(rho).sum().real();
  }
  return out;
}

OperatorMatrix density_from_stokes(const StokesTensor& state, bool* positive_semidefinite) {
  const auto& basis = build_basis(state.n_spins());
  const Eigen::Index dim = Eigen::Index{1} << state.n_spins();
  OperatorMatrix rho = OperatorMatrix::Zero(dim, dim);
  for (std::size_t flat = 0; flat < state.size(); ++flat) {
    if (state[flat] != 0.0) rho += state[flat] * basis[flat];
  }
  if (positive_semidefinite) {
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(rho);
    *positive_semidefinite = solver.eigenvalues().minCoeff() >= -1e-9;
  }
  return rho;
}

double min_density_eigenvalue(const StokesTensor& state) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(density_from_stokes(state));
  return solver.eigenvalues().minCoeff();
}

StokesTensor product_state(std::span<const SingleSpinBloch> factors) {
  const int n = static_cast<int>(factors.size());
  StokesTensor out(n);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    double value = 1.0;
    std::size_t rem = flat;
    for (int i = n - 1; i >= 0; --i) {
      value *= factors[static_cast<std::size_t>(i)].components[static_cast<int>(rem % 4)];
      rem /= 4;
    }
    out[flat] = value;
  }
  return out;
}

SingleSpinBloch reduced_state(const StokesTensor& state, int spin) {
  const int n = state.n_spins();
  if (spin < 0 || spin >= n) throw std::invalid_argument("reduced_state: spin index out of range");
  // Tracing out each remaining spin contributes a factor sqrt(2).
  const double scale = std::pow(2.0, 0.5 * (n - 1));
  SingleSpinBloch out;
  const int shift = 2 * (n - 1 - spin);
  for (int j = 0; j < 4; ++j) {
    out.components[j] = scale * state[static_cast<std::size_t>(j) << shift];
  }
  return out;
}

double hs_distance(const StokesTensor& desired, const StokesTensor& state) {
  if (desired.n_spins() != state.n_spins())
    throw std::invalid_argument("hs_distance: spin count mismatch");
  const auto& d = desired.components();
  const auto& s = state.components();
  const Eigen::Index m = d.size() - 1;
  return d.tail(m).squaredNorm() - d.tail(m).dot(s.tail(m));
}

double purity(const StokesTensor& state) { return state.components().squaredNorm(); }

double norm(const StokesTensor& state) { return state.components().norm(); }

double traceless_norm(const StokesTensor& state) {
  return state.components().tail(state.components().size() - 1).norm();
}

double product_defect(const StokesTensor& state) {
  const int n = state.n_spins();
  std::vector<SingleSpinBloch> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) factors.push_back(reduced_state(state, i));
  const StokesTensor prod = product_state(factors);
  return (state.components() - prod.components()).cwiseAbs().maxCoeff();
}

}  // namespace spinloop
