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

#include <span>
#include <vector>

#include "spinloop/basis.hpp"

namespace spinloop {

/// Real expectation-value vector of a single spin along the normalized
/// basis: (r0, r1, r2, r3) with r0 = 1/sqrt(2) for trace-one states and
/// r1^2 + r2^2 + r3^2 <= 1/2 (equality iff pure).
struct SingleSpinBloch {
  Eigen::Vector4d components = Eigen::Vector4d::Zero();

  double purity() const { return components.squaredNorm(); }
  double traceless_norm() const { return components.tail<3>().norm(); }
};

/// Pure state at spherical angles (theta from the lambda_3 pole, phi in the
/// transverse plane), optionally shrunk to radius r <= 1/sqrt(2).
SingleSpinBloch bloch_at(double theta, double phi, double radius = 0.7071067811865475244);

/// Real expectation-value tensor of an n-spin density matrix along the
/// product-operator basis, stored flat in basis order.
class StokesTensor {
 public:
  explicit StokesTensor(int n_spins);
  StokesTensor(int n_spins, Eigen::VectorXd components);

  int n_spins() const { return n_spins_; }
  std::size_t size() const { return static_cast<std::size_t>(components_.size()); }
  const Eigen::VectorXd& components() const { return components_; }
  Eigen::VectorXd& components() { return components_; }
  double operator[](std::size_t flat) const { return components_[static_cast<Eigen::Index>(flat)]; }
  double& operator[](std::size_t flat) { return components_[static_cast<Eigen::Index>(flat)]; }

 private:
  int n_spins_;
  Eigen::VectorXd components_;
};

/// Trace projections onto the basis. Rejects matrices that are not Hermitian
/// to 1e-10; the inverse of density_from_stokes.
StokesTensor stokes_from_density(const OperatorMatrix& rho);

/// Reconstruction sum_mu r^mu Lambda_mu. Positivity of the result is a
/// diagnostic, not an enforced invariant: when positive_semidefinite is
/// given it is set false for eigenvalues below -1e-9, and the matrix is
/// returned either way.
OperatorMatrix density_from_stokes(const StokesTensor& state,
                                   bool* positive_semidefinite = nullptr);

/// Smallest eigenvalue of the reconstructed density matrix. Slightly
/// negative values (> -1e-9) are expected from integration error.
double min_density_eigenvalue(const StokesTensor& state);

/// Componentwise product tensor r^{j1..jn} = prod_i f_i^{j_i}.
StokesTensor product_state(std::span<const SingleSpinBloch> factors);

/// Single-spin reduction: component j is 2^{(n-1)/2} times the tensor entry
/// with j in the chosen slot and 0 elsewhere. Agrees with the matrix
/// partial trace.
SingleSpinBloch reduced_state(const StokesTensor& state, int spin);

/// Hilbert-Schmidt tracking distance on traceless components:
///   V = ||~desired||^2 - <~desired, ~state>.
/// Nonnegative whenever the traceless norms match, zero iff equal.
double hs_distance(const StokesTensor& desired, const StokesTensor& state);

double purity(const StokesTensor& state);   // tr rho^2 = ||r||^2
double norm(const StokesTensor& state);     // sqrt of purity
double traceless_norm(const StokesTensor& state);

/// Max-norm distance between the tensor and the product of its reductions.
double product_defect(const StokesTensor& state);

}  // namespace spinloop
