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

#include <set>

#include "spinloop/hamiltonian.hpp"

namespace spinloop {

/// Real antisymmetric matrix of the commutator action of a Hamiltonian on
/// Stokes tensors: G_{mu,nu} = tr(Lambda_mu^dag (-i)[H, Lambda_nu]). The flow
/// exp(G t) is orthogonal; row and column of the identity label vanish.
class Generator {
 public:
  Generator(Eigen::MatrixXd matrix, HamiltonianSpec source);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  int n_spins() const { return source_.n_spins(); }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const HamiltonianSpec& source() const { return source_; }

  /// Spectral norm estimate via power iteration on G^T G.
  double spectral_norm() const;

 private:
  Eigen::MatrixXd matrix_;
  HamiltonianSpec source_;
};

/// Builds the generator by matrix commutators projected with the trace inner
/// product. Exact for every n; throws on internal inconsistency (imaginary
/// residue above 1e-12).
Generator generator(const HamiltonianSpec& hamiltonian);

/// Two-spin generator of a single basis label via the structure-constant
/// tensor formula 0.5 (ad_j x aad_k + aad_j x ad_k). Kept as an independent
/// construction to cross-check generator() on all 16 labels.
Generator tensor_generator_pair(int j, int k);

/// Hamiltonian whose generator is the commutator [G_A, G_B]; concretely the
/// -i[A, B] projection back onto the basis (real coefficients).
HamiltonianSpec hamiltonian_bracket(const HamiltonianSpec& a, const HamiltonianSpec& b);

struct SpanReport {
  int dimension = 0;
  std::set<std::size_t> touched;
  std::set<std::size_t> untouched;
  int depth_saturated = 0;
  /// Largest |coefficient| seen on each label across the unit-normalized
  /// bracket iterates (seeds included).
  Eigen::VectorXd max_abs_coefficient;
};

/// Span of {Hf, Hc, [Hf, Hc], [Hf, [Hf, Hc]], ...} computed on Hamiltonian
/// coefficient vectors: one bracket with Hf is one multiplication by Gf.
/// Rank via orthogonalization with threshold 1e-10; a label counts as
/// touched when a normalized iterate exceeds 1e-12 on it. Stops as soon as
/// an iterate adds no new direction (the sequence is a Krylov chain) or at
/// max_depth.
SpanReport bracket_span(const Generator& drift, const Generator& control, int max_depth);

}  // namespace spinloop
