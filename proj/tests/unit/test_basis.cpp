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

#include <doctest.h>

#include <random>

#include "spinloop/basis.hpp"
#include "test_helpers.hpp"

using namespace spinloop;

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

TEST_CASE("single-spin basis is the normalized set with l0 = I/sqrt(2)") {
  const auto& basis = build_basis(1);
  REQUIRE(basis.size() == 4);
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity() / kSqrt2;
  CHECK((basis[0] - id).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      const auto ip = (basis[j].adjoint() * basis[k]).trace();
      CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("two-spin basis elements are Kronecker products of the factors") {
  const auto& b1 = build_basis(1);
  const auto& b2 = build_basis(2);
  REQUIRE(b2.size() == 16);
  // L_33 against a locally written Kronecker product
  const Eigen::MatrixXcd expect = testutil::kron2(b1[3], b1[3]);
  CHECK((b2[label_to_flat(std::vector<int>{3, 3})] - expect).cwiseAbs().maxCoeff() < 1e-15);
  // orthonormality across the full two-spin set
  for (std::size_t mu = 0; mu < 16; ++mu)
    for (std::size_t nu = 0; nu < 16; ++nu) {
      const auto ip = (b2[mu].adjoint() * b2[nu]).trace();
      CHECK(std::abs(ip - (mu == nu ? 1.0 : 0.0)) < 1e-13);
    }
}

TEST_CASE("three-spin orthonormality on sampled pairs") {
  const auto& b3 = build_basis(3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, b3.size() - 1);
  for (int it = 0; it < 200; ++it) {
    const std::size_t mu = pick(rng), nu = pick(rng);
    const auto ip = (b3[mu].adjoint() * b3[nu]).trace();
    CHECK(std::abs(ip - (mu == nu ? 1.0 : 0.0)) < 1e-13);
  }
}

TEST_CASE("labels round trip through flat indices") {
  for (int n = 1; n <= 3; ++n) {
    for (std::size_t flat = 0; flat < basis_size(n); ++flat) {
      const auto indices = flat_to_label(n, flat);
      CHECK(label_to_flat(indices) == flat);
    }
  }
  CHECK(label_to_flat(std::vector<int>{0, 0, 0}) == 0);
  const auto label = BasisLabel::from_indices(std::vector<int>{1, 0, 2});
  CHECK(label.flat_index == 1 * 16 + 0 * 4 + 2);
  CHECK(BasisLabel::from_flat(3, label.flat_index) == label);
}

TEST_CASE("spin counts outside the dense ceiling are rejected") {
  CHECK_THROWS_AS(build_basis(0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(kMaxSpins + 1), std::invalid_argument);
  CHECK_THROWS_AS(basis_size(-1), std::invalid_argument);
}

TEST_CASE("structure constants") {
  const auto& st = structure_tensors();

  SUBCASE("commutator constants are purely imaginary and antisymmetric") {
    for (int l = 0; l < 4; ++l)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          CHECK(std::abs(st.c(l, j, k).real()) < 1e-15);
          CHECK(std::abs(st.c(l, j, k) + st.c(l, k, j)) < 1e-15);
          CHECK(std::abs(st.s(l, j, k) - st.s(l, k, j)) < 1e-15);
        }
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) CHECK(std::abs(st.c(l, j, j)) < 1e-15);
  }

  SUBCASE("signature values") {
    CHECK(std::abs(st.c(3, 1, 2) - std::complex<double>(0.0, kSqrt2)) < 1e-14);
    CHECK(st.s(0, 1, 1) == doctest::Approx(kSqrt2).epsilon(1e-14));
  }

  SUBCASE("tensors reconstruct the matrix products") {
    const auto& b = single_spin_basis();
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        Eigen::Matrix2cd comm = Eigen::Matrix2cd::Zero();
        Eigen::Matrix2cd anti = Eigen::Matrix2cd::Zero();
        for (int l = 0; l < 4; ++l) {
          comm += st.c(l, j, k) * b[static_cast<std::size_t>(l)];
          anti += st.s(l, j, k) * b[static_cast<std::size_t>(l)];
        }
        const Eigen::Matrix2cd comm_direct = b[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)] -
                                             b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(j)];
        const Eigen::Matrix2cd anti_direct = b[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)] +
                                             b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(j)];
        CHECK((comm - comm_direct).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((anti - anti_direct).cwiseAbs().maxCoeff() < 1e-12);
      }
  }
}
