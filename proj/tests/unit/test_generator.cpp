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
#include <vector>

#include "spinloop/generator.hpp"
#include "test_helpers.hpp"

using namespace spinloop;

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;

HamiltonianSpec single_label(int n, std::vector<int> indices, double coeff = 1.0) {
  HamiltonianSpec spec(n);
  spec.add(indices, coeff);
  return spec;
}

HamiltonianSpec random_spec(int n, std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<std::size_t> label(1, basis_size(n) - 1);
  std::normal_distribution<double> gauss;
  HamiltonianSpec spec(n);
  for (int i = 0; i < terms; ++i) spec.add_flat(label(rng), gauss(rng));
  return spec;
}
}  // namespace

TEST_CASE("single-spin longitudinal drift generator") {
  const double h3 = 0.7;
  const Generator g = generator(single_label(1, {3}, h3));
  Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
  expect(1, 2) = -kSqrt2 * h3;
  expect(2, 1) = kSqrt2 * h3;
  CHECK((g.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("empty Hamiltonian produces the zero generator") {
  CHECK(generator(HamiltonianSpec(2)).matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generators are antisymmetric and fix the identity direction") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const Generator g = generator(random_spec(n, rng));
      const auto& m = g.matrix();
      CHECK((m + m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(m.row(0).cwiseAbs().maxCoeff() == 0.0);
      CHECK(m.col(0).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("tensor-formula generators agree with trace projection on all 16 labels") {
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const Generator tensor = tensor_generator_pair(j, k);
      if (j == 0 && k == 0) {
        CHECK(tensor.matrix().cwiseAbs().maxCoeff() < 1e-14);
        continue;
      }
      const Generator projected = generator(single_label(2, {j, k}));
      CHECK((tensor.matrix() - projected.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("identity-times-transverse label acts as a scaled single-spin rotation") {
  const Generator g = generator(single_label(2, {0, 1}));
  const Generator g1 = generator(single_label(1, {1}));
  const Eigen::MatrixXd expect =
      kron_real(Eigen::MatrixXd::Identity(4, 4), g1.matrix()) / kSqrt2;
  CHECK((g.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bracket of generators is the generator of the bracket") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const HamiltonianSpec a = random_spec(n, rng);
      const HamiltonianSpec b = random_spec(n, rng);
      const Eigen::MatrixXd lhs =
          generator(a).matrix() * generator(b).matrix() - generator(b).matrix() * generator(a).matrix();
      const Eigen::MatrixXd rhs = generator(hamiltonian_bracket(a, b)).matrix();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("explicit low-order brackets of the Ising drift with the collective channel") {
  const double h03 = 1.3, h30 = 2.1, h33 = 0.45;
  HamiltonianSpec drift(2);
  drift.add({0, 3}, h03).add({3, 0}, h30).add({3, 3}, h33);
  HamiltonianSpec control(2);
  control.add({0, 1}, 1.0).add({1, 0}, 1.0);

  const HamiltonianSpec first = hamiltonian_bracket(drift, control);
  CHECK(first.coeff(std::vector<int>{0, 2}) == doctest::Approx(h03).epsilon(1e-12));
  CHECK(first.coeff(std::vector<int>{2, 0}) == doctest::Approx(h30).epsilon(1e-12));
  CHECK(first.coeff(std::vector<int>{3, 2}) == doctest::Approx(h33).epsilon(1e-12));
  CHECK(first.coeff(std::vector<int>{2, 3}) == doctest::Approx(h33).epsilon(1e-12));
  CHECK(first.terms().size() == 4);

  const HamiltonianSpec second = hamiltonian_bracket(drift, first);
  CHECK(second.coeff(std::vector<int>{0, 1}) ==
        doctest::Approx(-(h03 * h03 + h33 * h33)).epsilon(1e-12));
  CHECK(second.coeff(std::vector<int>{1, 0}) ==
        doctest::Approx(-(h30 * h30 + h33 * h33)).epsilon(1e-12));
  CHECK(second.coeff(std::vector<int>{3, 1}) == doctest::Approx(-2 * h03 * h33).epsilon(1e-12));
  CHECK(second.coeff(std::vector<int>{1, 3}) == doctest::Approx(-2 * h30 * h33).epsilon(1e-12));
  // the double-transverse directions never appear
  for (const std::vector<int> idx : {std::vector<int>{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    CHECK(first.coeff(idx) == 0.0);
    CHECK(second.coeff(idx) == 0.0);
  }
}

TEST_CASE("the three Ising drift directions commute") {
  const Generator g03 = generator(single_label(2, {0, 3}));
  const Generator g30 = generator(single_label(2, {3, 0}));
  const Generator g33 = generator(single_label(2, {3, 3}));
  for (const auto* a : {&g03, &g30, &g33})
    for (const auto* b : {&g03, &g30, &g33}) {
      const Eigen::MatrixXd comm = a->matrix() * b->matrix() - b->matrix() * a->matrix();
      CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("bracket span of the generic Ising drift saturates below the full algebra") {
  HamiltonianSpec drift(2);
  drift.add({0, 3}, 1.0).add({3, 0}, 2.0).add({3, 3}, 0.3);
  HamiltonianSpec control(2);
  control.add({0, 1}, 1.0).add({1, 0}, 1.0);
  const SpanReport report = bracket_span(generator(drift), generator(control), 20);

  CHECK(report.dimension == 9);
  CHECK(report.dimension < 15);
  const std::set<std::size_t> expect_untouched{
      label_to_flat(std::vector<int>{1, 1}), label_to_flat(std::vector<int>{1, 2}),
      label_to_flat(std::vector<int>{2, 1}), label_to_flat(std::vector<int>{2, 2})};
  CHECK(report.untouched == expect_untouched);
  for (std::size_t flat : expect_untouched)
    CHECK(report.max_abs_coefficient[static_cast<Eigen::Index>(flat)] < 1e-12);
  CHECK(report.touched.count(label_to_flat(std::vector<int>{0, 2})) == 1);
  CHECK(report.touched.count(label_to_flat(std::vector<int>{3, 2})) == 1);
  CHECK(report.touched.count(label_to_flat(std::vector<int>{2, 0})) == 1);
  CHECK(report.touched.count(label_to_flat(std::vector<int>{2, 3})) == 1);
  CHECK(report.depth_saturated <= 20);

  CHECK_THROWS_AS(bracket_span(generator(drift), generator(control), 0), std::invalid_argument);
}

TEST_CASE("generator spectral norm estimate matches the dense norm") {
  std::mt19937_64 rng(5);
  const Generator g = generator(random_spec(2, rng));
  const double exact = g.matrix().jacobiSvd().singularValues()[0];
  CHECK(g.spectral_norm() == doctest::Approx(exact).epsilon(1e-6));
}
