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

#include "spinloop/hamiltonian.hpp"

using namespace spinloop;

TEST_CASE("hamiltonian term bookkeeping") {
  HamiltonianSpec spec(2);
  spec.add({0, 3}, 1.0).add({3, 0}, 2.0).add({3, 3}, 0.3);
  CHECK(spec.terms().size() == 3);
  CHECK(spec.coeff(std::vector<int>{0, 3}) == 1.0);
  spec.add({0, 3}, -1.0);  // cancels exactly -> term dropped
  CHECK(spec.terms().size() == 2);
  CHECK_THROWS_AS(spec.add({0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(spec.add({0, 3}, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(spec.add({0, 3, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("ising_chain layouts") {
  SUBCASE("two spins") {
    const std::vector<double> offsets{2.0, 1.0}, couplings{0.3};
    const auto spec = ising_chain(2, offsets, couplings);
    CHECK(spec.terms().size() == 3);
    CHECK(spec.coeff(std::vector<int>{3, 0}) == 2.0);
    CHECK(spec.coeff(std::vector<int>{0, 3}) == 1.0);
    CHECK(spec.coeff(std::vector<int>{3, 3}) == 0.3);
  }
  SUBCASE("zero coupling leaves two decoupled precessions") {
    const std::vector<double> offsets{2.0, 1.0}, couplings{0.0};
    const auto spec = ising_chain(2, offsets, couplings);
    CHECK(spec.terms().size() == 2);
    CHECK(spec.coeff(std::vector<int>{3, 3}) == 0.0);
  }
  SUBCASE("three-spin chain has 3 local + 2 coupling terms") {
    const std::vector<double> offsets{1.0, 2.0, 3.0}, couplings{0.4, 0.5};
    const auto spec = ising_chain(3, offsets, couplings);
    CHECK(spec.terms().size() == 5);
    CHECK(spec.coeff(std::vector<int>{3, 3, 0}) == 0.4);
    CHECK(spec.coeff(std::vector<int>{0, 3, 3}) == 0.5);
  }
  SUBCASE("length mismatches are rejected") {
    const std::vector<double> offsets{1.0, 2.0}, couplings{0.4, 0.5};
    CHECK_THROWS_AS(ising_chain(2, offsets, couplings), std::invalid_argument);
    CHECK_THROWS_AS(ising_chain(3, offsets, couplings), std::invalid_argument);
  }
}

TEST_CASE("dipole_pair structure") {
  SUBCASE("adjacent pair") {
    const auto spec = dipole_pair(2, 0, 1, 0.7);
    CHECK(spec.coeff(std::vector<int>{1, 1}) == -0.7);
    CHECK(spec.coeff(std::vector<int>{2, 2}) == -0.7);
    CHECK(spec.coeff(std::vector<int>{3, 3}) == 1.4);
    // h11 = h22 = -h33/2
    CHECK(spec.coeff(std::vector<int>{1, 1}) == -spec.coeff(std::vector<int>{3, 3}) / 2.0);
  }
  SUBCASE("slot order does not matter") {
    const auto a = dipole_pair(3, 0, 2, 0.125);
    const auto b = dipole_pair(3, 2, 0, 0.125);
    CHECK(a.terms() == b.terms());
    CHECK(a.coeff(std::vector<int>{1, 0, 1}) == -0.125);
    CHECK(a.coeff(std::vector<int>{2, 0, 2}) == -0.125);
    CHECK(a.coeff(std::vector<int>{3, 0, 3}) == 0.25);
  }
  SUBCASE("zero strength produces an empty spec") { CHECK(dipole_pair(2, 0, 1, 0.0).empty()); }
  SUBCASE("index clashes rejected") {
    CHECK_THROWS_AS(dipole_pair(2, 1, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dipole_pair(2, 0, 2, 1.0), std::invalid_argument);
  }
}

TEST_CASE("control channels") {
  SUBCASE("nonselective sums one transverse term per spin") {
    const auto x2 = nonselective_channel(2, 1);
    CHECK(x2.spec.terms().size() == 2);
    CHECK(x2.spec.coeff(std::vector<int>{0, 1}) == 1.0);
    CHECK(x2.spec.coeff(std::vector<int>{1, 0}) == 1.0);
    const auto y2 = nonselective_channel(2, 2);
    CHECK(y2.spec.coeff(std::vector<int>{0, 2}) == 1.0);
    CHECK(y2.spec.coeff(std::vector<int>{2, 0}) == 1.0);
    const auto x3 = nonselective_channel(3, 1);
    CHECK(x3.spec.terms().size() == 3);
    CHECK(x3.spec.coeff(std::vector<int>{0, 0, 1}) == 1.0);
    CHECK(x3.spec.coeff(std::vector<int>{0, 1, 0}) == 1.0);
    CHECK(x3.spec.coeff(std::vector<int>{1, 0, 0}) == 1.0);
  }
  SUBCASE("selective gives one single-term channel per spin") {
    for (int n : {1, 2, 3}) {
      const auto channels = selective_channels(n);
      CHECK(static_cast<int>(channels.size()) == n);
      for (int i = 0; i < n; ++i) {
        CHECK(channels[static_cast<std::size_t>(i)].spec.terms().size() == 1);
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        idx[static_cast<std::size_t>(i)] = 1;
        CHECK(channels[static_cast<std::size_t>(i)].spec.coeff(idx) == 1.0);
      }
    }
  }
  SUBCASE("non-local or longitudinal channel specs are rejected") {
    HamiltonianSpec two_site(2);
    two_site.add({1, 1}, 1.0);
    CHECK_THROWS_AS(ControlChannel(two_site, "bad"), std::invalid_argument);
    HamiltonianSpec longitudinal(2);
    longitudinal.add({0, 3}, 1.0);
    CHECK_THROWS_AS(ControlChannel(longitudinal, "bad"), std::invalid_argument);
  }
}

TEST_CASE("closed-form two-spin regularity inequalities") {
  CHECK(two_spin_ising_regular(1.0, 2.0, 0.3));
  CHECK_FALSE(two_spin_ising_regular(1.0, 2.0, 0.5));   // h33 = |h03-h30|/2
  CHECK_FALSE(two_spin_ising_regular(1.0, 2.0, -0.5));
  CHECK_FALSE(two_spin_ising_regular(1.0, 1.0, 0.3));   // equal offsets
  CHECK_FALSE(two_spin_ising_regular(1.0, 2.0, 0.0));   // no coupling
}

namespace {
RegularityReport ising_report(double h03, double h30, double h33) {
  const std::vector<double> offsets{h30, h03}, couplings{h33};
  return strong_regularity(ising_chain(2, offsets, couplings), nonselective_channel(2, 1));
}
}  // namespace

TEST_CASE("strong regularity of the two-spin Ising drift") {
  SUBCASE("levels come out in computational order and h units") {
    const auto report = ising_report(1.0, 2.0, 0.3);
    REQUIRE(report.energy_levels.size() == 4);
    CHECK(report.energy_levels[0] == doctest::Approx(3.3).epsilon(1e-12));   // h03+h30+h33
    CHECK(report.energy_levels[1] == doctest::Approx(0.7).epsilon(1e-12));   // -h03+h30-h33
    CHECK(report.energy_levels[2] == doctest::Approx(-1.3).epsilon(1e-12));  // h03-h30-h33
    CHECK(report.energy_levels[3] == doctest::Approx(-2.7).epsilon(1e-12));  // -h03-h30+h33
    const std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    CHECK(report.transition_pairs == expect);
    CHECK(report.strongly_regular);
    CHECK(report.connected);
  }
  SUBCASE("equal offsets degenerate the spectrum for any coupling") {
    for (double h33 : {0.1, 0.5, 2.0}) {
      const auto report = ising_report(1.5, 1.5, h33);
      CHECK(report.degenerate_levels);
      CHECK_FALSE(report.strongly_regular);
    }
  }
  SUBCASE("closed-form surfaces are caught by the spectral check") {
    CHECK_FALSE(ising_report(1.0, 2.0, 0.5).strongly_regular);
    CHECK_FALSE(ising_report(1.0, 2.0, 0.0).strongly_regular);
    CHECK_FALSE(ising_report(1.0, 1.0, 0.3).strongly_regular);
  }
  SUBCASE("the closed form is generic only: level degeneracies off its surfaces") {
    // h30 == h33 collapses two levels although the three inequalities hold.
    CHECK(two_spin_ising_regular(1.0, 0.5, 0.5));
    CHECK_FALSE(ising_report(1.0, 0.5, 0.5).strongly_regular);
  }
  SUBCASE("random cross-check away from the coincidence surfaces") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> offs(0.1, 3.0);
    std::uniform_real_distribution<double> coup(-1.5, 1.5);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
      const double h03 = offs(rng), h30 = offs(rng), h33 = coup(rng);
      const auto report = ising_report(h03, h30, h33);
      const double margin = std::min(report.min_level_gap, report.min_transition_gap);
      if (margin < 1e-9) continue;  // tolerance band around the equality surfaces
      CHECK(report.strongly_regular == two_spin_ising_regular(h03, h30, h33));
      ++checked;
    }
    CHECK(checked > 900);
  }
}
