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

#include <benchmark/benchmark.h>

#include "spinloop/dynamics.hpp"

using namespace spinloop;

namespace {

HamiltonianSpec chain(int n) {
  std::vector<double> offsets, couplings;
  for (int i = 0; i < n; ++i) offsets.push_back(1.0 + 0.7 * i);
  for (int i = 0; i + 1 < n; ++i) couplings.push_back(0.3);
  return ising_chain(n, offsets, couplings);
}

StokesTensor tilted_product(int n) {
  std::vector<SingleSpinBloch> factors;
  for (int i = 0; i < n; ++i) factors.push_back(bloch_at(0.4 + 0.5 * i, 0.3 * i));
  return product_state(factors);
}

void BM_generator_build(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const HamiltonianSpec spec = chain(n);
  for (auto _ : state) benchmark::DoNotOptimize(generator(spec));
}
BENCHMARK(BM_generator_build)->Arg(2)->Arg(3)->Arg(4);

void BM_drift_propagator(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const HamiltonianSpec spec = chain(n);
  for (auto _ : state) benchmark::DoNotOptimize(drift_propagator(spec, 0.37));
}
BENCHMARK(BM_drift_propagator)->Arg(2)->Arg(3);

void BM_closed_loop_step(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const HamiltonianSpec drift = chain(n);
  const FeedbackLaw law(FeedbackKind::orbit_tracking, {2.0}, {nonselective_channel(n, 1)});
  const SpinModel model{drift, {nonselective_channel(n, 1)}};
  const StokesTensor desired0 = tilted_product(n);
  StokesTensor state0 = tilted_product(n);
  state0.components().tail(state0.components().size() - 1).reverseInPlace();
  IntegratorConfig cfg{.dt = 1e-3, .t_final = 0.256, .record_every = 256};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_closed_loop(model, law, state0, desired0, drift, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 256);  // RK4 steps
}
BENCHMARK(BM_closed_loop_step)->Arg(1)->Arg(2)->Arg(3);

void BM_bracket_span(benchmark::State& state) {
  const HamiltonianSpec drift = chain(2);
  HamiltonianSpec control(2);
  control.add({0, 1}, 1.0).add({1, 0}, 1.0);
  const Generator gf = generator(drift);
  const Generator gc = generator(control);
  for (auto _ : state) benchmark::DoNotOptimize(bracket_span(gf, gc, 20));
}
BENCHMARK(BM_bracket_span);

}  // namespace

BENCHMARK_MAIN();
