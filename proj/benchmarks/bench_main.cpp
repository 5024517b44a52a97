// Copyright 2026 The renyi-sc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "renyi/divergence.hpp"
#include "renyi/entropy.hpp"
#include "renyi/exponent.hpp"
#include "renyi/smoothing.hpp"
#include "renyi/state.hpp"
#include "renyi/types.hpp"

namespace {

using namespace renyi;

void BM_Sandwiched(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat rho = random_density({d}, d, 1).matrix();
  Mat sigma = random_density({d}, d, 2).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(sandwiched(rho, sigma, 0.7));
}
BENCHMARK(BM_Sandwiched)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_EvaluatorGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat rho = random_density({d}, d, 3).matrix();
  Mat sigma = random_density({d}, d, 4).matrix();
  DivergenceEvaluator ev(rho, DivergenceKind::kSandwiched, 0.7);
  Mat g;
  for (auto _ : state) benchmark::DoNotOptimize(ev(sigma, &g));
}
BENCHMARK(BM_EvaluatorGradient)->Arg(4)->Arg(16);

void BM_ConditionalEntropy(benchmark::State& state) {
  Mat rho = random_density({2, 2}, 3, 5).matrix();
  OptimizerConfig cfg;
  cfg.multistart = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_entropy(rho, 2, 2, DivergenceKind::kSandwiched, 0.7, cfg).value);
  }
}
BENCHMARK(BM_ConditionalEntropy)->Unit(benchmark::kMillisecond);

void BM_ExponentCurve(benchmark::State& state) {
  Mat rho = random_density({3}, 3, 6).matrix();
  Mat sigma = random_density({3}, 3, 7).matrix();
  CurveConfig cfg;
  cfg.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exponent_dmax(rho, sigma, 0.1, cfg).supremum);
}
BENCHMARK(BM_ExponentCurve)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SmoothQuantum(benchmark::State& state) {
  Mat rho = random_density({2}, 2, 8).matrix();
  Mat sigma = random_density({2}, 2, 9).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(smooth_quantum(rho, sigma, 0.2).epsilon);
}
BENCHMARK(BM_SmoothQuantum)->Unit(benchmark::kMillisecond);

void BM_TypeTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_type_table({0.5, 0.3, 0.2}, {0.2, 0.3, 0.5}, n).size());
  }
}
BENCHMARK(BM_TypeTable)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
