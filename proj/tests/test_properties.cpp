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

#include <cmath>
#include <functional>

#include "doctest.h"
#include "renyi/divergence.hpp"
#include "renyi/entropy.hpp"
#include "renyi/smoothing.hpp"
#include "renyi/types.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

namespace {

// Runs prop on `cases` generator seeds; the seed shows up in the failure context.
void for_all(int cases, std::uint64_t base, const std::function<void(Rng&)>& prop) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = base * 1000003ULL + static_cast<std::uint64_t>(i);
    CAPTURE(seed);
    Rng rng(seed);
    prop(rng);
  }
}

Mat any_state(Rng& rng) {
  int d = rng.integer(2, 3);
  return gen_state(d, rng.integer(1, d), rng);
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("divergences are unitarily invariant") {
  for_all(40, 1, [](Rng& rng) {
    int d = rng.integer(2, 3);
    Mat rho = gen_state(d, rng.integer(1, d), rng);
    Mat sigma = gen_full_rank(d, rng);
    Mat u = random_unitary(d, rng);
    double a = rng.uniform(0.3, 2.5);
    CHECK(std::abs(sandwiched(u * rho * u.adjoint(), u * sigma * u.adjoint(), a) - sandwiched(rho, sigma, a)) <=
          1e-9);
    CHECK(std::abs(petz(u * rho * u.adjoint(), u * sigma * u.adjoint(), a) - petz(rho, sigma, a)) <= 1e-9);
  });
}

TEST_CASE("divergences are additive on tensor products") {
  for_all(30, 2, [](Rng& rng) {
    Mat r1 = gen_full_rank(2, rng), s1 = gen_full_rank(2, rng);
    Mat r2 = gen_full_rank(2, rng), s2 = gen_full_rank(2, rng);
    double a = rng.uniform(0.5, 2.0);
    double lhs = sandwiched(kron(r1, r2), kron(s1, s2), a);
    CHECK(std::abs(lhs - sandwiched(r1, s1, a) - sandwiched(r2, s2, a)) <= 1e-9);
    double le = log_euclidean(kron(r1, r2), kron(s1, s2), a);
    CHECK(std::abs(le - log_euclidean(r1, s1, a) - log_euclidean(r2, s2, a)) <= 1e-9);
  });
}

TEST_CASE("ordering between the quantum Renyi families") {
  for_all(60, 3, [](Rng& rng) {
    Mat rho = any_state(rng);
    Mat sigma = gen_full_rank(static_cast<int>(rho.rows()), rng);
    double a = rng.uniform(0.3, 0.95);
    // Araki-Lieb-Thirring gives sandwiched <= Petz.
    CHECK(sandwiched(rho, sigma, a) <= petz(rho, sigma, a) + 1e-9);
    CHECK(sandwiched(rho, sigma, a) <= umegaki(rho, sigma) + 1e-9);
    CHECK(umegaki(rho, sigma) <= sandwiched(rho, sigma, 1.0 + a) + 1e-9);
  });
}

TEST_CASE("sandwiched at one half is minus twice the log fidelity") {
  for_all(40, 4, [](Rng& rng) {
    Mat rho = any_state(rng);
    Mat sigma = any_state(rng);
    if (rho.rows() != sigma.rows()) return;
    double f = fidelity(rho, sigma);
    if (f < 1e-6) return;
    CHECK(std::abs(sandwiched(rho, sigma, 0.5) + 2.0 * std::log2(f)) <= 1e-8);
  });
}

TEST_CASE("fidelity and purified distance") {
  for_all(60, 5, [](Rng& rng) {
    Mat rho = any_state(rng);
    Mat sigma = gen_state(static_cast<int>(rho.rows()), rng.integer(1, static_cast<int>(rho.rows())), rng);
    double f = fidelity(rho, sigma);
    CHECK(f >= -1e-12);
    CHECK(f <= 1.0 + 1e-9);
    CHECK(std::abs(f - fidelity(sigma, rho)) <= 1e-9);
    CHECK(std::abs(purified_distance(rho, sigma) - std::sqrt(std::max(0.0, 1.0 - f * f))) <= 1e-9);
    CHECK(std::abs(fidelity(rho, rho) - 1.0) <= 1e-9);
  });
}

TEST_CASE("conditional entropy and mutual information bounds") {
  OptimizerConfig cfg;
  cfg.multistart = 2;
  for_all(8, 6, [&](Rng& rng) {
    Mat rho = gen_state(4, rng.integer(1, 4), rng);
    double a = rng.uniform(0.5, 2.0);
    auto h = conditional_entropy(rho, 2, 2, DivergenceKind::kSandwiched, a, cfg);
    CHECK(h.value >= -1.0 - 1e-7);
    CHECK(h.value <= 1.0 + 1e-7);
    auto i = mutual_information(rho, 2, 2, DivergenceKind::kSandwiched, a, MutualInfoVariant::kDoubleMin, cfg);
    CHECK(i.value >= -1e-7);
    CHECK(i.value <= 2.0 + 1e-7);
    auto fm = mutual_information(rho, 2, 2, DivergenceKind::kSandwiched, a, MutualInfoVariant::kFixedMarginal, cfg);
    CHECK(i.value <= fm.value + 1e-7);
  });
}

TEST_CASE("classical smoothing is monotone in lambda") {
  for_all(60, 7, [](Rng& rng) {
    int n = rng.integer(2, 5);
    auto p = gen_distribution(n, rng);
    auto q = gen_distribution(n, rng);
    double l1 = rng.uniform(-1.0, 1.5);
    double l2 = l1 + rng.uniform(0.0, 1.0);
    CHECK(smooth_classical(p, q, l2).epsilon <= smooth_classical(p, q, l1).epsilon + 1e-12);
  });
}

TEST_CASE("classical Renyi divergence is non-decreasing in alpha") {
  for_all(60, 8, [](Rng& rng) {
    int n = rng.integer(2, 5);
    auto p = gen_distribution(n, rng);
    auto q = gen_distribution(n, rng);
    double a = rng.uniform(0.1, 2.0);
    double b = a + rng.uniform(0.01, 1.0);
    CHECK(classical_renyi(p, q, a) <= classical_renyi(p, q, b) + 1e-12);
    CHECK(classical_renyi(p, q, b) <= classical_dmax(p, q) + 1e-12);
  });
}

TEST_CASE("partial trace is linear and trace preserving") {
  for_all(40, 9, [](Rng& rng) {
    int d1 = rng.integer(1, 3), d2 = rng.integer(1, 3);
    Mat x = gen_hermitian(d1 * d2, rng), y = gen_hermitian(d1 * d2, rng);
    double c = rng.uniform(-2.0, 2.0);
    Mat lhs = partial_trace(x + c * y, {d1, d2}, {0});
    Mat rhs = partial_trace(x, {d1, d2}, {0}) + c * partial_trace(y, {d1, d2}, {0});
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
    CHECK(std::abs(partial_trace(x, {d1, d2}, {1}).trace() - x.trace()) <= 1e-12);
  });
}

}  // TEST_SUITE
