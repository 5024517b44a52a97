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
#include "renyi/entropy.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

namespace {

OptimizerConfig quick() {
  OptimizerConfig c;
  c.multistart = 3;
  c.seed = 11;
  return c;
}

// Brute-force minimum of f over the Bloch ball: a 0.02 grid, then two nested
// refinements around the best point.
double bloch_grid_min(const std::function<double(const Mat&)>& f) {
  double best = INFINITY;
  double bx = 0.0, by = 0.0, bz = 0.0;
  auto scan = [&](double cx, double cy, double cz, double half, double step) {
    const int n = static_cast<int>(std::lround(half / step));
    double nx = bx, ny = by, nz = bz;
    for (int i = -n; i <= n; ++i) {
      for (int j = -n; j <= n; ++j) {
        for (int k = -n; k <= n; ++k) {
          double x = cx + i * step, y = cy + j * step, z = cz + k * step;
          if (x * x + y * y + z * z > 1.0) continue;
          double v = f(bloch_state(x, y, z));
          if (v < best) {
            best = v;
            nx = x;
            ny = y;
            nz = z;
          }
        }
      }
    }
    bx = nx;
    by = ny;
    bz = nz;
  };
  scan(0.0, 0.0, 0.0, 1.0, 0.1);
  scan(bx, by, bz, 0.1, 0.02);
  scan(bx, by, bz, 0.02, 0.004);
  scan(bx, by, bz, 0.004, 0.0008);
  return best;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("Umegaki closed forms") {
  Mat prod = kron(gen_diagonal({0.5, 0.5}), ket_projector(2, 0));
  CHECK(conditional_entropy_vn(prod, 2, 2) == doctest::Approx(1.0));
  CHECK(std::abs(mutual_information_vn(prod, 2, 2)) <= 1e-12);
  Mat phi = maximally_entangled(2);
  CHECK(conditional_entropy_vn(phi, 2, 2) == doctest::Approx(-1.0));
  CHECK(mutual_information_vn(phi, 2, 2) == doctest::Approx(2.0));
  // Classical copy: H(X|X) = 0, I(X:X) = H(X).
  Mat copy = gen_diagonal({0.7, 0.0, 0.0, 0.3});
  CHECK(std::abs(conditional_entropy_vn(copy, 2, 2)) <= 1e-12);
  double hx = -(0.7 * std::log2(0.7) + 0.3 * std::log2(0.3));
  CHECK(mutual_information_vn(copy, 2, 2) == doctest::Approx(hx));
}

TEST_CASE("optimized Umegaki values match the closed forms") {
  Rng rng(401);
  for (int t = 0; t < 5; ++t) {
    Mat rho = gen_state(4, rng.integer(1, 4), rng);
    auto h = conditional_entropy(rho, 2, 2, DivergenceKind::kUmegaki, 1.0, quick());
    CHECK(std::abs(h.value - conditional_entropy_vn(rho, 2, 2)) <= 1e-7);
    auto i = mutual_information(rho, 2, 2, DivergenceKind::kUmegaki, 1.0, MutualInfoVariant::kDoubleMin, quick());
    CHECK(std::abs(i.value - mutual_information_vn(rho, 2, 2)) <= 1e-7);
  }
}

TEST_CASE("maximally entangled conditional entropy at one half") {
  auto h = conditional_entropy(maximally_entangled(2), 2, 2, DivergenceKind::kSandwiched, 0.5, quick());
  CHECK(h.value == doctest::Approx(-1.0).epsilon(1e-7));
  auto p = conditional_entropy(maximally_entangled(2), 2, 2, DivergenceKind::kPetz, 0.5, quick());
  CHECK(p.value == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("product states") {
  Rng rng(402);
  Mat b = gen_full_rank(2, rng);
  Mat prod = kron(gen_diagonal({0.5, 0.5}), b);
  for (double a : {0.6, 0.9, 1.4}) {
    auto h = conditional_entropy(prod, 2, 2, DivergenceKind::kSandwiched, a, quick());
    CHECK(h.value == doctest::Approx(1.0).epsilon(1e-7));
    auto i = mutual_information(prod, 2, 2, DivergenceKind::kSandwiched, a, MutualInfoVariant::kDoubleMin, quick());
    CHECK(std::abs(i.value) <= 1e-7);
  }
}

TEST_CASE("fixed-marginal mutual information against a Bloch-ball grid") {
  Rng rng(403);
  for (int t = 0; t < 2; ++t) {
    Mat rho = gen_full_rank(4, rng);
    const double a = 0.75;
    Mat rho_a = partial_trace(rho, {2, 2}, {0});
    DivergenceEvaluator ev(rho, DivergenceKind::kSandwiched, a);
    double oracle = bloch_grid_min([&](const Mat& s) { return ev(kron(rho_a, s)); });
    auto v = mutual_information(rho, 2, 2, DivergenceKind::kSandwiched, a, MutualInfoVariant::kFixedMarginal, quick());
    CHECK(v.value <= oracle + 1e-9);
    CHECK(oracle - v.value <= 2e-4);
  }
}

TEST_CASE("conditional entropy against a Bloch-ball grid") {
  Rng rng(404);
  Mat rho = gen_state(4, 2, rng);
  DivergenceEvaluator ev(rho, DivergenceKind::kSandwiched, 0.5);
  Mat id = Mat::Identity(2, 2);
  double oracle = bloch_grid_min([&](const Mat& s) { return ev(kron(id, s)); });
  auto h = conditional_entropy(rho, 2, 2, DivergenceKind::kSandwiched, 0.5, quick());
  CHECK(-h.value <= oracle + 1e-9);
  CHECK(oracle + h.value <= 2e-4);
}

TEST_CASE("classical mutual information uses the diagonal path") {
  Mat copy = gen_diagonal({0.5, 0.0, 0.0, 0.5});
  CHECK(is_diagonal(copy));
  auto i = mutual_information(copy, 2, 2, DivergenceKind::kSandwiched, 0.7, MutualInfoVariant::kDoubleMin, quick());
  CHECK(i.value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(i.optimizer_states.size() == 2);
  CHECK(is_diagonal(i.optimizer_states[0]));
}

TEST_CASE("blocking does not increase the double-minimized information beyond tolerance") {
  Rng rng(405);
  Mat rho = gen_state(4, 2, rng);
  auto est = regularized_mutual_information_estimate(rho, 2, 2, DivergenceKind::kSandwiched, 0.7, 2, quick());
  REQUIRE(est.block_values.size() == 2);
  CHECK(est.block_values[1] <= est.block_values[0] + 1e-7);
  CHECK(est.value == doctest::Approx(est.block_values[1]));
  CHECK_THROWS_AS(regularized_mutual_information_estimate(rho, 2, 2, DivergenceKind::kSandwiched, 0.7, 3, quick()),
                  ValidationError);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(conditional_entropy(Mat::Identity(4, 4) / 4.0, 2, 3, DivergenceKind::kSandwiched, 0.5, quick()),
                  ValidationError);
}

TEST_CASE("weighted partial traces agree with explicit contractions") {
  Rng rng(406);
  Mat g = gen_hermitian(6, rng);
  Mat x = gen_hermitian(2, rng);
  Mat y = gen_hermitian(3, rng);
  Mat ia = Mat::Identity(2, 2), ib = Mat::Identity(3, 3);
  CHECK(max_abs_diff(weighted_trace_a(g, x, 2, 3), partial_trace(kron(x, ib) * g, {2, 3}, {1})) <= 1e-12);
  CHECK(max_abs_diff(weighted_trace_b(g, y, 2, 3), partial_trace(kron(ia, y) * g, {2, 3}, {0})) <= 1e-12);
}

}  // TEST_SUITE
