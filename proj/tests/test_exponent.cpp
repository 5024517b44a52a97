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

#include "doctest.h"
#include "renyi/divergence.hpp"
#include "renyi/entropy.hpp"
#include "renyi/exponent.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

namespace {

CurveConfig small_grid(int grid = 64) {
  CurveConfig c;
  c.grid = grid;
  c.opt.multistart = 2;
  c.opt.seed = 5;
  return c;
}

CQState uniform_bit() {
  CQState cq;
  cq.probs = {0.5, 0.5};
  cq.cond = {Mat::Identity(1, 1), Mat::Identity(1, 1)};
  return cq;
}

}  // namespace

TEST_SUITE("exponent") {

TEST_CASE("pure state against the maximally mixed qubit") {
  auto c = exponent_dmax(ket_projector(2, 0), 0.5 * Mat::Identity(2, 2), 0.0, small_grid(128));
  CHECK(c.supremum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.argmax == doctest::Approx(0.5));
  CHECK_FALSE(c.infinite);
  CHECK(c.alphas.size() == c.values.size());
  CHECK(c.alphas.front() == doctest::Approx(0.5));
  CHECK(c.alphas.back() == doctest::Approx(1.0));
}

TEST_CASE("orthogonal supports give an infinite exponent") {
  auto c = exponent_dmax(ket_projector(2, 0), ket_projector(2, 1), 0.3, small_grid());
  CHECK(c.infinite);
  CHECK(std::isinf(c.supremum));
}

TEST_CASE("rates at or above the relative entropy give zero") {
  Rng rng(501);
  for (int t = 0; t < 5; ++t) {
    Mat rho = gen_state(3, rng.integer(1, 3), rng);
    Mat sigma = gen_full_rank(3, rng);
    double r = umegaki(rho, sigma) + rng.uniform(0.0, 0.5);
    auto c = exponent_dmax(rho, sigma, r, small_grid());
    CHECK(std::abs(c.supremum) <= 1e-9);
    CHECK(c.argmax == doctest::Approx(1.0));
  }
}

TEST_CASE("exponent curve is non-increasing in the rate") {
  Rng rng(502);
  Mat rho = gen_full_rank(2, rng);
  Mat sigma = gen_full_rank(2, rng);
  double prev = INFINITY;
  for (double r : {0.0, 0.05, 0.1, 0.2}) {
    double s = exponent_dmax(rho, sigma, r, small_grid()).supremum;
    CHECK(s <= prev + 1e-12);
    prev = s;
  }
}

TEST_CASE("privacy amplification of a uniform bit") {
  CHECK(exponent_pa(uniform_bit(), 2.0, small_grid()).supremum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(exponent_pa(uniform_bit(), 1.0, small_grid()).supremum) <= 1e-9);
}

TEST_CASE("decoupling a product state costs nothing") {
  Rng rng(503);
  Mat rho = kron(gen_full_rank(2, rng), gen_full_rank(2, rng));
  auto c = exponent_dec(rho, 2, 2, 0.5, 1, small_grid(16));
  CHECK(std::abs(c.supremum) <= 1e-7);
  CHECK(c.label == "upper-bound");
}

TEST_CASE("maximally entangled decoupling at one qubit") {
  auto c = exponent_dec(maximally_entangled(2), 2, 2, 1.0, 1, small_grid(16));
  CHECK(std::abs(c.supremum) <= 1e-7);
}

TEST_CASE("dual forms at trivial rates") {
  Rng rng(504);
  Mat rho = gen_full_rank(2, rng);
  OptimizerConfig cfg;
  cfg.multistart = 3;
  CHECK(std::abs(dual_dmax(rho, rho, 0.0, cfg).value) <= 1e-7);
  Mat sigma = gen_full_rank(2, rng);
  CHECK(std::abs(dual_dmax(rho, sigma, umegaki(rho, sigma) + 1.0, cfg).value) <= 1e-7);
}

TEST_CASE("dual value matches the log-Euclidean curve") {
  Rng rng(505);
  for (int t = 0; t < 3; ++t) {
    Mat rho = gen_full_rank(2, rng);
    Mat sigma = gen_full_rank(2, rng);
    double r = 0.5 * umegaki(rho, sigma);
    double sup = exponent_dmax(rho, sigma, r, small_grid(), DivergenceKind::kLogEuclidean).supremum;
    OptimizerConfig cfg;
    cfg.multistart = 4;
    cfg.tol = 1e-11;
    auto d = dual_dmax(rho, sigma, r, cfg);
    CHECK(std::abs(sup - d.value) <= 2e-4);
    CHECK_FALSE(d.branch.empty());
  }
}

TEST_CASE("flat variational form reproduces the log-Euclidean divergence") {
  Rng rng(506);
  Mat rho = gen_state(3, 2, rng);
  Mat sigma = gen_full_rank(3, rng);
  OptimizerConfig cfg;
  cfg.multistart = 3;
  cfg.tol = 1e-11;
  for (double a : {0.3, 0.7}) {
    CHECK(std::abs(flat_variational(rho, sigma, a, cfg) - log_euclidean(rho, sigma, a)) <= 2e-4);
  }
}

}  // TEST_SUITE
