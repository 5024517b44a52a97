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
#include <vector>

#include "doctest.h"
#include "renyi/divergence.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

namespace {

double scalar_q(const std::vector<double>& p, const std::vector<double>& q, double a) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] > 0.0) s += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
  }
  return s;
}

}  // namespace

TEST_SUITE("divergence") {

TEST_CASE("sandwiched quasi-entropy closed forms") {
  Rng rng(301);
  Mat r = gen_state(3, 2, rng);
  CHECK(q_star(r, r, 0.7) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(q_star(ket_projector(2, 0), 0.5 * Mat::Identity(2, 2), 0.5) == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(std::abs(q_star(gen_diagonal({0.5, 0.5}), gen_diagonal({0.9, 0.1}), 0.7) -
                 scalar_q({0.5, 0.5}, {0.9, 0.1}, 0.7)) <= 1e-12);
}

TEST_CASE("every kind vanishes on identical states") {
  Rng rng(302);
  Mat r = gen_state(3, 3, rng);
  for (auto kind : {DivergenceKind::kUmegaki, DivergenceKind::kSandwiched, DivergenceKind::kPetz,
                    DivergenceKind::kLogEuclidean, DivergenceKind::kMax}) {
    for (double a : {0.5, 0.8, 1.5}) {
      CHECK(std::abs(divergence(r, r, {kind, a, 0.0}).value) <= 1e-9);
    }
  }
}

TEST_CASE("pure state against the maximally mixed state") {
  Rng rng(303);
  Mat psi = gen_pure(2, rng);
  for (double a : {0.3, 0.5, 0.9, 2.0}) CHECK(sandwiched(psi, 0.5 * Mat::Identity(2, 2), a) == doctest::Approx(1.0));
}

TEST_CASE("kinds coincide on commuting pairs") {
  Rng rng(304);
  for (int t = 0; t < 20; ++t) {
    int d = rng.integer(2, 4);
    auto p = gen_distribution(d, rng);
    auto q = gen_distribution(d, rng);
    Mat u = random_unitary(d, rng);
    Mat rho = u * gen_diagonal(p) * u.adjoint();
    Mat sigma = u * gen_diagonal(q) * u.adjoint();
    double a = rng.uniform(0.1, 0.95);
    double oracle = std::log2(scalar_q(p, q, a)) / (a - 1.0);
    CHECK(std::abs(sandwiched(rho, sigma, a) - oracle) <= 1e-10);
    CHECK(std::abs(petz(rho, sigma, a) - oracle) <= 1e-10);
    CHECK(std::abs(log_euclidean(rho, sigma, a) - oracle) <= 1e-10);
  }
}

TEST_CASE("Petz divergence of uniform against identity is minus the entropy") {
  for (double a : {0.3, 0.7, 1.5}) {
    CHECK(petz(gen_diagonal({0.5, 0.5}), Mat::Identity(2, 2), a) == doctest::Approx(-1.0));
  }
}

TEST_CASE("support predicates") {
  Mat p0 = ket_projector(2, 0);
  Mat p1 = ket_projector(2, 1);
  Mat mix = 0.5 * Mat::Identity(2, 2);
  DivergenceValue v = divergence(p0, p1, {DivergenceKind::kSandwiched, 0.5, 0.0});
  CHECK_FALSE(v.finite);
  CHECK(v.support_case == SupportCase::kOrthogonal);
  CHECK_FALSE(divergence(mix, p0, {DivergenceKind::kUmegaki, 1.0, 0.0}).finite);
  CHECK_FALSE(divergence(mix, p0, {DivergenceKind::kSandwiched, 1.5, 0.0}).finite);
  DivergenceValue w = divergence(mix, p0, {DivergenceKind::kSandwiched, 0.5, 0.0});
  CHECK(w.finite);
  CHECK(w.support_case == SupportCase::kOverlapping);
  CHECK(w.value == doctest::Approx(1.0));
  CHECK(std::isinf(max_divergence(mix, p0)));
  CHECK_THROWS_AS(divergence(mix, mix, {DivergenceKind::kSandwiched, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(divergence(mix, mix, {DivergenceKind::kPetz, -1.0, 0.0}), ValidationError);
}

TEST_CASE("max divergence") {
  CHECK(max_divergence(gen_diagonal({0.7, 0.3}), gen_diagonal({0.5, 0.5})) == doctest::Approx(std::log2(1.4)));
  Rng rng(305);
  for (int t = 0; t < 20; ++t) {
    Mat rho = gen_state(3, rng.integer(1, 3), rng);
    Mat sigma = gen_full_rank(3, rng);
    double dm = max_divergence(rho, sigma);
    CHECK(min_eigenvalue(std::exp2(dm) * sigma - rho) >= -1e-9);
    // The sandwiched family approaches D_max from below as alpha grows.
    CHECK(sandwiched(rho, sigma, 50.0) <= dm + 1e-9);
  }
}

TEST_CASE("log-Euclidean projected limit matches the regularized evaluation") {
  Rng rng(306);
  for (int t = 0; t < 10; ++t) {
    Mat u = random_unitary(3, rng);
    Mat rho = u * gen_diagonal({0.6, 0.4, 0.0}) * u.adjoint();
    Mat sigma = u * gen_diagonal({0.2, 0.5, 0.0}) * u.adjoint();
    sigma /= trace_real(sigma);
    auto c = check_log_euclidean_limit(rho, sigma, rng.uniform(0.2, 0.9));
    CHECK(c.agrees);
    CHECK(c.discrepancy <= 1e-5);
  }
}

TEST_CASE("evaluator gradient matches finite differences") {
  Rng rng(307);
  for (auto kind : {DivergenceKind::kUmegaki, DivergenceKind::kSandwiched, DivergenceKind::kPetz,
                    DivergenceKind::kLogEuclidean}) {
    Mat rho = gen_state(3, 2, rng);
    Mat sigma = gen_full_rank(3, rng);
    DivergenceEvaluator ev(rho, kind, 0.7);
    Mat g;
    double v = ev(sigma, &g);
    CHECK(v == doctest::Approx(divergence(rho, sigma, {kind, 0.7, 0.0}).value).epsilon(1e-10));
    Mat dir = gen_hermitian(3, rng);
    const double h = 1e-6;
    double fd = (ev(sigma + h * dir) - ev(sigma - h * dir)) / (2.0 * h);
    CHECK(std::abs(fd - (g * dir).trace().real()) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("diagonal evaluation agrees with the spectral path") {
  Rng rng(308);
  for (auto kind : {DivergenceKind::kUmegaki, DivergenceKind::kSandwiched, DivergenceKind::kPetz,
                    DivergenceKind::kLogEuclidean}) {
    for (int t = 0; t < 5; ++t) {
      auto p = gen_distribution(4, rng);
      p[rng.integer(0, 3)] = 0.0;
      double tot = p[0] + p[1] + p[2] + p[3];
      for (double& x : p) x /= tot;
      Mat rho = gen_diagonal(p);
      Mat sigma = gen_diagonal(gen_distribution(4, rng));
      Mat u = random_unitary(4, rng);
      double a = rng.uniform(0.5, 1.8);
      DivergenceEvaluator diag(rho, kind, a);
      DivergenceEvaluator dense(u * rho * u.adjoint(), kind, a);
      Mat g1, g2;
      double v1 = diag(sigma, &g1);
      double v2 = dense(u * sigma * u.adjoint(), &g2);
      CHECK(std::abs(v1 - v2) <= 1e-10 * std::max(1.0, std::abs(v1)));
      CHECK(max_abs_diff(u * g1 * u.adjoint(), g2) <= 1e-8 * std::max(1.0, g2.cwiseAbs().maxCoeff()));
    }
  }
}

}  // TEST_SUITE
