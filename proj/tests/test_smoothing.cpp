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
#include "renyi/smoothing.hpp"
#include "renyi/types.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

TEST_SUITE("smoothing") {

TEST_CASE("classical water-filling closed forms") {
  auto a = smooth_classical({0.5, 0.5}, {0.5, 0.5}, -1.0);
  CHECK(a.epsilon == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(a.t[0] == doctest::Approx(0.25));
  auto b = smooth_classical({0.7, 0.3}, {0.5, 0.5}, classical_dmax({0.7, 0.3}, {0.5, 0.5}));
  CHECK(std::abs(b.epsilon) <= 1e-9);
  auto c = smooth_classical({1.0, 0.0}, {0.0, 1.0}, 3.0);
  CHECK(c.epsilon == doctest::Approx(1.0));
}

TEST_CASE("classical solution respects the caps") {
  Rng rng(601);
  for (int t = 0; t < 50; ++t) {
    int n = rng.integer(2, 5);
    auto p = gen_distribution(n, rng);
    auto q = gen_distribution(n, rng);
    double lambda = rng.uniform(-1.0, 2.0);
    auto s = smooth_classical(p, q, lambda);
    double total = 0.0, f = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(s.t[i] <= std::exp2(lambda) * q[i] * (1.0 + 1e-12) + 1e-15);
      total += s.t[i];
      f += std::sqrt(p[i] * s.t[i]);
    }
    CHECK(total <= 1.0 + 1e-12);
    CHECK(s.fidelity == doctest::Approx(f).epsilon(1e-9));
    CHECK(std::abs(s.epsilon - std::sqrt(std::max(0.0, 1.0 - f * f))) <= 1e-7);
  }
}

TEST_CASE("log-domain water-filling agrees with the direct solver") {
  std::vector<double> p = {0.6, 0.3, 0.1};
  std::vector<double> q = {0.2, 0.2, 0.6};
  const double lambda = 0.3;
  std::vector<double> lp, lc;
  for (size_t i = 0; i < p.size(); ++i) {
    lp.push_back(std::log(p[i]));
    lc.push_back(std::log(std::exp2(lambda) * q[i]));
  }
  CHECK(std::exp(water_fill_log_fidelity(lp, lc)) == doctest::Approx(smooth_classical(p, q, lambda).fidelity));
}

TEST_CASE("quantum solver on simple instances") {
  Mat psi = ket_projector(2, 0);
  Mat mix = 0.5 * Mat::Identity(2, 2);
  auto a = smooth_quantum(psi, mix, 0.0);
  CHECK(a.epsilon == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(a.certified);
  Rng rng(602);
  Mat rho = gen_full_rank(2, rng);
  Mat sigma = gen_full_rank(2, rng);
  auto b = smooth_quantum(rho, sigma, max_divergence(rho, sigma) + 0.01);
  CHECK(std::abs(b.epsilon) <= 1e-9);
  auto c = smooth_quantum(psi, ket_projector(2, 1), 1.0);
  CHECK(c.epsilon == doctest::Approx(1.0));
}

TEST_CASE("quantum solver brackets and stays feasible") {
  Rng rng(603);
  for (int t = 0; t < 6; ++t) {
    int d = rng.integer(2, 3);
    Mat rho = gen_state(d, rng.integer(1, d), rng);
    Mat sigma = gen_full_rank(d, rng);
    double lambda = rng.uniform(-0.5, 1.0);
    auto r = smooth_quantum(rho, sigma, lambda);
    CHECK(r.epsilon_lower <= r.epsilon + 1e-12);
    CHECK(r.epsilon - r.epsilon_lower <= 5e-3);
    CHECK(r.cap_residual >= -1e-9);
    CHECK(r.trace_slack >= -1e-9);
    CHECK(min_eigenvalue(r.rho_tilde) >= -1e-9);
    CHECK(min_eigenvalue(std::exp2(lambda) * sigma - r.rho_tilde) >= -1e-9);
    CHECK(r.epsilon == doctest::Approx(purified_distance(rho, r.rho_tilde)).epsilon(1e-7));
  }
}

TEST_CASE("commuting inputs match the classical solver") {
  Rng rng(604);
  for (int t = 0; t < 10; ++t) {
    auto pq = gen_commuting(3, rng);
    double lambda = rng.uniform(-0.5, 1.0);
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(pq.first + 0.6180339887 * pq.second));
    Mat u = es.eigenvectors();
    std::vector<double> p, q;
    for (int i = 0; i < 3; ++i) {
      p.push_back((u.col(i).adjoint() * pq.first * u.col(i))(0, 0).real());
      q.push_back((u.col(i).adjoint() * pq.second * u.col(i))(0, 0).real());
    }
    auto r = smooth_quantum(pq.first, pq.second, lambda);
    CHECK(std::abs(r.epsilon - smooth_classical(p, q, lambda).epsilon) <= 1e-6);
  }
}

TEST_CASE("subnormalized input is rejected") {
  DensityMatrix half({2}, 0.25 * Mat::Identity(2, 2), Normalization::kSubnormalized);
  CHECK_THROWS_AS(smooth_quantum(half, Mat::Identity(2, 2) / 2.0, 0.0), ValidationError);
}

TEST_CASE("pinching sandwich and Uhlmann lift") {
  Rng rng(605);
  Mat sigma = gen_diagonal({0.5, 0.3, 0.2});
  std::vector<Mat> proj = {ket_projector(3, 0), ket_projector(3, 1), ket_projector(3, 2)};
  for (int t = 0; t < 4; ++t) {
    Mat rho = gen_state(3, rng.integer(1, 3), rng);
    auto ps = pinching_sandwich(rho, sigma, rng.uniform(-0.3, 0.8), proj);
    CHECK(ps.holds);
    CHECK(ps.blocks == 3);
    CHECK(ps.pinched <= ps.original + 1e-6);
    CHECK(ps.original <= ps.pinched_shifted + 1e-6);
  }
  Mat rho_d = gen_diagonal({0.6, 0.3, 0.1});
  Mat sig_d = gen_diagonal({0.2, 0.5, 0.3});
  Mat rt = gen_full_rank(3, rng);
  // Any state whose pinching is rho_d: keep rt's off-diagonal phases, fix its diagonal.
  Mat off = rt;
  for (int i = 0; i < 3; ++i) off(i, i) = rho_d(i, i);
  off = 0.3 * off + 0.7 * rho_d;
  for (int i = 0; i < 3; ++i) off(i, i) = rho_d(i, i);
  REQUIRE(min_eigenvalue(off) >= 0.0);
  Mat lifted = uhlmann_block_lift(rho_d, sig_d, proj, off);
  for (int i = 0; i < 3; ++i) CHECK(lifted(i, i).real() == doctest::Approx(sig_d(i, i).real()).epsilon(1e-9));
  CHECK(fidelity(off, lifted) == doctest::Approx(fidelity(rho_d, sig_d)).epsilon(1e-7));
}

TEST_CASE("smoothed max divergence inverts the smoothing quantity") {
  std::vector<double> p = {0.7, 0.3};
  std::vector<double> q = {0.5, 0.5};
  double l = smoothed_max_divergence(gen_diagonal(p), gen_diagonal(q), 0.1);
  CHECK(l <= classical_dmax(p, q) + 1e-9);
  CHECK(smooth_classical(p, q, l).epsilon <= 0.1 + 1e-6);
  CHECK(smooth_classical(p, q, l - 1e-3).epsilon > 0.1 - 1e-6);
}

}  // TEST_SUITE
