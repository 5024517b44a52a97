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
#include "renyi/exponent.hpp"
#include "renyi/types.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

TEST_SUITE("types") {

TEST_CASE("type enumeration") {
  auto t = build_type_table({0.5, 0.5}, {0.5, 0.5}, 2);
  REQUIRE(t.size() == 3);
  // Compositions in lexicographic order: (0,2), (1,1), (2,0).
  CHECK(t.types[1] == std::vector<int>{1, 1});
  CHECK(t.log2_class_size[1] == doctest::Approx(1.0));
  CHECK(std::abs(t.log2_class_size[0]) <= 1e-12);
  auto big = build_type_table({0.2, 0.3, 0.5}, {0.3, 0.3, 0.4}, 10);
  CHECK(big.size() == 66);
  CHECK(std::abs(big.log2_total_p()) <= 1e-10);
}

TEST_CASE("class sizes match binomial coefficients") {
  auto t = build_type_table({0.7, 0.3}, {0.5, 0.5}, 20);
  for (size_t i = 0; i < t.size(); ++i) {
    int k = t.types[i][0];
    double exact = std::lgamma(21.0) - std::lgamma(k + 1.0) - std::lgamma(21.0 - k);
    CHECK(t.log2_class_size[i] == doctest::Approx(exact / std::log(2.0)).epsilon(1e-10));
  }
}

TEST_CASE("size limits are enforced") {
  CHECK_THROWS_AS(build_type_table({0.2, 0.2, 0.2, 0.2, 0.2}, {0.2, 0.2, 0.2, 0.2, 0.2}, 3), ValidationError);
  CHECK_THROWS_AS(build_type_table({0.5, 0.5}, {0.5, 0.5}, 401), ValidationError);
  CHECK_THROWS_AS(build_type_table({0.5, 0.5}, {0.5, 0.5, 0.0}, 4), ValidationError);
}

TEST_CASE("one-shot optimum for identical sources") {
  auto f = finite_n_optimum({0.5, 0.5}, {0.5, 0.5}, -1.0, 1);
  CHECK(f.a_n == doctest::Approx(std::sqrt(0.5)));
  CHECK(f.epsilon == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("binary convergence instance") {
  std::vector<double> p = {0.7, 0.3};
  std::vector<double> q = {0.5, 0.5};
  auto rep = convergence_report(p, q, 0.05, {50, 100, 200});
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.bounds_hold);
  CHECK(rep.rows[2].gap <= 0.08);
  CHECK(rep.rows[1].gap < rep.rows[0].gap);
  CHECK(rep.rows[2].gap < rep.rows[1].gap);
  CurveConfig cfg;
  cfg.grid = 256;
  double sup = exponent_dmax(gen_diagonal(p), gen_diagonal(q), 0.05, cfg).supremum;
  CHECK(std::abs(sup - rep.asymptote) <= 1e-8);
  CHECK(std::abs(classical_exponent(p, q, 0.05).value - rep.asymptote) <= 1e-12);
  CHECK(rep.to_csv().rfind("n,A_n,epsilon,", 0) == 0);
}

TEST_CASE("rates above the max divergence give zeros") {
  auto rep = convergence_report({0.7, 0.3}, {0.5, 0.5}, 1.0, {10, 20});
  CHECK(rep.asymptote == 0.0);
  for (const auto& row : rep.rows) CHECK(std::abs(row.minus_log_one_minus_eps_over_n) <= 1e-12);
}

TEST_CASE("orthogonal sources") {
  auto rep = convergence_report({1.0, 0.0}, {0.0, 1.0}, 0.2, {5, 10});
  CHECK(std::isinf(rep.asymptote));
  for (const auto& row : rep.rows) CHECK(std::isinf(row.minus_log_one_minus_eps_over_n));
}

TEST_CASE("classical Renyi quantities") {
  std::vector<double> p = {0.7, 0.3};
  std::vector<double> q = {0.5, 0.5};
  double kl = 0.7 * std::log2(1.4) + 0.3 * std::log2(0.6);
  CHECK(classical_kl(p, q) == doctest::Approx(kl));
  CHECK(classical_renyi(p, q, 1.0) == doctest::Approx(kl));
  CHECK(classical_dmax(p, q) == doctest::Approx(std::log2(1.4)));
  double a = 0.5;
  double q_half = std::sqrt(0.35) + std::sqrt(0.15);
  CHECK(classical_renyi(p, q, a) == doctest::Approx(std::log2(q_half) / (a - 1.0)));
  CHECK(classical_inf_form(p, q, 0.05) == doctest::Approx(classical_exponent(p, q, 0.05).value).epsilon(1e-7));
}

}  // TEST_SUITE
