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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "renyi/verify.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

TEST_SUITE("verify") {

TEST_CASE("suite and check registry") {
  auto suites = suite_names();
  CHECK(std::find(suites.begin(), suites.end(), "all") != suites.end());
  CHECK(std::find(suites.begin(), suites.end(), "divergence-props") != suites.end());
  auto checks = check_names("smoothing");
  CHECK(std::find(checks.begin(), checks.end(), "smoothing-certified") != checks.end());
  CHECK_THROWS_AS(check_names("nonsense"), ValidationError);
  CHECK_THROWS_AS(run_check("nonsense", 1, 1), ValidationError);
  CHECK_THROWS_AS(run_check("data-processing", 0, 1), ValidationError);
  CHECK_THROWS_AS(run_suite("types", 0, 1), ValidationError);
}

TEST_CASE("seeded runs are deterministic") {
  auto a = run_suite("types", 3, 42);
  auto b = run_suite("types", 3, 42);
  CHECK(a.ok());
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_json() == b.to_json());
  VerifyConfig two;
  two.threads = 2;
  CHECK(run_check("alpha-monotonicity", 6, 9).max_violation ==
        run_check("alpha-monotonicity", 6, 9, two).max_violation);
}

TEST_CASE("replay reproduces a recorded failure") {
  // A zero tolerance scale turns round-off into failures with known seeds.
  VerifyConfig strict;
  strict.tol_scale = 0.0;
  auto rep = run_check("partial-trace-kron", 30, 3, strict);
  REQUIRE_FALSE(rep.failures.empty());
  const Failure& f = rep.failures.front();
  auto again = replay_instance("partial-trace-kron", f.seed, strict);
  REQUIRE_FALSE(again.failures.empty());
  CHECK(again.failures.front().digest == f.digest);
  CHECK(again.failures.front().observed == f.observed);
  CHECK(replay_instance("partial-trace-kron", f.seed).ok());
}

TEST_CASE("curve CSV") {
  ExponentCurve c;
  c.alphas = {0.5, 1.0};
  c.payoffs = {1.0, 0.0};
  c.values = {1.0, 0.0};
  c.supremum = 1.0;
  c.argmax = 0.5;
  std::string csv = curve_csv(c);
  CHECK(csv.rfind("alpha,payoff,weighted_value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("supremum") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(INFINITY) == "inf");
}

TEST_CASE("blocking gaps shrink on a commuting pair") {
  auto g = blocking_gaps(gen_diagonal({0.7, 0.3}), gen_diagonal({0.4, 0.6}), 0.7, 3);
  REQUIRE(g.size() == 3);
  for (double v : g) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("file output errors name the path") {
  try {
    write_text_file("/nonexistent-dir/x.csv", "a");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
}

}  // TEST_SUITE
