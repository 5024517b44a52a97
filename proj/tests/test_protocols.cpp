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
#include "renyi/entropy.hpp"
#include "renyi/exponent.hpp"
#include "renyi/protocols.hpp"
#include "support.hpp"

using namespace renyi;
using namespace renyi::testing;

namespace {

CQState uniform_bit() {
  CQState cq;
  cq.probs = {0.5, 0.5};
  cq.cond = {Mat::Identity(1, 1), Mat::Identity(1, 1)};
  return cq;
}

DecouplingScheme identity_scheme(int da, int d_tilde) {
  DecouplingScheme s;
  s.unitary = Mat::Identity(da, da);
  s.d_tilde = d_tilde;
  s.d_bar = da / d_tilde;
  return s;
}

OptimizerConfig quick() {
  OptimizerConfig c;
  c.multistart = 3;
  c.tol = 1e-11;
  return c;
}

}  // namespace

TEST_SUITE("protocols") {

TEST_CASE("hash constructors") {
  auto inj = HashFunction::injective(3, 2, 8);
  CHECK(inj.table.size() == 8);
  for (int x = 0; x < 8; ++x) CHECK(inj.table[x] == x);
  CHECK_THROWS_AS(HashFunction::injective(3, 2, 4), ValidationError);
  auto c = HashFunction::constant(2, 3, 5);
  for (int v : c.table) CHECK(v == 0);
  Rng rng(701);
  auto r = HashFunction::random(4, 2, 3, rng);
  CHECK(r.table.size() == 16);
  for (int v : r.table) CHECK((v >= 0 && v < 3));
  HashFunction bad = inj;
  bad.table[0] = 9;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("trivial environment performance") {
  CQState cq = uniform_bit();
  for (int n : {1, 2, 3}) {
    int size = 1 << n;
    int nz = 4 * size;
    CHECK(pa_performance(cq, HashFunction::injective(n, 2, nz)).value ==
          doctest::Approx(static_cast<double>(size) / nz));
    CHECK(pa_performance(cq, HashFunction::constant(n, 2, nz)).value == doctest::Approx(1.0 / nz));
    CHECK(pa_performance(cq, HashFunction::constant(n, 2, 1)).value == doctest::Approx(1.0));
  }
}

TEST_CASE("quantum side information bounds") {
  Rng rng(702);
  CQState cq = random_cq(2, 2, rng);
  auto f = HashFunction::random(2, 2, 2, rng);
  auto p = pa_performance(cq, f, quick());
  CHECK(p.value > 0.0);
  CHECK(p.value <= p.upper + 1e-12);
  CHECK(p.upper <= 1.0 + 1e-12);
  CHECK(trace_real(p.omega) == doctest::Approx(1.0));
  // Relabelling outputs leaves the performance unchanged.
  auto g = f;
  for (int& v : g.table) v = 1 - v;
  CHECK(pa_performance(cq, g, quick()).value == doctest::Approx(p.value).epsilon(1e-7));
}

TEST_CASE("decay experiment on the uniform bit") {
  PaDecayConfig cfg;
  cfg.samples = 3;
  auto rows = pa_decay_experiment(uniform_bit(), 2.0, {2, 4}, cfg);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.output_size == 1 << (2 * row.n));
    CHECK(row.floor == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.best_rate >= 1.0 - 1e-9);
    CHECK(row.floor_holds);
  }
  CHECK(parse_hash_strategy("best-of-k") == HashStrategy::kBestOfK);
  CHECK_THROWS_AS(parse_hash_strategy("greedy"), ValidationError);
}

TEST_CASE("decoupling performance closed forms") {
  Rng rng(703);
  Mat prod = kron(gen_full_rank(2, rng), gen_full_rank(2, rng));
  CHECK(dec_performance(prod, 2, 2, identity_scheme(2, 1), quick()).value == doctest::Approx(1.0).epsilon(1e-7));
  Mat any = gen_full_rank(4, rng);
  CHECK(dec_performance(any, 2, 2, identity_scheme(2, 2), quick()).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(dec_performance(maximally_entangled(2), 2, 2, identity_scheme(2, 1), quick()).value ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("decoupling schemes are validated") {
  Rng rng(704);
  auto s = DecouplingScheme::random(4, 2, rng);
  CHECK(s.d_bar == 2);
  CHECK_NOTHROW(s.validate(4));
  s.unitary(0, 0) += 0.1;
  CHECK_THROWS_AS(s.validate(4), ValidationError);
  CHECK_THROWS_AS(DecouplingScheme::random(4, 3, rng), ValidationError);
  CHECK_THROWS_AS(dec_performance(maximally_entangled(2), 2, 3, identity_scheme(2, 1)), ValidationError);
}

TEST_CASE("Haar decoupling check") {
  auto rep = haar_decoupling_check(maximally_entangled(2), 2, 2, 2, 200, 9);
  CHECK(rep.samples == 200);
  CHECK(rep.holds);
  CHECK(rep.bound == doctest::Approx(1.25).epsilon(1e-12));
  auto a = haar_decoupling_check(maximally_entangled(2), 2, 2, 2, 100, 3, 1);
  auto b = haar_decoupling_check(maximally_entangled(2), 2, 2, 2, 100, 3, 2);
  CHECK(a.mean == b.mean);
  CHECK_THROWS_AS(haar_decoupling_check(maximally_entangled(2), 2, 2, 2, 50, 1), ValidationError);
}

}  // TEST_SUITE
