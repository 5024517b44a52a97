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

// Acceptance runner: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "renyi/divergence.hpp"
#include "renyi/exponent.hpp"
#include "renyi/protocols.hpp"
#include "renyi/state.hpp"
#include "renyi/types.hpp"
#include "renyi/verify.hpp"

using namespace renyi;

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Runs each named check for `trials` instances; passes when none fails.
Outcome checks(const std::vector<std::string>& names, int trials) {
  Outcome o{true, ""};
  std::ostringstream os;
  for (const auto& n : names) {
    CheckReport r = run_check(n, trials, kSeed);
    if (!r.ok()) o.pass = false;
    os << n << " " << r.instances << " inst " << r.failures.size() << " fail (max violation "
       << format_number(r.max_violation) << "); ";
    for (size_t k = 0; k < r.failures.size() && k < 3; ++k) {
      const Failure& f = r.failures[k];
      os << "[" << f.label << " seed " << f.seed << " observed " << format_number(f.observed) << " bound "
         << format_number(f.bound) << "] ";
    }
  }
  o.detail = os.str();
  return o;
}

Outcome criterion_1() {
  std::vector<double> p = {0.7, 0.3}, q = {0.5, 0.5};
  const double r = 0.05;
  ConvergenceReport rep = convergence_report(p, q, r, {50, 100, 200});
  auto diag = [](const std::vector<double>& x) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = x[0];
    m(1, 1) = x[1];
    return m;
  };
  double sup = exponent_dmax(diag(p), diag(q), r).supremum;
  std::vector<double> gaps;
  for (const auto& row : rep.rows) gaps.push_back(std::abs(row.minus_log_one_minus_eps_over_n - sup));
  bool pass = gaps.size() == 3 && gaps[2] <= 0.08 && gaps[1] < gaps[0] && gaps[2] < gaps[1];
  std::ostringstream os;
  os << "supremum " << format_number(sup) << ", gaps n=50,100,200: " << format_number(gaps[0]) << ", "
     << format_number(gaps[1]) << ", " << format_number(gaps[2]);
  return {pass, os.str()};
}

Outcome criterion_7() {
  CQState cq;
  cq.probs = {0.5, 0.5};
  cq.cond = {Mat::Identity(1, 1), Mat::Identity(1, 1)};
  const double r = 2.0;
  double e = exponent_pa(cq, r).supremum;
  bool pass = std::abs(e - 1.0) <= 1e-9;
  std::ostringstream os;
  os << "exponent " << format_number(e) << "; injective rates";
  for (int n : {2, 4, 6}) {
    int nz = 1 << static_cast<int>(r * n);
    double perf = pa_performance(cq, HashFunction::injective(n, 2, nz)).value;
    double rate = -std::log2(perf) / n;
    pass = pass && std::abs(rate - 1.0) <= 1e-9;
    os << " " << format_number(rate);
  }
  PaDecayConfig cfg;
  cfg.samples = 8;
  cfg.seed = kSeed;
  double worst = INFINITY;
  for (const PaDecayRow& row : pa_decay_experiment(cq, r, {2, 4, 6}, cfg)) {
    for (double rate : row.rates) worst = std::min(worst, rate);
  }
  pass = pass && worst >= 1.0 - 1e-6;
  os << "; worst sampled rate " << format_number(worst);
  return {pass, os.str()};
}

Outcome criterion_9() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = v(5) = 1.0 / std::sqrt(2.0);  // |00> + |11> on R (x) A with |R| = 2, |A| = 4
  Mat psi = v * v.adjoint();
  HaarDecouplingReport rep = haar_decoupling_check(psi, 2, 4, 2, 500, kSeed);
  std::ostringstream os;
  os << "mean " << format_number(rep.mean) << ", bound " << format_number(rep.bound) << ", standard error "
     << format_number(rep.standard_error);
  return {rep.holds && rep.mean <= rep.bound + 3.0 * rep.standard_error, os.str()};
}

Outcome criterion_10() {
  Rng rng(kSeed);
  int all_alpha = 0, pairs = 0;
  for (int i = 0; i < 20; ++i) {
    Mat rho = random_density({2}, 2, rng).matrix();
    Mat sigma = random_density({2}, 2, rng).matrix();
    bool every = true;
    for (double a : {0.5, 0.7, 0.9}) {
      std::vector<double> g = blocking_gaps(rho, sigma, a, 3);
      bool shrinks = g[2] < g[0];
      pairs += shrinks ? 1 : 0;
      every = every && shrinks;
    }
    all_alpha += every ? 1 : 0;
  }
  std::ostringstream os;
  os << all_alpha << "/20 instances shrink at every alpha (" << pairs << "/60 instance-alpha pairs)";
  return {all_alpha >= 18, os.str()};
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "commutative exponent convergence", 30, criterion_1},
      {2, "variational dualities", 300,
       [] { return checks({"variational-dmax", "variational-pa", "variational-dec"}, 25); }},
      {3, "divergence properties", 120,
       [] { return checks({"alpha-monotonicity", "sigma-monotonicity", "data-processing"}, 200); }},
      {4, "duality relations", 180, [] { return checks({"duality-conditional", "duality-petz"}, 25); }},
      {5, "matrix inequalities", 180,
       [] {
         return checks({"lwd-general", "lwd", "fidelity-relative-entropy", "block-fidelity", "pinching-inequality"},
                       200);
       }},
      {6, "smoothing certification", 300, [] { return checks({"smoothing-certified"}, 30); }},
      {7, "privacy amplification exact instance", 60, criterion_7},
      {8, "optimality floors", 600, [] { return checks({"pa-floor", "dec-floor"}, 50); }},
      {9, "Haar one-shot decoupling", 120, criterion_9},
      {10, "blocking-limit trend", 120, criterion_10},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs <= c.budget_seconds;
    bool pass = o.pass && in_budget;
    failed += pass ? 0 : 1;
    std::printf("criterion %d (%s): %s  %.1f s of %.0f s budget%s  %s\n", c.id, c.name.c_str(), pass ? "PASS" : "FAIL",
                secs, c.budget_seconds, in_budget ? "" : " (over budget)", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed;
}
