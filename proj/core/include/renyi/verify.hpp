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

#ifndef RENYI_VERIFY_HPP
#define RENYI_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "renyi/exponent.hpp"
#include "renyi/linalg.hpp"
#include "renyi/types.hpp"

namespace renyi {

struct VerifyConfig {
  double tol_scale = 1.0;  // multiplies every tolerance
  int threads = 1;
};

// One violated expectation. Rerunning the check with replay_instance and the
// recorded seed reproduces it.
struct Failure {
  std::string check;
  std::string label;
  std::uint64_t seed = 0;
  std::string digest;  // FNV-1a of the generated inputs
  double observed = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
};

struct CheckReport {
  std::string name;
  std::string suite;
  int instances = 0;
  int expectations = 0;
  std::vector<Failure> failures;
  double max_violation = 0.0;  // largest observed - bound over all expectations
  double wall_seconds = 0.0;

  bool ok() const { return failures.empty(); }
  int failures_with_label(const std::string& label) const;
};

struct SuiteReport {
  std::string name;
  int instances = 0;
  std::vector<Failure> failures;
  double wall_seconds = 0.0;
  std::vector<CheckReport> checks;
  std::vector<SuiteReport> children;

  bool ok() const { return failures.empty(); }
  // Wall times are omitted unless requested so seeded output is byte-stable.
  std::string to_text(bool timing = false) const;
  std::string to_json(bool timing = false) const;
};

std::vector<std::string> suite_names();
std::vector<std::string> check_names(const std::string& suite);

// Runs `trials` random instances of one named check. Throws ValidationError for
// unknown names or trials < 1.
CheckReport run_check(const std::string& name, int trials, std::uint64_t seed, const VerifyConfig& cfg = {});
CheckReport replay_instance(const std::string& name, std::uint64_t instance_seed, const VerifyConfig& cfg = {});

// Expensive checks run ceil(trials / cost) instances inside a suite.
SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed, const VerifyConfig& cfg = {});

// |(1/m) D*_alpha(E(rho^m) || sigma^m) - D*_alpha(rho||sigma)| for m = 1..m_max,
// with E the pinching in the eigenspaces of sigma^m.
std::vector<double> blocking_gaps(const Mat& rho, const Mat& sigma, double alpha, int m_max);

// CSV with header alpha,payoff,weighted_value and a final supremum row, 12 significant digits.
std::string curve_csv(const ExponentCurve& curve);
// Throws std::runtime_error naming the path on I/O failure.
void write_text_file(const std::string& path, const std::string& content);
void emit_curve(const ExponentCurve& curve, const std::string& path);
void emit_convergence(const ConvergenceReport& report, const std::string& path);

std::string format_number(double v);

}  // namespace renyi

#endif  // RENYI_VERIFY_HPP
