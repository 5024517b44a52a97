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

#ifndef RENYI_DIVERGENCE_HPP
#define RENYI_DIVERGENCE_HPP

#include <limits>
#include <string>

#include "renyi/linalg.hpp"

namespace renyi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class DivergenceKind { kUmegaki, kSandwiched, kPetz, kLogEuclidean, kMax };

DivergenceKind parse_divergence_kind(const std::string& name);
std::string to_string(DivergenceKind kind);

struct DivergenceSpec {
  DivergenceKind kind = DivergenceKind::kUmegaki;
  double alpha = 1.0;
  double smoothing_eps = 0.0;  // only meaningful for kMax
};

struct DivergenceValue {
  double value = 0.0;  // +inf when not finite
  bool finite = true;
  SupportCase support_case = SupportCase::kContained;
};

// Q*_alpha = tr (sigma^{(1-a)/2a} rho sigma^{(1-a)/2a})^a, supports restricted.
double q_star(const Mat& rho, const Mat& sigma, double alpha);
// Petz quasi-entropy tr rho^a sigma^{1-a}.
double q_petz(const Mat& rho, const Mat& sigma, double alpha);
// tr 2^{a log rho + (1-a) log sigma} on the common support.
double log_euclidean_q(const Mat& rho, const Mat& sigma, double alpha);
// The same quantity with rho + eps 1 and sigma + eps 1 in place of rho, sigma.
double log_euclidean_q_regularized(const Mat& rho, const Mat& sigma, double alpha, double eps);

DivergenceValue divergence(const Mat& rho, const Mat& sigma, const DivergenceSpec& spec);

// Shorthands returning +inf for infinite values.
double umegaki(const Mat& rho, const Mat& sigma);
double sandwiched(const Mat& rho, const Mat& sigma, double alpha);
double petz(const Mat& rho, const Mat& sigma, double alpha);
double log_euclidean(const Mat& rho, const Mat& sigma, double alpha);
double max_divergence(const Mat& rho, const Mat& sigma);
double von_neumann_entropy(const Mat& rho);

struct LogEuclideanCheck {
  double limit = 0.0;         // projected formula
  double coarse = 0.0;        // regularized at eps = 1e-6
  double fine = 0.0;          // regularized at eps = 1e-8
  double extrapolated = 0.0;  // linear extrapolation of coarse/fine to eps = 0
  double discrepancy = 0.0;   // |limit - extrapolated| in the divergence
  bool agrees = false;        // discrepancy <= 1e-5
};
LogEuclideanCheck check_log_euclidean_limit(const Mat& rho, const Mat& sigma, double alpha);

// D(rho || sigma) for fixed rho and varying full-rank sigma, with the gradient
// in sigma: dD = tr[G dsigma]. Used by the entropic optimizers.
class DivergenceEvaluator {
 public:
  DivergenceEvaluator(const Mat& rho, DivergenceKind kind, double alpha);
  double operator()(const Mat& sigma, Mat* grad = nullptr) const;
  DivergenceKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const Mat& rho() const { return rho_; }

 private:
  Mat rho_;
  DivergenceKind kind_;
  double alpha_;
  Mat v_;          // support basis of rho
  RVec lam_;       // eigenvalues of rho on its support
  Mat rho_alpha_;  // rho^alpha for Petz
  Mat rho_log_;    // log2 rho on support (log-Euclidean), in the basis v_
  double entropy_term_ = 0.0;  // tr rho log2 rho
  RVec diag_;                  // diagonal of rho on its support, zero elsewhere; empty unless rho is diagonal

  double diagonal_value(const RVec& s, Mat* grad) const;
};

}  // namespace renyi

#endif  // RENYI_DIVERGENCE_HPP
