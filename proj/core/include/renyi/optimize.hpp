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

#ifndef RENYI_OPTIMIZE_HPP
#define RENYI_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "renyi/linalg.hpp"
#include "renyi/state.hpp"

namespace renyi {

struct OptimizerConfig {
  int multistart = 8;
  int max_iters = 5000;
  double tol = 1e-9;
  double fd_step = 1e-6;
  std::uint64_t seed = 0x5eed;
};

// A density operator confined to the span of `basis` (ambient x k isometry),
// parameterized as basis * exp(H) * basis^dag / tr exp(H). With `diagonal`
// set, H is kept diagonal, giving a probability simplex in that basis.
struct DensityVariable {
  int dim = 0;
  Mat basis;  // empty means the identity on the ambient space
  bool diagonal = false;

  int rank() const { return basis.size() ? static_cast<int>(basis.cols()) : dim; }
};

struct Problem {
  std::vector<DensityVariable> vars;
  // f(X_1..X_m); when grads is non-null it receives ambient gradients G_i
  // with df = sum_i tr[G_i dX_i].
  std::function<double(const std::vector<Mat>&, std::vector<Mat>*)> eval;
  bool analytic_gradient = true;
};

struct DescentResult {
  std::vector<Mat> logits;
  std::vector<Mat> states;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double last_decrease = 0.0;
  double fw_gap = 0.0;  // Frank-Wolfe gap; bounds f - f* for convex f
};

struct MultistartResult {
  DescentResult best;
  std::vector<double> optima;
  bool disagreement = false;  // optima spread exceeds 1e-6
};

Mat state_from_logits(const DensityVariable& var, const Mat& h);
std::vector<Mat> zero_logits(const Problem& p);
std::vector<Mat> random_logits(const Problem& p, Rng& rng, double scale = 1.0);
// Logits reproducing the given state on the variable's subspace (eigenvalues floored).
Mat logits_from_state(const DensityVariable& var, const Mat& x);

// Central finite differences of size fd_step in an orthonormal Hermitian basis.
std::vector<Mat> finite_difference_gradient(const Problem& p, const std::vector<Mat>& xs, double fd_step);

// Matrix exponentiated-gradient descent with backtracking. Inactive variables stay fixed.
DescentResult mirror_descent(const Problem& p, std::vector<Mat> logits, const OptimizerConfig& cfg,
                             const std::vector<bool>& active = {});

// Starts from `warm` (when given), the maximally mixed point, then random restarts.
MultistartResult multistart_minimize(const Problem& p, const OptimizerConfig& cfg,
                                     const std::vector<Mat>* warm = nullptr);

// Cycles exact minimizations over one variable at a time until a full sweep
// improves by less than cfg.tol.
DescentResult alternating_minimize(const Problem& p, std::vector<Mat> logits, const OptimizerConfig& cfg);

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Unconstrained quasi-Newton minimization with backtracking. f may return
// +inf to reject infeasible points.
BfgsResult minimize_bfgs(const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>& f,
                         Eigen::VectorXd x0, int max_iters = 2000, double gtol = 1e-11);

}  // namespace renyi

#endif  // RENYI_OPTIMIZE_HPP
