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

#ifndef RENYI_EXPONENT_HPP
#define RENYI_EXPONENT_HPP

#include <functional>
#include <string>
#include <vector>

#include "renyi/divergence.hpp"
#include "renyi/optimize.hpp"
#include "renyi/state.hpp"

namespace renyi {

// Weighted curve alpha -> (1-alpha)/alpha * payoff(alpha) + offset on [1/2, 1].
struct ExponentCurve {
  std::vector<double> alphas;
  std::vector<double> payoffs;
  std::vector<double> values;
  double offset = 0.0;
  double supremum = 0.0;
  double argmax = 1.0;
  std::vector<double> local_maxima;  // grid points not below either neighbour
  bool infinite = false;
  std::string label;                 // e.g. "upper-bound" for the decoupling curve
};

struct CurveConfig {
  int grid = 512;
  double refine_tol = 1e-10;
  int chunks = 16;  // fixed warm-start segments; results do not depend on threads
  int threads = 1;
  OptimizerConfig opt;
};

// A payoff evaluator; called with increasing alpha inside one chunk, so it may warm start.
using PayoffFn = std::function<double(double)>;
using PayoffFactory = std::function<PayoffFn()>;

// The alpha = 1 grid point takes endpoint_payoff and endpoint_value directly.
ExponentCurve trace_curve(const PayoffFactory& make, double endpoint_payoff, double endpoint_value, double offset,
                          const CurveConfig& cfg);

// sup_alpha (1-a)/a (D_a(rho||sigma) - r). kind is sandwiched or log-euclidean.
ExponentCurve exponent_dmax(const Mat& rho, const Mat& sigma, double r, const CurveConfig& cfg = {},
                            DivergenceKind kind = DivergenceKind::kSandwiched);
// sup_alpha (1-a)/a (r - H_a(X|E)).
ExponentCurve exponent_pa(const CQState& cq, double r, const CurveConfig& cfg = {},
                          DivergenceKind kind = DivergenceKind::kSandwiched);
// sup_alpha (1-a)/a (I_a(R^k:A^k)/k - 2r), k = block. An upper bound on the optimal exponent.
ExponentCurve exponent_dec(const Mat& rho_ra, int dr, int da, double r, int block, const CurveConfig& cfg = {},
                           DivergenceKind kind = DivergenceKind::kSandwiched);

// min over tau of D(tau||sigma) + alpha/(1 - alpha) D(tau||rho) for alpha in (0, 1),
// the variational form of the log-Euclidean divergence.
double flat_variational(const Mat& rho, const Mat& sigma, double alpha, const OptimizerConfig& cfg = {});

struct VariationalDual {
  double value = 0.0;      // infimum of the hinge objective
  std::vector<Mat> tau;    // minimizer (joint state, or t and conditional states for CQ)
  std::string branch;      // "unpenalized", "penalized" or "boundary"
  double branch_unpenalized = 0.0;  // first branch: constraint side where the hinge is inactive
  double branch_penalized = 0.0;    // second branch: hinge active
  double hinge_argument = 0.0;      // value of the hinge argument at the minimizer
  bool infinite = false;
};

// inf_tau D(tau||rho) + |D(tau||sigma) - r|^+.
VariationalDual dual_dmax(const Mat& rho, const Mat& sigma, double r, const OptimizerConfig& cfg = {});
// inf over CQ tau of D(tau||rho) + |r - H(X|E)_tau|^+.
VariationalDual dual_pa(const CQState& cq, double r, const OptimizerConfig& cfg = {});
// inf over tau with supp tau in supp rho of D(tau||rho) + |I(R:A)_tau - 2r|^+.
VariationalDual dual_dec(const Mat& rho_ra, int dr, int da, double r, const OptimizerConfig& cfg = {});

}  // namespace renyi

#endif  // RENYI_EXPONENT_HPP
