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

#ifndef RENYI_ENTROPY_HPP
#define RENYI_ENTROPY_HPP

#include <vector>

#include "renyi/divergence.hpp"
#include "renyi/optimize.hpp"

namespace renyi {

struct EntropicValue {
  double value = 0.0;
  std::vector<Mat> optimizer_states;  // minimizing sigma_B, or (sigma_A, sigma_B)
  double gap_certificate = 0.0;       // last-iterate objective decrease
  double fw_gap = 0.0;
  bool converged = false;
  std::vector<double> multistart_values;
  bool multistart_disagreement = false;
  std::vector<double> block_values;   // regularized estimate: block 1, block 2
};

// min over states sigma_B of D(rho_AB || X_A (x) sigma_B).
EntropicValue min_over_sigma(const Mat& rho_ab, int da, int db, const Mat& x_a, DivergenceKind kind,
                             double alpha, const OptimizerConfig& cfg,
                             const std::vector<Mat>* warm = nullptr);

// H_alpha(A|B) = -min_sigma D(rho_AB || 1_A (x) sigma_B).
EntropicValue conditional_entropy(const Mat& rho_ab, int da, int db, DivergenceKind kind, double alpha,
                                  const OptimizerConfig& cfg, const std::vector<Mat>* warm = nullptr);

enum class MutualInfoVariant { kDoubleMin, kFixedMarginal };

// kDoubleMin: min over sigma_A (x) sigma_B. kFixedMarginal: sigma_A = rho_A.
EntropicValue mutual_information(const Mat& rho_ab, int da, int db, DivergenceKind kind, double alpha,
                                 MutualInfoVariant variant, const OptimizerConfig& cfg,
                                 const std::vector<Mat>* warm = nullptr);

// Blocked estimate I(A^k:B^k)/k for k = 1..max_block (max_block <= 2,
// (da*db)^max_block <= 64). value is the last block's value.
EntropicValue regularized_mutual_information_estimate(const Mat& rho_ab, int da, int db, DivergenceKind kind,
                                                      double alpha, int max_block, const OptimizerConfig& cfg);

// Umegaki closed forms.
double conditional_entropy_vn(const Mat& rho_ab, int da, int db);
double mutual_information_vn(const Mat& rho_ab, int da, int db);

// True when every off-diagonal entry is below 1e-14 of the largest entry.
bool is_diagonal(const Mat& m);

// tr_A[(X (x) 1) G] and tr_B[(1 (x) Y) G].
Mat weighted_trace_a(const Mat& g, const Mat& x, int da, int db);
Mat weighted_trace_b(const Mat& g, const Mat& y, int da, int db);

}  // namespace renyi

#endif  // RENYI_ENTROPY_HPP
