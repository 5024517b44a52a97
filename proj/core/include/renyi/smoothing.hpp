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

#ifndef RENYI_SMOOTHING_HPP
#define RENYI_SMOOTHING_HPP

#include <string>
#include <vector>

#include "renyi/linalg.hpp"
#include "renyi/state.hpp"

namespace renyi {

// epsilon(rho||sigma, lambda) = min P(rho, rho~) over 0 <= rho~ <= 2^lambda sigma, tr rho~ <= 1.

struct ClassicalSmoothing {
  double epsilon = 0.0;
  double fidelity = 0.0;
  std::vector<double> t;  // optimal sub-normalized distribution
  double nu = 0.0;        // water level; 0 when every cap binds
};

// Water-filling solution t(x) = min{2^lambda q(x), p(x)/nu^2}.
ClassicalSmoothing smooth_classical(const std::vector<double>& p, const std::vector<double>& q, double lambda);

// Log-domain water-filling for weights spanning many orders of magnitude.
// Inputs are natural logs of p and of the caps (-inf allowed); returns the
// natural log of the optimal fidelity sum_x sqrt(p(x) t(x)).
double water_fill_log_fidelity(const std::vector<double>& log_p, const std::vector<double>& log_cap);

struct SmoothingConfig {
  int barrier_stages = 8;
  double barrier_decay = 0.3;
  int primal_starts = 3;
  std::uint64_t seed = 17;
  double bracket_tol = 5e-3;
};

struct SmoothingResult {
  double epsilon = 0.0;        // attained by rho_tilde
  double epsilon_lower = 0.0;  // certified lower bound
  double fidelity_achieved = 0.0;
  double fidelity_upper = 0.0;
  Mat rho_tilde;
  double cap_residual = 0.0;   // smallest eigenvalue of 2^lambda sigma - rho_tilde
  double trace_slack = 0.0;    // 1 - tr rho_tilde
  bool certified = false;      // epsilon - epsilon_lower <= bracket_tol
  std::string method;          // "exact", "classical" or "quantum"
};

SmoothingResult smooth_quantum(const DensityMatrix& rho, const Mat& sigma, double lambda,
                               const SmoothingConfig& cfg = {});
SmoothingResult smooth_quantum(const Mat& rho, const Mat& sigma, double lambda, const SmoothingConfig& cfg = {});

struct PinchingSandwich {
  double pinched = 0.0;          // epsilon(E(rho)||sigma, lambda)
  double original = 0.0;         // epsilon(rho||sigma, lambda)
  double pinched_shifted = 0.0;  // epsilon(E(rho)||sigma, lambda - log2 |I|)
  int blocks = 0;
  bool holds = false;            // both inequalities within 1e-6
};

// sigma must be block diagonal with respect to the projectors.
PinchingSandwich pinching_sandwich(const Mat& rho, const Mat& sigma, double lambda,
                                   const std::vector<Mat>& projectors, const SmoothingConfig& cfg = {});

// Given block-diagonal rho and sigma and rho_tilde with E(rho_tilde) = rho,
// returns sigma_tilde with E(sigma_tilde) = sigma and F(rho_tilde, sigma_tilde) = F(rho, sigma).
Mat uhlmann_block_lift(const Mat& rho, const Mat& sigma, const std::vector<Mat>& projectors, const Mat& rho_tilde);

// min{lambda : epsilon(rho||sigma, lambda) <= eps}.
double smoothed_max_divergence(const Mat& rho, const Mat& sigma, double eps);

}  // namespace renyi

#endif  // RENYI_SMOOTHING_HPP
