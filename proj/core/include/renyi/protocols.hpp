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

#ifndef RENYI_PROTOCOLS_HPP
#define RENYI_PROTOCOLS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "renyi/linalg.hpp"
#include "renyi/optimize.hpp"
#include "renyi/state.hpp"

namespace renyi {

// f : X^n -> Z with sequences indexed big-endian in base |X|.
struct HashFunction {
  int n = 1;
  int input_alphabet = 2;
  int output_size = 1;
  std::vector<int> table;

  void validate() const;
  static HashFunction random(int n, int input_alphabet, int output_size, Rng& rng);
  // x -> x for |Z| >= |X|^n.
  static HashFunction injective(int n, int input_alphabet, int output_size);
  static HashFunction constant(int n, int input_alphabet, int output_size);
};

struct PaPerformance {
  double value = 0.0;        // max over omega of F^2(P_f(rho^n), pi_Z x omega)
  double upper = 0.0;        // certified upper bound from the concavity gap
  double purified = 0.0;     // min over omega of the purified distance, when checked
  bool purified_checked = false;
  Mat omega;
};

// Requires d_E^n <= 1024.
PaPerformance pa_performance(const CQState& cq, const HashFunction& f, const OptimizerConfig& cfg = {});

enum class HashStrategy { kRandom, kBestOfK };
HashStrategy parse_hash_strategy(const std::string& s);

struct PaDecayRow {
  int n = 0;
  int output_size = 0;
  std::vector<double> rates;  // -(1/n) log2 of each sample's certified performance
  double best_rate = 0.0;
  double floor = 0.0;         // exponent at rate r; every sampled rate should reach it
  bool floor_holds = true;
};

struct PaDecayConfig {
  HashStrategy strategy = HashStrategy::kRandom;
  int samples = 8;
  int k = 32;
  std::uint64_t seed = 7;
  double slack = 1e-6;
  int grid = 64;
  OptimizerConfig opt;
};

std::vector<PaDecayRow> pa_decay_experiment(const CQState& cq, double r, const std::vector<int>& n_list,
                                            const PaDecayConfig& cfg = {});

// U : A A' -> Abar Atilde, with Abar the leading factor of the output.
struct DecouplingScheme {
  Mat catalyst = Mat::Identity(1, 1);
  Mat unitary;
  int d_bar = 1;
  int d_tilde = 1;

  void validate(int da) const;
  static DecouplingScheme random(int da, int d_tilde, Rng& rng, int catalyst_dim = 1);
};

struct DecPerformance {
  double value = 0.0;
  Mat omega_r;
  Mat omega_bar;
  std::vector<double> multistart_values;
};

// Total dimension |R||A||A'| <= 64.
DecPerformance dec_performance(const Mat& rho_ra, int dr, int da, const DecouplingScheme& scheme,
                               const OptimizerConfig& cfg = {});

struct HaarDecouplingReport {
  int samples = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  bool holds = false;  // mean <= bound + 3 standard errors
};

HaarDecouplingReport haar_decoupling_check(const Mat& psi_ra, int dr, int da, int d_tilde, int samples,
                                           std::uint64_t seed, int threads = 1);

}  // namespace renyi

#endif  // RENYI_PROTOCOLS_HPP
