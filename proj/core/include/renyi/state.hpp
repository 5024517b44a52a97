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

#ifndef RENYI_STATE_HPP
#define RENYI_STATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "renyi/linalg.hpp"

namespace renyi {

enum class Normalization { kNormalized, kSubnormalized };

// A validated density operator on a tensor product of subsystems.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(std::vector<int> dims, Mat m,
                Normalization norm = Normalization::kNormalized);

  static DensityMatrix maximally_mixed(std::vector<int> dims);
  static DensityMatrix pure(std::vector<int> dims, const Eigen::VectorXcd& psi);

  const Mat& matrix() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Normalization normalization() const { return norm_; }
  double trace() const { return trace_real(m_); }

  DensityMatrix reduced(const std::vector<int>& keep) const;

 private:
  std::vector<int> dims_;
  Mat m_;
  Normalization norm_ = Normalization::kNormalized;
};

// Throws ValidationError naming the failed check.
void validate_density(const Mat& m, Normalization norm, const std::string& what = "state");

// Classical-quantum state sum_x p(x) |x><x| (x) rho_x.
struct CQState {
  std::vector<double> probs;
  std::vector<Mat> cond;

  int alphabet() const { return static_cast<int>(probs.size()); }
  int dim_e() const { return cond.empty() ? 0 : static_cast<int>(cond.front().rows()); }
  std::vector<int> dims() const { return {alphabet(), dim_e()}; }
  Mat joint() const;
  void validate() const;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::uint64_t next() { return eng_(); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

Mat ginibre(int rows, int cols, Rng& rng);
Mat random_unitary(int d, Rng& rng);
Mat random_unitary(int d, std::uint64_t seed);
Eigen::VectorXcd random_pure_vector(int d, Rng& rng);
DensityMatrix random_density(const std::vector<int>& dims, int rank, Rng& rng);
DensityMatrix random_density(const std::vector<int>& dims, int rank, std::uint64_t seed);
std::vector<double> random_distribution(int n, Rng& rng);
CQState random_cq(int alphabet, int dim_e, Rng& rng, int rank = -1);
CQState random_cq(int alphabet, int dim_e, std::uint64_t seed);

// Stinespring form: x -> tr_env[V x V^dag] with V an isometry into out (x) env.
class Channel {
 public:
  Channel(int d_in, int d_out, std::vector<Mat> kraus);
  Mat apply(const Mat& x) const;
  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const std::vector<Mat>& kraus() const { return kraus_; }
  // The channel acting on one subsystem of a bipartite operator.
  Mat apply_to_subsystem(const Mat& x, const std::vector<int>& dims, int which) const;

 private:
  int d_in_;
  int d_out_;
  std::vector<Mat> kraus_;
};

Channel random_cptp(int d_in, int d_out, int env_dim, Rng& rng);
Channel random_cptp(int d_in, int d_out, int env_dim, std::uint64_t seed);

}  // namespace renyi

#endif  // RENYI_STATE_HPP
