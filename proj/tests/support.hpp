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

#ifndef RENYI_TESTS_SUPPORT_HPP
#define RENYI_TESTS_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "renyi/linalg.hpp"
#include "renyi/state.hpp"

namespace renyi::testing {

// Hand-rolled generators. Each draws from the Rng it is given, so a test is
// reproducible from its seed alone.

inline Mat gen_hermitian(int d, Rng& rng) {
  Mat g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

inline Mat gen_state(int d, int rank, Rng& rng) {
  Mat g = ginibre(d, rank, rng);
  Mat m = g * g.adjoint();
  return m / trace_real(m);
}

inline Mat gen_full_rank(int d, Rng& rng) { return gen_state(d, d, rng); }

inline Mat gen_pure(int d, Rng& rng) {
  Eigen::VectorXcd v = random_pure_vector(d, rng);
  return v * v.adjoint();
}

inline Mat gen_diagonal(const std::vector<double>& p) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return m;
}

inline std::vector<double> gen_distribution(int n, Rng& rng) { return random_distribution(n, rng); }

// Pair diagonal in a shared random basis.
inline std::pair<Mat, Mat> gen_commuting(int d, Rng& rng) {
  Mat u = random_unitary(d, rng);
  Mat a = u * gen_diagonal(gen_distribution(d, rng)) * u.adjoint();
  Mat b = u * gen_diagonal(gen_distribution(d, rng)) * u.adjoint();
  return {a, b};
}

inline Mat ket_projector(int d, int k) {
  Mat m = Mat::Zero(d, d);
  m(k, k) = 1.0;
  return m;
}

inline Mat maximally_entangled(int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double min_eigenvalue(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Qubit state from a Bloch vector inside the unit ball.
inline Mat bloch_state(double x, double y, double z) {
  Mat m(2, 2);
  m << cplx(1.0 + z, 0.0), cplx(x, -y), cplx(x, y), cplx(1.0 - z, 0.0);
  return 0.5 * m;
}

}  // namespace renyi::testing

#endif  // RENYI_TESTS_SUPPORT_HPP
