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

#ifndef RENYI_LINALG_HPP
#define RENYI_LINALG_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace renyi {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Eigenvalues at or below kSupportCutoff * (largest |eigenvalue|) are treated
// as zero by every support-restricted matrix function.
inline constexpr double kSupportCutoff = 1e-9;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPinchTol = 1e-8;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpectralDecomposition {
  RVec values;   // descending
  Mat vectors;   // column k belongs to values(k)
  int support_rank = 0;
  double cutoff = 0.0;

  // Orthonormal basis of the eigenspace with values above the cutoff.
  Mat support_basis() const { return vectors.leftCols(support_rank); }
};

SpectralDecomposition spectral(const Mat& h, double rel_cutoff = kSupportCutoff);

Mat hermitize(const Mat& h);
double hermiticity_defect(const Mat& h);
double trace_real(const Mat& h);

// Applies f to the eigenvalues above the support cutoff, zero elsewhere.
Mat apply_on_support(const SpectralDecomposition& sd, const std::function<double(double)>& f);
Mat apply_on_support(const Mat& h, const std::function<double(double)>& f);

// p < 0 gives the pseudo-inverse power; p == 0 gives the support projector.
Mat matrix_power_on_support(const Mat& h, double p);
// Base-2 logarithm on the support. Throws for the zero matrix.
Mat matrix_log_on_support(const Mat& h);
// Base-2 exponential 2^H of a Hermitian matrix.
Mat matrix_exp2(const Mat& h);

Mat support_projector(const Mat& h);
Mat support_basis(const Mat& h);
int support_rank(const Mat& h);

// Orthonormal basis of supp(a) intersected with supp(b); the intersection is
// the null space of (1 - P_a) + (1 - P_b) at tolerance 1e-8.
Mat support_intersection_basis(const Mat& a, const Mat& b);

enum class SupportCase { kContained, kOverlapping, kOrthogonal };
std::string to_string(SupportCase c);
// Relation of supp(rho) to supp(sigma).
SupportCase support_case(const Mat& rho, const Mat& sigma);

Mat kron(const Mat& a, const Mat& b);
Mat kron_power(const Mat& a, int n);
int product(const std::vector<int>& dims);

// Traces out every subsystem not listed in `keep` (indices into dims).
Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep);
// Reorders subsystems: output subsystem k is input subsystem perm[k].
Mat permute_systems(const Mat& m, const std::vector<int>& dims, const std::vector<int>& perm);

double trace_norm(const Mat& m);
double fidelity(const Mat& rho, const Mat& sigma);
double purified_distance(const Mat& rho, const Mat& sigma);

struct Pinching {
  Mat result;
  int v_count = 0;
  std::vector<Mat> projectors;
};
// Pinches x in the eigenspaces of h; eigenvalues closer than tol share a block.
Pinching pinch(const Mat& x, const Mat& h, double tol = kPinchTol);
Mat pinch_with(const Mat& x, const std::vector<Mat>& projectors);
std::vector<Mat> eigenspace_projectors(const Mat& h, double tol = kPinchTol);

// Daleckii-Krein divided differences for f on the spectrum of h: the
// derivative of tr[M f(h)] along dh is tr[G dh] with G returned here.
Mat spectral_gradient(const SpectralDecomposition& sd, const Mat& m,
                      const std::function<double(double)>& f,
                      const std::function<double(double)>& df);

bool commute(const Mat& a, const Mat& b, double tol = 1e-10);

}  // namespace renyi

#endif  // RENYI_LINALG_HPP
