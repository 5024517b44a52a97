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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renyi/state.hpp"

namespace renyi {

void validate_density(const Mat& m, Normalization norm, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(what + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw ValidationError(what + ": non-finite entry");
  double herm = hermiticity_defect(m);
  if (herm > kHermitianTol) {
    std::ostringstream os;
    os << what << ": not Hermitian (max |M - M^dag| = " << herm << ")";
    throw ValidationError(os.str());
  }
  auto sd = spectral(m);
  double lmin = sd.values(sd.values.size() - 1);
  if (lmin < -kHermitianTol) {
    std::ostringstream os;
    os << what << ": negative eigenvalue " << lmin;
    throw ValidationError(os.str());
  }
  double tr = trace_real(m);
  if (norm == Normalization::kNormalized && std::abs(tr - 1.0) > kHermitianTol) {
    std::ostringstream os;
    os << what << ": trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  if (norm == Normalization::kSubnormalized && tr > 1.0 + kHermitianTol) {
    std::ostringstream os;
    os << what << ": trace " << tr << " exceeds 1";
    throw ValidationError(os.str());
  }
}

DensityMatrix::DensityMatrix(std::vector<int> dims, Mat m, Normalization norm)
    : dims_(std::move(dims)), m_(std::move(m)), norm_(norm) {
  for (int d : dims_) {
    if (d <= 0) throw ValidationError("state: subsystem dimensions must be positive");
  }
  if (product(dims_) != m_.rows()) {
    throw ValidationError("state: product of dims does not match matrix size");
  }
  validate_density(m_, norm_);
  m_ = hermitize(m_);
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<int> dims) {
  int d = product(dims);
  return DensityMatrix(std::move(dims), Mat::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(std::vector<int> dims, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd v = psi / psi.norm();
  return DensityMatrix(std::move(dims), v * v.adjoint());
}

DensityMatrix DensityMatrix::reduced(const std::vector<int>& keep) const {
  std::vector<int> kd;
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (int k : sorted) kd.push_back(dims_.at(k));
  return DensityMatrix(kd, partial_trace(m_, dims_, sorted), norm_);
}

Mat CQState::joint() const {
  const int nx = alphabet();
  const int de = dim_e();
  Mat out = Mat::Zero(nx * de, nx * de);
  for (int x = 0; x < nx; ++x) out.block(x * de, x * de, de, de) = probs[x] * cond[x];
  return out;
}

void CQState::validate() const {
  if (probs.empty()) throw ValidationError("cq state: empty alphabet");
  if (probs.size() != cond.size()) {
    throw ValidationError("cq state: probs and cond_states differ in length");
  }
  double total = 0.0;
  for (size_t x = 0; x < probs.size(); ++x) {
    if (!(probs[x] >= 0.0)) throw ValidationError("cq state: probs[" + std::to_string(x) + "] is negative");
    total += probs[x];
    if (cond[x].rows() != cond.front().rows()) {
      throw ValidationError("cq state: cond_states[" + std::to_string(x) + "] has mismatched dimension");
    }
    validate_density(cond[x], Normalization::kNormalized, "cq state: cond_states[" + std::to_string(x) + "]");
  }
  if (std::abs(total - 1.0) > kHermitianTol) throw ValidationError("cq state: probs do not sum to 1");
}

Mat ginibre(int rows, int cols, Rng& rng) {
  Mat g(rows, cols);
  const double s = std::sqrt(0.5);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = cplx(s * rng.normal(), s * rng.normal());
  }
  return g;
}

Mat random_unitary(int d, Rng& rng) {
  Mat z = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    cplx rk = r(k, k);
    double a = std::abs(rk);
    q.col(k) *= (a > 0.0 ? rk / a : cplx(1.0, 0.0));
  }
  return q;
}

Mat random_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}

Eigen::VectorXcd random_pure_vector(int d, Rng& rng) {
  Eigen::VectorXcd v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density(const std::vector<int>& dims, int rank, Rng& rng) {
  int d = product(dims);
  if (rank <= 0 || rank > d) rank = d;
  Mat g = ginibre(d, rank, rng);
  Mat rho = g * g.adjoint();
  rho /= trace_real(rho);
  return DensityMatrix(dims, hermitize(rho));
}

DensityMatrix random_density(const std::vector<int>& dims, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dims, rank, rng);
}

std::vector<double> random_distribution(int n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

CQState random_cq(int alphabet, int dim_e, Rng& rng, int rank) {
  CQState cq;
  cq.probs = random_distribution(alphabet, rng);
  for (int x = 0; x < alphabet; ++x) {
    cq.cond.push_back(random_density({dim_e}, rank, rng).matrix());
  }
  return cq;
}

CQState random_cq(int alphabet, int dim_e, std::uint64_t seed) {
  Rng rng(seed);
  return random_cq(alphabet, dim_e, rng);
}

Channel::Channel(int d_in, int d_out, std::vector<Mat> kraus)
    : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
  Mat s = Mat::Zero(d_in, d_in);
  for (const auto& k : kraus_) {
    if (k.rows() != d_out || k.cols() != d_in) throw ValidationError("channel: Kraus operator has wrong shape");
    s += k.adjoint() * k;
  }
  if ((s - Mat::Identity(d_in, d_in)).norm() > 1e-8) throw ValidationError("channel: not trace preserving");
}

Mat Channel::apply(const Mat& x) const {
  Mat out = Mat::Zero(d_out_, d_out_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

Mat Channel::apply_to_subsystem(const Mat& x, const std::vector<int>& dims, int which) const {
  if (dims.at(which) != d_in_) throw ValidationError("channel: subsystem dimension mismatch");
  std::vector<int> out_dims = dims;
  out_dims[which] = d_out_;
  int before = 1;
  int after = 1;
  for (int s = 0; s < which; ++s) before *= dims[s];
  for (size_t s = which + 1; s < dims.size(); ++s) after *= dims[s];
  Mat ib = Mat::Identity(before, before);
  Mat ia = Mat::Identity(after, after);
  int dout = product(out_dims);
  Mat out = Mat::Zero(dout, dout);
  for (const auto& k : kraus_) {
    Mat kk = kron(kron(ib, k), ia);
    out += kk * x * kk.adjoint();
  }
  return out;
}

Channel random_cptp(int d_in, int d_out, int env_dim, Rng& rng) {
  if (d_out * env_dim < d_in) throw ValidationError("random_cptp: d_out * env_dim must be >= d_in");
  Mat u = random_unitary(d_out * env_dim, rng);
  Mat v = u.leftCols(d_in);
  std::vector<Mat> kraus;
  for (int e = 0; e < env_dim; ++e) {
    Mat k(d_out, d_in);
    for (int o = 0; o < d_out; ++o) k.row(o) = v.row(o * env_dim + e);
    kraus.push_back(k);
  }
  return Channel(d_in, d_out, std::move(kraus));
}

Channel random_cptp(int d_in, int d_out, int env_dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_cptp(d_in, d_out, env_dim, rng);
}

}  // namespace renyi
