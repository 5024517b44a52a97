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

#include "renyi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace renyi {

SpectralDecomposition spectral(const Mat& h, double rel_cutoff) {
  if (h.rows() != h.cols()) throw ValidationError("spectral: matrix is not square");
  SpectralDecomposition sd;
  const int d = static_cast<int>(h.rows());
  if (d == 0) return sd;
  if (hermiticity_defect(h) > kHermitianTol * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw ValidationError("spectral: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
  if (es.info() != Eigen::Success) throw std::runtime_error("spectral: eigensolver failed");
  sd.values = es.eigenvalues().reverse();
  sd.vectors = es.eigenvectors().rowwise().reverse();
  double scale = sd.values.cwiseAbs().maxCoeff();
  sd.cutoff = rel_cutoff * scale;
  int rank = 0;
  for (int k = 0; k < d; ++k) {
    if (sd.values(k) > sd.cutoff && scale > 0.0) ++rank;
  }
  sd.support_rank = rank;
  return sd;
}

Mat hermitize(const Mat& h) { return 0.5 * (h + h.adjoint()); }

double hermiticity_defect(const Mat& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double trace_real(const Mat& h) { return h.trace().real(); }

Mat apply_on_support(const SpectralDecomposition& sd, const std::function<double(double)>& f) {
  const int d = static_cast<int>(sd.values.size());
  Mat out = Mat::Zero(d, d);
  for (int k = 0; k < sd.support_rank; ++k) {
    const auto v = sd.vectors.col(k);
    out.noalias() += f(sd.values(k)) * (v * v.adjoint());
  }
  return out;
}

Mat apply_on_support(const Mat& h, const std::function<double(double)>& f) {
  return apply_on_support(spectral(h), f);
}

Mat matrix_power_on_support(const Mat& h, double p) {
  return apply_on_support(h, [p](double x) { return std::pow(x, p); });
}

Mat matrix_log_on_support(const Mat& h) {
  auto sd = spectral(h);
  if (sd.support_rank == 0) throw ValidationError("matrix_log_on_support: zero matrix");
  return apply_on_support(sd, [](double x) { return std::log2(x); });
}

Mat matrix_exp2(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
  RVec w = es.eigenvalues().unaryExpr([](double x) { return std::exp2(x); });
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

Mat support_projector(const Mat& h) {
  Mat v = support_basis(h);
  return v * v.adjoint();
}

Mat support_basis(const Mat& h) { return spectral(h).support_basis(); }

int support_rank(const Mat& h) { return spectral(h).support_rank; }

Mat support_intersection_basis(const Mat& a, const Mat& b) {
  const int d = static_cast<int>(a.rows());
  Mat id = Mat::Identity(d, d);
  Mat m = (id - support_projector(a)) + (id - support_projector(b));
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
  int k = 0;
  while (k < d && es.eigenvalues()(k) <= 1e-8) ++k;
  return es.eigenvectors().leftCols(k);
}

std::string to_string(SupportCase c) {
  switch (c) {
    case SupportCase::kContained: return "contained";
    case SupportCase::kOverlapping: return "overlapping";
    case SupportCase::kOrthogonal: return "orthogonal";
  }
  return "unknown";
}

SupportCase support_case(const Mat& rho, const Mat& sigma) {
  Mat pr = support_projector(rho);
  Mat ps = support_projector(sigma);
  const int d = static_cast<int>(rho.rows());
  Mat outside = pr * (Mat::Identity(d, d) - ps) * pr;
  double leak = outside.size() ? spectral(outside).values(0) : 0.0;
  if (leak <= 1e-8) return SupportCase::kContained;
  Mat overlap = pr * ps * pr;
  double ov = overlap.size() ? spectral(overlap).values(0) : 0.0;
  if (ov <= 1e-8) return SupportCase::kOrthogonal;
  return SupportCase::kOverlapping;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat kron_power(const Mat& a, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, a);
  return out;
}

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

namespace {

// Splits every basis index of the full space into (kept, traced) indices.
void split_indices(const std::vector<int>& dims, const std::vector<int>& keep,
                   std::vector<int>& kept_idx, std::vector<int>& traced_idx) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> is_kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw ValidationError("partial_trace: subsystem index out of range");
    is_kept[k] = true;
  }
  const int total = product(dims);
  kept_idx.assign(total, 0);
  traced_idx.assign(total, 0);
  std::vector<int> digits(n, 0);
  for (int i = 0; i < total; ++i) {
    int rem = i;
    for (int s = n - 1; s >= 0; --s) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    int ki = 0;
    int ti = 0;
    for (int s = 0; s < n; ++s) {
      if (is_kept[s]) {
        ki = ki * dims[s] + digits[s];
      } else {
        ti = ti * dims[s] + digits[s];
      }
    }
    kept_idx[i] = ki;
    traced_idx[i] = ti;
  }
}

}  // namespace

Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total) {
    throw ValidationError("partial_trace: matrix size does not match dims");
  }
  std::vector<int> sorted_keep = keep;
  std::sort(sorted_keep.begin(), sorted_keep.end());
  int dk = 1;
  for (int k : sorted_keep) dk *= dims.at(k);
  std::vector<int> ki, ti;
  split_indices(dims, sorted_keep, ki, ti);
  Mat out = Mat::Zero(dk, dk);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      if (ti[i] == ti[j]) out(ki[i], ki[j]) += m(i, j);
    }
  }
  return out;
}

Mat permute_systems(const Mat& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n) throw ValidationError("permute_systems: bad permutation");
  const int total = product(dims);
  std::vector<int> new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = dims.at(perm[k]);
  // map[i] = index in the permuted space of input basis vector i
  std::vector<int> map(total);
  std::vector<int> digits(n);
  for (int i = 0; i < total; ++i) {
    int rem = i;
    for (int s = n - 1; s >= 0; --s) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    int j = 0;
    for (int k = 0; k < n; ++k) j = j * new_dims[k] + digits[perm[k]];
    map[i] = j;
  }
  Mat out(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) out(map[i], map[j]) = m(i, j);
  }
  return out;
}

double trace_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

double fidelity(const Mat& rho, const Mat& sigma) {
  Mat sr = matrix_power_on_support(rho, 0.5);
  Mat ss = matrix_power_on_support(sigma, 0.5);
  double tr = trace_norm(sr * ss);
  double extra = std::max(0.0, 1.0 - trace_real(rho)) * std::max(0.0, 1.0 - trace_real(sigma));
  return tr + std::sqrt(extra);
}

double purified_distance(const Mat& rho, const Mat& sigma) {
  double f = std::min(1.0, fidelity(rho, sigma));
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

std::vector<Mat> eigenspace_projectors(const Mat& h, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
  const int d = static_cast<int>(h.rows());
  std::vector<Mat> projectors;
  int start = 0;
  for (int k = 1; k <= d; ++k) {
    if (k == d || es.eigenvalues()(k) - es.eigenvalues()(k - 1) > tol) {
      Mat v = es.eigenvectors().middleCols(start, k - start);
      projectors.push_back(v * v.adjoint());
      start = k;
    }
  }
  return projectors;
}

Mat pinch_with(const Mat& x, const std::vector<Mat>& projectors) {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const auto& p : projectors) out += p * x * p;
  return out;
}

Pinching pinch(const Mat& x, const Mat& h, double tol) {
  Pinching out;
  out.projectors = eigenspace_projectors(h, tol);
  out.v_count = static_cast<int>(out.projectors.size());
  out.result = pinch_with(x, out.projectors);
  return out;
}

Mat spectral_gradient(const SpectralDecomposition& sd, const Mat& m,
                      const std::function<double(double)>& f,
                      const std::function<double(double)>& df) {
  const int d = static_cast<int>(sd.values.size());
  Mat mt = sd.vectors.adjoint() * m * sd.vectors;
  RVec fv(d), dfv(d);
  for (int i = 0; i < d; ++i) {
    fv(i) = f(sd.values(i));
    dfv(i) = df(sd.values(i));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double li = sd.values(i);
      double lj = sd.values(j);
      double gamma;
      if (std::abs(li - lj) <= 1e-8 * std::max(std::abs(li), std::abs(lj))) {
        gamma = 0.5 * (dfv(i) + dfv(j));
      } else {
        gamma = (fv(i) - fv(j)) / (li - lj);
      }
      mt(i, j) *= gamma;
    }
  }
  return sd.vectors * mt * sd.vectors.adjoint();
}

bool commute(const Mat& a, const Mat& b, double tol) {
  Mat c = a * b - b * a;
  double scale = std::max(1.0, a.norm() * b.norm());
  return c.norm() <= tol * scale;
}

}  // namespace renyi
