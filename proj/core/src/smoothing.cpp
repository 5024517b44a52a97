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

#include "renyi/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "renyi/divergence.hpp"
#include "renyi/optimize.hpp"

namespace renyi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
  double mx = kNegInf;
  for (double x : v) mx = std::max(mx, x);
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

double lambda_min(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lambda_max(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double eps_from_fidelity(double f) {
  f = std::clamp(f, 0.0, 1.0);
  return std::sqrt(std::max(0.0, (1.0 - f) * (1.0 + f)));
}

// Unitary whose columns diagonalize both commuting Hermitian matrices.
Mat common_eigenbasis(const Mat& a, const Mat& b) {
  const int d = static_cast<int>(a.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(b));
  double scale = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  Mat u(d, d);
  int start = 0;
  for (int k = 1; k <= d; ++k) {
    if (k == d || es.eigenvalues()(k) - es.eigenvalues()(k - 1) > 1e-10 * scale) {
      Mat v = es.eigenvectors().middleCols(start, k - start);
      Eigen::SelfAdjointEigenSolver<Mat> inner(hermitize(v.adjoint() * a * v));
      u.middleCols(start, k - start) = v * inner.eigenvectors();
      start = k;
    }
  }
  return u;
}

std::vector<double> real_diagonal(const Mat& m) {
  std::vector<double> out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[i] = std::max(0.0, m(i, i).real());
  return out;
}

// Upper bound on the optimal fidelity: classical problem after measuring in basis u.
double measured_fidelity_bound(const Mat& rho, const Mat& sigma, double lambda, const Mat& u) {
  auto p = real_diagonal(u.adjoint() * rho * u);
  auto q = real_diagonal(u.adjoint() * sigma * u);
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return smooth_classical(p, q, lambda).fidelity;
}

double subspace_fidelity(const Mat& rho_sub, const Mat& rt) {
  return trace_norm(matrix_power_on_support(rho_sub, 0.5) * matrix_power_on_support(rt, 0.5));
}

// Clips x to its positive part, then scales it down until x <= cap and tr x <= 1.
// cap must be positive definite.
Mat make_feasible(const Mat& x_in, const Mat& cap_inv_sqrt) {
  // Candidates built from near-singular inverses can lose positivity to round-off.
  Mat x = apply_on_support(spectral(hermitize(x_in), 0.0), [](double v) { return std::max(v, 0.0); });
  double tr = trace_real(x);
  double lm = lambda_max(cap_inv_sqrt * x * cap_inv_sqrt);
  double s = std::min(1.0, std::min(1.0 / std::max(tr, 1e-300), 1.0 / std::max(lm, 1e-300)));
  return s * x;
}

struct DualSolution {
  double upper = 0.0;
  Mat primal;  // candidate rho~ derived from the dual point (unscaled)
};

// min over W >= 0, mu >= 0 of (1/4) tr[rho (W + mu)^{-1}] + mu + tr[C W];
// every feasible point bounds the optimal fidelity from above.
DualSolution solve_dual(const Mat& rho_s, const Mat& cap, double mu0) {
  const int k = static_cast<int>(rho_s.rows());
  const int nb = k * k;
  auto unpack = [k, nb](const Eigen::VectorXd& z, Mat& b, double& m) {
    b.resize(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) b(i, j) = cplx(z(i * k + j), z(nb + i * k + j));
    }
    m = z(2 * nb);
  };
  auto f = [&](const Eigen::VectorXd& z, Eigen::VectorXd* g) -> double {
    Mat b;
    double m;
    unpack(z, b, m);
    double mu = m * m;
    Mat w = b * b.adjoint();
    Mat a = w + mu * Mat::Identity(k, k);
    Eigen::LLT<Mat> llt(hermitize(a));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    Mat r = llt.solve(Mat::Identity(k, k));
    Mat rpr = r * rho_s * r;
    double val = 0.25 * (rho_s * r).trace().real() + mu + (cap * w).trace().real();
    if (!std::isfinite(val)) return val;
    if (g) {
      Mat gw = -0.25 * rpr + cap;
      Mat x = 2.0 * gw * b;
      g->resize(z.size());
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          (*g)(i * k + j) = x(i, j).real();
          (*g)(nb + i * k + j) = x(i, j).imag();
        }
      }
      (*g)(2 * nb) = 2.0 * m * (1.0 - 0.25 * rpr.trace().real());
    }
    return val;
  };
  Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * nb + 1);
  for (int i = 0; i < k; ++i) z(i * k + i) = std::sqrt(0.1);
  z(2 * nb) = std::sqrt(std::max(mu0, 0.05));
  BfgsResult res = minimize_bfgs(f, z, 20000, 1e-13);
  Mat b;
  double m;
  unpack(res.x, b, m);
  Mat a = b * b.adjoint() + m * m * Mat::Identity(k, k);
  Mat y = 0.5 * a.inverse();
  DualSolution out;
  out.upper = res.value;
  out.primal = hermitize(y * rho_s * y);
  return out;
}

// Barrier-penalized ascent over rho~ = M M^dag with continuation of the barrier weight.
Mat barrier_ascent(const Mat& rho_s, const Mat& cap, const Mat& m0, const SmoothingConfig& cfg) {
  const int k = static_cast<int>(rho_s.rows());
  const int nm = k * k;
  Mat sq = matrix_power_on_support(rho_s, 0.5);
  auto unpack = [k, nm](const Eigen::VectorXd& z) {
    Mat m(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) m(i, j) = cplx(z(i * k + j), z(nm + i * k + j));
    }
    return m;
  };
  Eigen::VectorXd z(2 * nm);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      z(i * k + j) = m0(i, j).real();
      z(nm + i * k + j) = m0(i, j).imag();
    }
  }
  double w = 0.1;
  for (int stage = 0; stage < cfg.barrier_stages; ++stage, w *= cfg.barrier_decay) {
    auto f = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) -> double {
      Mat m = unpack(x);
      Mat mm = m * m.adjoint();
      Mat slack = cap - mm;
      double tslack = 1.0 - mm.trace().real();
      if (tslack <= 0.0) return std::numeric_limits<double>::infinity();
      Eigen::LLT<Mat> llt(hermitize(slack));
      if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
      double logdet = 0.0;
      for (int i = 0; i < k; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
      Eigen::JacobiSVD<Mat> svd(sq * m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      double fid = svd.singularValues().sum();
      double val = -(fid + w * (logdet + std::log(tslack)));
      if (g) {
        Mat sinv = llt.solve(Mat::Identity(k, k));
        Mat gf = sq * svd.matrixU() * svd.matrixV().adjoint();
        Mat gb = -2.0 * sinv * m - (2.0 / tslack) * m;
        Mat x2 = -(gf + w * gb);
        g->resize(x.size());
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            (*g)(i * k + j) = x2(i, j).real();
            (*g)(nm + i * k + j) = x2(i, j).imag();
          }
        }
      }
      return val;
    };
    z = minimize_bfgs(f, z, 3000, 1e-10).x;
  }
  Mat m = unpack(z);
  return hermitize(m * m.adjoint());
}

}  // namespace

ClassicalSmoothing smooth_classical(const std::vector<double>& p, const std::vector<double>& q, double lambda) {
  if (p.size() != q.size() || p.empty()) throw ValidationError("smooth_classical: p and q must have equal non-zero length");
  double ptot = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (!(p[x] >= 0.0) || !(q[x] >= 0.0)) throw ValidationError("smooth_classical: negative entry");
    ptot += p[x];
  }
  if (std::abs(ptot - 1.0) > 1e-9) throw ValidationError("smooth_classical: p must sum to 1");
  const size_t n = p.size();
  const double scale = std::exp2(lambda);
  std::vector<double> c(n);
  for (size_t x = 0; x < n; ++x) c[x] = scale * q[x];
  auto fill = [&](double nu, std::vector<double>& t) {
    double mass = 0.0;
    for (size_t x = 0; x < n; ++x) {
      t[x] = p[x] > 0.0 ? (nu > 0.0 ? std::min(c[x], p[x] / (nu * nu)) : c[x]) : 0.0;
      mass += t[x];
    }
    return mass;
  };
  ClassicalSmoothing out;
  out.t.assign(n, 0.0);
  double cap_total = 0.0;
  for (size_t x = 0; x < n; ++x) {
    if (p[x] > 0.0) cap_total += c[x];
  }
  if (cap_total <= 1.0) {
    out.nu = 0.0;
    fill(0.0, out.t);
  } else if (fill(1.0, out.t) >= 1.0 - 1e-15) {
    out.nu = 1.0;
  } else {
    double lo = 1.0;
    for (size_t x = 0; x < n; ++x) {
      if (p[x] > 0.0 && c[x] > 0.0) lo = std::min(lo, std::sqrt(p[x] / c[x]));
    }
    lo *= 0.5;
    double hi = 1.0;
    std::vector<double> t(n);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      double mid = 0.5 * (lo + hi);
      if (fill(mid, t) > 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    // Solve exactly for the water level given the capped set.
    double pu = 0.0;
    double cs = 0.0;
    for (size_t x = 0; x < n; ++x) {
      if (p[x] <= 0.0) continue;
      if (c[x] <= p[x] / (hi * hi)) {
        cs += c[x];
      } else {
        pu += p[x];
      }
    }
    double nu = hi;
    if (pu > 0.0 && cs < 1.0) {
      double cand = std::sqrt(pu / (1.0 - cs));
      if (std::abs(cand - hi) <= 1e-6 * hi && fill(cand, t) <= 1.0 + 1e-14) nu = cand;
    }
    out.nu = nu;
    fill(nu, out.t);
  }
  double f = 0.0;
  for (size_t x = 0; x < n; ++x) {
    f += std::sqrt(p[x] * out.t[x]);
  }
  // p is normalized, so the subnormalization cross term vanishes; evaluating it
  // would only amplify the round-off in sum p through the square root.
  out.fidelity = std::min(1.0, f);
  out.epsilon = eps_from_fidelity(out.fidelity);
  return out;
}

double water_fill_log_fidelity(const std::vector<double>& lp, const std::vector<double>& lc) {
  const size_t n = lp.size();
  if (lc.size() != n) throw ValidationError("water_fill_log_fidelity: size mismatch");
  auto terms = [&](double ell) {
    std::vector<double> lt(n, kNegInf);
    for (size_t x = 0; x < n; ++x) {
      if (lp[x] == kNegInf) continue;
      lt[x] = ell == kNegInf ? lc[x] : std::min(lc[x], lp[x] - 2.0 * ell);
    }
    return lt;
  };
  auto fidelity = [&](const std::vector<double>& lt) {
    std::vector<double> h(n, kNegInf);
    for (size_t x = 0; x < n; ++x) {
      if (lp[x] != kNegInf && lt[x] != kNegInf) h[x] = 0.5 * (lp[x] + lt[x]);
    }
    return log_sum_exp(h);
  };
  std::vector<double> capped_all;
  for (size_t x = 0; x < n; ++x) {
    if (lp[x] != kNegInf) capped_all.push_back(lc[x]);
  }
  if (log_sum_exp(capped_all) <= 0.0) return fidelity(terms(kNegInf));
  if (log_sum_exp(terms(0.0)) >= -1e-15) return fidelity(terms(0.0));
  double lo = 0.0;
  for (size_t x = 0; x < n; ++x) {
    if (lp[x] != kNegInf && lc[x] != kNegInf) lo = std::min(lo, 0.5 * (lp[x] - lc[x]));
  }
  lo -= 1.0;
  double hi = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    if (log_sum_exp(terms(mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  std::vector<double> un, ca;
  for (size_t x = 0; x < n; ++x) {
    if (lp[x] == kNegInf) continue;
    if (lc[x] <= lp[x] - 2.0 * hi) {
      ca.push_back(lc[x]);
    } else {
      un.push_back(lp[x]);
    }
  }
  double ell = hi;
  double lcs = log_sum_exp(ca);
  if (!un.empty() && lcs < 0.0) {
    double cand = 0.5 * (log_sum_exp(un) - std::log(-std::expm1(lcs)));
    if (std::abs(cand - hi) <= 1e-6 && log_sum_exp(terms(cand)) <= 1e-14) ell = cand;
  }
  return fidelity(terms(ell));
}

SmoothingResult smooth_quantum(const DensityMatrix& rho, const Mat& sigma, double lambda, const SmoothingConfig& cfg) {
  if (rho.normalization() != Normalization::kNormalized) {
    throw ValidationError("smooth_quantum: rho must be normalized");
  }
  return smooth_quantum(rho.matrix(), sigma, lambda, cfg);
}

SmoothingResult smooth_quantum(const Mat& rho_in, const Mat& sigma_in, double lambda, const SmoothingConfig& cfg) {
  validate_density(rho_in, Normalization::kNormalized, "smooth_quantum: rho");
  if (sigma_in.rows() != rho_in.rows()) throw ValidationError("smooth_quantum: sigma has the wrong dimension");
  if (hermiticity_defect(sigma_in) > kHermitianTol) throw ValidationError("smooth_quantum: sigma is not Hermitian");
  const Mat rho = hermitize(rho_in);
  const Mat sigma = hermitize(sigma_in);
  const int d = static_cast<int>(rho.rows());
  const Mat cap = std::exp2(lambda) * sigma;
  SmoothingResult out;
  auto finish = [&](const Mat& rt, double f_low, double f_up) {
    out.rho_tilde = rt;
    out.fidelity_achieved = std::min(1.0, f_low);
    out.fidelity_upper = std::min(1.0, std::max(f_up, out.fidelity_achieved));
    out.epsilon = eps_from_fidelity(out.fidelity_achieved);
    out.epsilon_lower = eps_from_fidelity(out.fidelity_upper);
    out.cap_residual = lambda_min(cap - rt);
    out.trace_slack = 1.0 - trace_real(rt);
    out.certified = out.epsilon - out.epsilon_lower <= cfg.bracket_tol;
    return out;
  };
  if (support_rank(sigma) == 0) throw ValidationError("smooth_quantum: sigma is zero");

  // rho itself is feasible when lambda >= D_max(rho||sigma).
  if (support_case(rho, sigma) == SupportCase::kContained) {
    double dm = max_divergence(rho, sigma);
    if (dm <= lambda) {
      out.method = "exact";
      return finish(rho, 1.0, 1.0);
    }
  }

  if (commute(rho, sigma)) {
    Mat u = common_eigenbasis(rho, sigma);
    auto p = real_diagonal(u.adjoint() * rho * u);
    auto q = real_diagonal(u.adjoint() * sigma * u);
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    ClassicalSmoothing cs = smooth_classical(p, q, lambda);
    RVec t = Eigen::Map<const RVec>(cs.t.data(), d);
    Mat rt = u * t.cast<cplx>().asDiagonal() * u.adjoint();
    out.method = "classical";
    return finish(hermitize(rt), cs.fidelity, cs.fidelity);
  }

  out.method = "quantum";
  Mat w = support_basis(sigma);
  Mat rho_s = hermitize(w.adjoint() * rho * w);
  Mat cap_s = hermitize(w.adjoint() * cap * w);
  Mat cap_is = matrix_power_on_support(cap_s, -0.5);

  // Upper bounds: measurements in the eigenbases of sigma and of rho.
  Eigen::SelfAdjointEigenSolver<Mat> es_sigma(sigma);
  Eigen::SelfAdjointEigenSolver<Mat> es_rho(rho);
  double f_up = std::min(measured_fidelity_bound(rho, sigma, lambda, es_sigma.eigenvectors()),
                         measured_fidelity_bound(rho, sigma, lambda, es_rho.eigenvectors()));
  ClassicalSmoothing pinched =
      smooth_classical(real_diagonal(es_sigma.eigenvectors().adjoint() * rho * es_sigma.eigenvectors()),
                       real_diagonal(es_sigma.eigenvectors().adjoint() * sigma * es_sigma.eigenvectors()), lambda);

  DualSolution dual = solve_dual(rho_s, cap_s, 0.5 * pinched.nu);
  f_up = std::min(f_up, dual.upper);

  Mat best = make_feasible(dual.primal, cap_is);
  double f_best = subspace_fidelity(rho_s, best);

  Rng rng(cfg.seed);
  const int k = static_cast<int>(w.cols());
  for (int s = 0; s < cfg.primal_starts; ++s) {
    Mat start;
    if (s == 0) {
      start = matrix_power_on_support(0.999 * best, 0.5);
      if (trace_real(best) <= 0.0) continue;
    } else {
      Mat g = ginibre(k, k, rng);
      Mat x = make_feasible(g * g.adjoint(), cap_is) * 0.5;
      start = matrix_power_on_support(x, 0.5);
    }
    Mat rt = make_feasible(barrier_ascent(rho_s, cap_s, start, cfg), cap_is);
    double f = subspace_fidelity(rho_s, rt);
    if (f > f_best) {
      f_best = f;
      best = rt;
    }
  }
  return finish(hermitize(w * best * w.adjoint()), f_best, f_up);
}

PinchingSandwich pinching_sandwich(const Mat& rho, const Mat& sigma, double lambda,
                                   const std::vector<Mat>& projectors, const SmoothingConfig& cfg) {
  if (projectors.empty()) throw ValidationError("pinching_sandwich: no projectors");
  Mat ps = pinch_with(sigma, projectors);
  if ((ps - sigma).norm() > 1e-8 * std::max(1.0, sigma.norm())) {
    throw ValidationError("pinching_sandwich: sigma is not block diagonal");
  }
  Mat pr = hermitize(pinch_with(rho, projectors));
  PinchingSandwich out;
  out.blocks = static_cast<int>(projectors.size());
  out.pinched = smooth_quantum(pr, sigma, lambda, cfg).epsilon;
  out.original = smooth_quantum(rho, sigma, lambda, cfg).epsilon;
  out.pinched_shifted = smooth_quantum(pr, sigma, lambda - std::log2(out.blocks), cfg).epsilon;
  out.holds = out.pinched <= out.original + 1e-6 && out.original <= out.pinched_shifted + 1e-6;
  return out;
}

Mat uhlmann_block_lift(const Mat& rho, const Mat& sigma, const std::vector<Mat>& projectors, const Mat& rho_tilde) {
  const double tol = 1e-8;
  if ((pinch_with(rho_tilde, projectors) - rho).norm() > tol * std::max(1.0, rho.norm())) {
    throw ValidationError("uhlmann_block_lift: rho is not the pinching of rho_tilde");
  }
  if ((pinch_with(sigma, projectors) - sigma).norm() > tol * std::max(1.0, sigma.norm())) {
    throw ValidationError("uhlmann_block_lift: sigma is not block diagonal");
  }
  const int d = static_cast<int>(rho.rows());
  Mat sq_rt = matrix_power_on_support(rho_tilde, 0.5);
  Mat phi = Mat::Zero(d, d);
  for (const Mat& p : projectors) {
    Mat sq_si = matrix_power_on_support(hermitize(p * sigma * p), 0.5);
    Eigen::JacobiSVD<Mat> svd(sq_si * sq_rt, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat u = svd.matrixU() * svd.matrixV().adjoint();
    phi += sq_si * u;
  }
  return hermitize(phi * phi.adjoint());
}

double smoothed_max_divergence(const Mat& rho, const Mat& sigma, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("smoothed_max_divergence: eps must lie in (0, 1)");
  double hi;
  if (support_case(rho, sigma) == SupportCase::kContained) {
    hi = max_divergence(rho, sigma);
  } else {
    hi = 0.0;
    while (smooth_quantum(rho, sigma, hi).epsilon > eps) {
      hi += 1.0;
      if (hi > 200.0) throw std::runtime_error("smoothed_max_divergence: no feasible lambda found");
    }
  }
  double lo = hi - 1.0;
  while (smooth_quantum(rho, sigma, lo).epsilon <= eps) {
    hi = lo;
    lo -= 1.0;
    if (lo < -200.0) return lo;
  }
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    if (smooth_quantum(rho, sigma, mid).epsilon <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace renyi
