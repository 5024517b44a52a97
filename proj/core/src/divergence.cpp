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

#include "renyi/divergence.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "renyi/smoothing.hpp"

namespace renyi {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Eigenvalues of a PSD matrix written as D V^dag S V D with D diagonal.
RVec sandwich_eigenvalues(const Mat& c) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(c), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double sum_power(const RVec& mu, double alpha) {
  double q = 0.0;
  double scale = mu.size() ? mu.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu(k) > 1e-15 * scale) q += std::pow(mu(k), alpha);
  }
  return q;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("divergence: alpha must be positive and finite");
}

DivergenceValue infinite(SupportCase c) { return {kInf, false, c}; }

DivergenceValue finite_value(double v, SupportCase c) {
  if (!std::isfinite(v)) return infinite(c);
  return {v, true, c};
}

}  // namespace

DivergenceKind parse_divergence_kind(const std::string& name) {
  if (name == "umegaki" || name == "relative-entropy") return DivergenceKind::kUmegaki;
  if (name == "sandwiched") return DivergenceKind::kSandwiched;
  if (name == "petz") return DivergenceKind::kPetz;
  if (name == "log-euclidean" || name == "flat") return DivergenceKind::kLogEuclidean;
  if (name == "max") return DivergenceKind::kMax;
  throw ValidationError("unknown divergence kind '" + name + "'");
}

std::string to_string(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::kUmegaki: return "umegaki";
    case DivergenceKind::kSandwiched: return "sandwiched";
    case DivergenceKind::kPetz: return "petz";
    case DivergenceKind::kLogEuclidean: return "log-euclidean";
    case DivergenceKind::kMax: return "max";
  }
  return "unknown";
}

double q_star(const Mat& rho, const Mat& sigma, double alpha) {
  require_alpha(alpha);
  const double t = (1.0 - alpha) / alpha;
  auto sr = spectral(rho);
  Mat v = sr.support_basis();
  RVec sq = sr.values.head(sr.support_rank).cwiseSqrt();
  if (alpha < 1.0) {
    // Q = sum of s_i^{2 alpha} over singular values of rho^{1/2} sigma^{t/2}. For
    // small alpha the power t is large; the one-sided Jacobi SVD keeps relative
    // accuracy under the column grading by sigma^{t/2}.
    auto ss = spectral(sigma);
    Mat w = ss.support_basis();
    RVec grade = ss.values.head(ss.support_rank).array().pow(0.5 * t);
    Mat b = sq.asDiagonal() * (v.adjoint() * w) * grade.asDiagonal();
    Eigen::JacobiSVD<Mat> svd(b);
    double q = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      double sv = svd.singularValues()(i);
      if (sv > 0.0) q += std::pow(sv, 2.0 * alpha);
    }
    return q;
  }
  Mat s = matrix_power_on_support(sigma, t);
  Mat c = sq.asDiagonal() * (v.adjoint() * s * v) * sq.asDiagonal();
  return sum_power(sandwich_eigenvalues(c), alpha);
}

double q_petz(const Mat& rho, const Mat& sigma, double alpha) {
  require_alpha(alpha);
  Mat a = matrix_power_on_support(rho, alpha);
  Mat b = matrix_power_on_support(sigma, 1.0 - alpha);
  return (a * b).trace().real();
}

double log_euclidean_q(const Mat& rho, const Mat& sigma, double alpha) {
  require_alpha(alpha);
  Mat v = alpha < 1.0 ? support_intersection_basis(rho, sigma) : support_basis(rho);
  if (v.cols() == 0) return 0.0;
  Mat k = v.adjoint() * (alpha * matrix_log_on_support(rho) + (1.0 - alpha) * matrix_log_on_support(sigma)) * v;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(k), Eigen::EigenvaluesOnly);
  double q = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) q += std::exp2(es.eigenvalues()(i));
  return q;
}

double log_euclidean_q_regularized(const Mat& rho, const Mat& sigma, double alpha, double eps) {
  const int d = static_cast<int>(rho.rows());
  Mat id = Mat::Identity(d, d);
  Mat k = alpha * matrix_log_on_support(rho + eps * id) + (1.0 - alpha) * matrix_log_on_support(sigma + eps * id);
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(k), Eigen::EigenvaluesOnly);
  double q = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) q += std::exp2(es.eigenvalues()(i));
  return q;
}

double von_neumann_entropy(const Mat& rho) {
  auto sd = spectral(rho);
  double h = 0.0;
  for (int k = 0; k < sd.support_rank; ++k) h -= sd.values(k) * std::log2(sd.values(k));
  return h;
}

DivergenceValue divergence(const Mat& rho, const Mat& sigma, const DivergenceSpec& spec) {
  if (rho.rows() != sigma.rows() || rho.rows() != rho.cols() || sigma.rows() != sigma.cols()) {
    throw ValidationError("divergence: rho and sigma must be square of equal size");
  }
  const SupportCase sc = support_case(rho, sigma);
  DivergenceKind kind = spec.kind;
  const double alpha = spec.alpha;
  if (kind != DivergenceKind::kUmegaki && kind != DivergenceKind::kMax) {
    require_alpha(alpha);
    if (alpha == 1.0) kind = DivergenceKind::kUmegaki;
  }
  switch (kind) {
    case DivergenceKind::kUmegaki: {
      if (sc != SupportCase::kContained) return infinite(sc);
      double v = -von_neumann_entropy(rho) - (rho * matrix_log_on_support(sigma)).trace().real();
      return finite_value(v, sc);
    }
    case DivergenceKind::kSandwiched: {
      if (alpha < 1.0 && sc == SupportCase::kOrthogonal) return infinite(sc);
      if (alpha > 1.0 && sc != SupportCase::kContained) return infinite(sc);
      double q = q_star(rho, sigma, alpha);
      if (q <= 0.0) return infinite(sc);
      return finite_value(std::log2(q) / (alpha - 1.0), sc);
    }
    case DivergenceKind::kPetz: {
      if (alpha < 1.0 && sc == SupportCase::kOrthogonal) return infinite(sc);
      if (alpha > 1.0 && sc != SupportCase::kContained) return infinite(sc);
      double q = q_petz(rho, sigma, alpha);
      if (q <= 0.0) return infinite(sc);
      return finite_value(std::log2(q) / (alpha - 1.0), sc);
    }
    case DivergenceKind::kLogEuclidean: {
      if (alpha > 1.0 && sc != SupportCase::kContained) return infinite(sc);
      double q = log_euclidean_q(rho, sigma, alpha);
      if (q <= 0.0) return infinite(sc);
      return finite_value(std::log2(q) / (alpha - 1.0), sc);
    }
    case DivergenceKind::kMax: {
      if (spec.smoothing_eps > 0.0) {
        return finite_value(smoothed_max_divergence(rho, sigma, spec.smoothing_eps), sc);
      }
      if (sc != SupportCase::kContained) return infinite(sc);
      Mat s = matrix_power_on_support(sigma, -0.5);
      Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(s * rho * s), Eigen::EigenvaluesOnly);
      return finite_value(std::log2(es.eigenvalues().maxCoeff()), sc);
    }
  }
  return infinite(sc);
}

double umegaki(const Mat& rho, const Mat& sigma) {
  return divergence(rho, sigma, {DivergenceKind::kUmegaki, 1.0, 0.0}).value;
}
double sandwiched(const Mat& rho, const Mat& sigma, double alpha) {
  return divergence(rho, sigma, {DivergenceKind::kSandwiched, alpha, 0.0}).value;
}
double petz(const Mat& rho, const Mat& sigma, double alpha) {
  return divergence(rho, sigma, {DivergenceKind::kPetz, alpha, 0.0}).value;
}
double log_euclidean(const Mat& rho, const Mat& sigma, double alpha) {
  return divergence(rho, sigma, {DivergenceKind::kLogEuclidean, alpha, 0.0}).value;
}
double max_divergence(const Mat& rho, const Mat& sigma) {
  return divergence(rho, sigma, {DivergenceKind::kMax, 1.0, 0.0}).value;
}

LogEuclideanCheck check_log_euclidean_limit(const Mat& rho, const Mat& sigma, double alpha) {
  LogEuclideanCheck c;
  const double e1 = 1e-6;
  const double e2 = 1e-8;
  c.limit = log_euclidean_q(rho, sigma, alpha);
  c.coarse = log_euclidean_q_regularized(rho, sigma, alpha, e1);
  c.fine = log_euclidean_q_regularized(rho, sigma, alpha, e2);
  c.extrapolated = c.fine + (c.fine - c.coarse) * e2 / (e1 - e2);
  auto to_d = [alpha](double q) { return std::log2(q) / (alpha - 1.0); };
  c.discrepancy = std::abs(to_d(c.limit) - to_d(c.extrapolated));
  c.agrees = c.discrepancy <= 1e-5;
  return c;
}

namespace {

bool diagonal_matrix(const Mat& m) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > 1e-14 * scale) return false;
    }
  }
  return true;
}

}  // namespace

DivergenceEvaluator::DivergenceEvaluator(const Mat& rho, DivergenceKind kind, double alpha)
    : rho_(hermitize(rho)), kind_(kind), alpha_(alpha) {
  if (kind_ == DivergenceKind::kMax) throw ValidationError("DivergenceEvaluator: max divergence has no gradient form");
  if (kind_ != DivergenceKind::kUmegaki) {
    require_alpha(alpha_);
    if (alpha_ == 1.0) kind_ = DivergenceKind::kUmegaki;
  }
  auto sd = spectral(rho_);
  v_ = sd.support_basis();
  lam_ = sd.values.head(sd.support_rank);
  entropy_term_ = 0.0;
  for (Eigen::Index k = 0; k < lam_.size(); ++k) entropy_term_ += lam_(k) * std::log2(lam_(k));
  if (kind_ == DivergenceKind::kPetz) {
    rho_alpha_ = v_ * lam_.unaryExpr([this](double x) { return std::pow(x, alpha_); }).asDiagonal() * v_.adjoint();
  }
  if (kind_ == DivergenceKind::kLogEuclidean) {
    rho_log_ = lam_.unaryExpr([](double x) { return std::log2(x); }).asDiagonal();
  }
  if (diagonal_matrix(rho_) && lam_.size() > 0) {
    const double cut = kSupportCutoff * lam_.maxCoeff();
    diag_ = rho_.diagonal().real();
    for (Eigen::Index i = 0; i < diag_.size(); ++i) {
      if (diag_(i) <= cut) diag_(i) = 0.0;
    }
  }
}

// Commuting diagonal case, with the same conventions as the spectral path:
// eigenvalues of sigma at or below 1e-300 are outside its support.
double DivergenceEvaluator::diagonal_value(const RVec& s, Mat* grad) const {
  const Eigen::Index d = s.size();
  const double a = alpha_;
  auto on = [&s](Eigen::Index k) { return s(k) > 1e-300; };
  RVec g = RVec::Zero(d);
  double v = 0.0;
  switch (kind_) {
    case DivergenceKind::kUmegaki: {
      double cross = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) == 0.0 || !on(k)) continue;
        cross += diag_(k) * std::log2(s(k));
        g(k) = -diag_(k) / (s(k) * kLn2);
      }
      v = entropy_term_ - cross;
      break;
    }
    case DivergenceKind::kSandwiched: {
      const double t = (1.0 - a) / a;
      double q = 0.0;
      RVec mu = RVec::Zero(d);
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) == 0.0) continue;
        mu(k) = std::max(on(k) ? diag_(k) * std::pow(s(k), t) : 0.0, 1e-300);
        q += std::pow(mu(k), a);
      }
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) == 0.0 || !on(k)) continue;
        double m = diag_(k) * a * std::pow(mu(k), a - 1.0);
        g(k) = t * std::pow(s(k), t - 1.0) * m / (q * kLn2 * (a - 1.0));
      }
      v = std::log2(q) / (a - 1.0);
      break;
    }
    case DivergenceKind::kPetz: {
      const double b = 1.0 - a;
      double q = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) != 0.0 && on(k)) q += std::pow(diag_(k), a) * std::pow(s(k), b);
      }
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) == 0.0 || !on(k)) continue;
        g(k) = std::pow(diag_(k), a) * b * std::pow(s(k), b - 1.0) / (q * kLn2 * (a - 1.0));
      }
      v = std::log2(q) / (a - 1.0);
      break;
    }
    case DivergenceKind::kLogEuclidean: {
      double q = 0.0;
      RVec ex = RVec::Zero(d);
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) == 0.0) continue;
        ex(k) = std::exp2(a * std::log2(diag_(k)) + (1.0 - a) * (on(k) ? std::log2(s(k)) : 0.0));
        q += ex(k);
      }
      for (Eigen::Index k = 0; k < d; ++k) {
        if (diag_(k) != 0.0 && on(k)) g(k) = -ex(k) / (s(k) * kLn2 * q);
      }
      v = std::log2(q) / (a - 1.0);
      break;
    }
    case DivergenceKind::kMax: throw ValidationError("DivergenceEvaluator: unsupported kind");
  }
  if (grad) *grad = g.cast<cplx>().asDiagonal();
  return v;
}

double DivergenceEvaluator::operator()(const Mat& sigma, Mat* grad) const {
  if (diag_.size() > 0 && diagonal_matrix(sigma)) return diagonal_value(sigma.diagonal().real(), grad);
  SpectralDecomposition sd = spectral(sigma, 0.0);
  const int d = static_cast<int>(sd.values.size());
  // Treat non-positive eigenvalues as outside the support.
  auto on = [&sd](int k) { return sd.values(k) > 1e-300; };
  auto lam = [&](int k) { return on(k) ? sd.values(k) : 0.0; };
  switch (kind_) {
    case DivergenceKind::kUmegaki: {
      RVec lg(d);
      for (int k = 0; k < d; ++k) lg(k) = on(k) ? std::log2(lam(k)) : 0.0;
      Mat logs = sd.vectors * lg.asDiagonal() * sd.vectors.adjoint();
      double v = entropy_term_ - (rho_ * logs).trace().real();
      if (grad) {
        *grad = -spectral_gradient(
            sd, rho_, [](double x) { return x > 1e-300 ? std::log2(x) : 0.0; },
            [](double x) { return x > 1e-300 ? 1.0 / (x * kLn2) : 0.0; });
      }
      return v;
    }
    case DivergenceKind::kSandwiched: {
      const double a = alpha_;
      const double t = (1.0 - a) / a;
      auto f = [t](double x) { return x > 1e-300 ? std::pow(x, t) : 0.0; };
      auto df = [t](double x) { return x > 1e-300 ? t * std::pow(x, t - 1.0) : 0.0; };
      RVec pw(d);
      for (int k = 0; k < d; ++k) pw(k) = f(sd.values(k));
      Mat vs = v_.adjoint() * sd.vectors;
      Mat sv = vs * pw.asDiagonal() * vs.adjoint();
      RVec sq = lam_.cwiseSqrt();
      Mat c = sq.asDiagonal() * sv * sq.asDiagonal();
      Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(c));
      const RVec& mu = es.eigenvalues();
      double q = 0.0;
      RVec gmu(mu.size());
      for (Eigen::Index k = 0; k < mu.size(); ++k) {
        double m = std::max(mu(k), 1e-300);
        q += std::pow(m, a);
        gmu(k) = a * std::pow(m, a - 1.0);
      }
      if (grad) {
        Mat gp = es.eigenvectors() * gmu.asDiagonal() * es.eigenvectors().adjoint();
        Mat m = v_ * (sq.asDiagonal() * gp * sq.asDiagonal()) * v_.adjoint();
        *grad = spectral_gradient(sd, m, f, df) / (q * kLn2 * (a - 1.0));
      }
      return std::log2(q) / (a - 1.0);
    }
    case DivergenceKind::kPetz: {
      const double b = 1.0 - alpha_;
      auto f = [b](double x) { return x > 1e-300 ? std::pow(x, b) : 0.0; };
      auto df = [b](double x) { return x > 1e-300 ? b * std::pow(x, b - 1.0) : 0.0; };
      RVec pw(d);
      for (int k = 0; k < d; ++k) pw(k) = f(sd.values(k));
      double q = (rho_alpha_ * sd.vectors * pw.asDiagonal() * sd.vectors.adjoint()).trace().real();
      if (grad) *grad = spectral_gradient(sd, rho_alpha_, f, df) / (q * kLn2 * (alpha_ - 1.0));
      return std::log2(q) / (alpha_ - 1.0);
    }
    case DivergenceKind::kLogEuclidean: {
      const double a = alpha_;
      RVec lg(d);
      for (int k = 0; k < d; ++k) lg(k) = on(k) ? std::log2(lam(k)) : 0.0;
      Mat vs = v_.adjoint() * sd.vectors;
      Mat k = a * rho_log_ + (1.0 - a) * (vs * lg.asDiagonal() * vs.adjoint());
      Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(k));
      RVec ex = es.eigenvalues().unaryExpr([](double x) { return std::exp2(x); });
      double q = ex.sum();
      if (grad) {
        Mat n = v_ * (es.eigenvectors() * ex.asDiagonal() * es.eigenvectors().adjoint()) * v_.adjoint();
        Mat g = spectral_gradient(
            sd, n, [](double x) { return x > 1e-300 ? std::log2(x) : 0.0; },
            [](double x) { return x > 1e-300 ? 1.0 / (x * kLn2) : 0.0; });
        *grad = g * (kLn2 * (1.0 - a)) / (q * kLn2 * (a - 1.0));
      }
      return std::log2(q) / (a - 1.0);
    }
    case DivergenceKind::kMax: break;
  }
  throw ValidationError("DivergenceEvaluator: unsupported kind");
}

}  // namespace renyi
