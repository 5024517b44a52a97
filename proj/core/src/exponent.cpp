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

#include "renyi/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "renyi/entropy.hpp"
#include "renyi/parallel.hpp"

namespace renyi {

namespace {

double weight(double alpha) { return (1.0 - alpha) / alpha; }

// Warm start plus the maximally mixed start: a warm point near the boundary of
// the state space can trap the exponentiated parameterization.
OptimizerConfig warm_config(const OptimizerConfig& cfg) {
  OptimizerConfig c = cfg;
  c.multistart = 2;
  return c;
}

ExponentCurve infinite_curve(const CurveConfig& cfg) {
  ExponentCurve c;
  const int g = std::max(cfg.grid, 3);
  for (int k = 0; k < g; ++k) {
    c.alphas.push_back(0.5 + 0.5 * k / (g - 1));
    c.payoffs.push_back(kInf);
    c.values.push_back(k == g - 1 ? kInf : kInf);
  }
  c.supremum = kInf;
  c.argmax = 0.5;
  c.infinite = true;
  return c;
}

// Natural log-free helper: log2 tr 2^{V^dag log rho V} for the alpha -> 1 limit.
double flat_endpoint_value(const Mat& rho, const Mat& sigma) {
  Mat v = support_intersection_basis(rho, sigma);
  if (v.cols() == 0) return kInf;
  Mat k = v.adjoint() * matrix_log_on_support(rho) * v;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(k), Eigen::EigenvaluesOnly);
  double q = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) q += std::exp2(es.eigenvalues()(i));
  return -std::log2(q);
}

Mat log_on_basis(const Mat& x, const Mat& basis) {
  Mat sub = hermitize(basis.adjoint() * x * basis);
  Eigen::SelfAdjointEigenSolver<Mat> es(sub);
  RVec lg = es.eigenvalues().unaryExpr([](double v) { return std::log2(std::max(v, 1e-300)); });
  return basis * (es.eigenvectors() * lg.asDiagonal() * es.eigenvectors().adjoint()) * basis.adjoint();
}

}  // namespace

ExponentCurve trace_curve(const PayoffFactory& make, double endpoint_payoff, double endpoint_value, double offset,
                          const CurveConfig& cfg) {
  const int g = std::max(cfg.grid, 3);
  ExponentCurve c;
  c.offset = offset;
  c.alphas.resize(g);
  c.payoffs.assign(g, 0.0);
  c.values.assign(g, 0.0);
  for (int k = 0; k < g; ++k) c.alphas[k] = 0.5 + 0.5 * static_cast<double>(k) / (g - 1);
  c.alphas[g - 1] = 1.0;
  const int inner = g - 1;
  const int chunks = std::clamp(cfg.chunks, 1, inner);
  parallel_for(chunks, cfg.threads, [&](int ch) {
    PayoffFn fn = make();
    int lo = ch * inner / chunks;
    int hi = (ch + 1) * inner / chunks;
    for (int k = lo; k < hi; ++k) c.payoffs[k] = fn(c.alphas[k]);
  });
  c.payoffs[g - 1] = endpoint_payoff;
  for (int k = 0; k < inner; ++k) {
    c.values[k] = std::isfinite(c.payoffs[k]) ? weight(c.alphas[k]) * c.payoffs[k] + offset : kInf;
  }
  c.values[g - 1] = endpoint_value;
  for (double v : c.values) {
    if (!std::isfinite(v)) c.infinite = true;
  }
  int best = static_cast<int>(std::max_element(c.values.begin(), c.values.end()) - c.values.begin());
  for (int k = 0; k < g; ++k) {
    bool left = k == 0 || c.values[k] >= c.values[k - 1];
    bool right = k == g - 1 || c.values[k] >= c.values[k + 1];
    if (left && right) c.local_maxima.push_back(c.alphas[k]);
  }
  c.supremum = c.values[best];
  c.argmax = c.alphas[best];
  if (c.infinite) return c;

  // Golden-section refinement around the best grid point.
  double a = c.alphas[std::max(best - 1, 0)];
  double b = c.alphas[std::min(best + 1, g - 1)];
  PayoffFn fn = make();
  fn(a);
  auto value_at = [&](double x) {
    if (x >= 1.0) return endpoint_value;
    double p = fn(x);
    return std::isfinite(p) ? weight(x) * p + offset : kInf;
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  while (b - a > cfg.refine_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = value_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = value_at(x1);
    }
  }
  if (f1 > c.supremum) {
    c.supremum = f1;
    c.argmax = x1;
  }
  if (f2 > c.supremum) {
    c.supremum = f2;
    c.argmax = x2;
  }
  return c;
}

ExponentCurve exponent_dmax(const Mat& rho, const Mat& sigma, double r, const CurveConfig& cfg, DivergenceKind kind) {
  if (kind != DivergenceKind::kSandwiched && kind != DivergenceKind::kLogEuclidean) {
    throw ValidationError("exponent_dmax: kind must be sandwiched or log-euclidean");
  }
  const SupportCase sc = support_case(rho, sigma);
  if (sc == SupportCase::kOrthogonal) return infinite_curve(cfg);
  if (kind == DivergenceKind::kLogEuclidean) {
    double endpoint_value = 0.0;
    double endpoint_payoff = kInf;
    if (sc == SupportCase::kContained) {
      endpoint_payoff = umegaki(rho, sigma) - r;
    } else {
      endpoint_value = flat_endpoint_value(rho, sigma);
    }
    PayoffFactory make = [&rho, &sigma, r]() -> PayoffFn {
      return [&rho, &sigma, r](double a) { return log_euclidean(rho, sigma, a) - r; };
    };
    auto c = trace_curve(make, endpoint_payoff, endpoint_value, 0.0, cfg);
    return c;
  }
  Mat rp = rho;
  double offset = 0.0;
  if (sc == SupportCase::kOverlapping) {
    Mat pi = support_projector(sigma);
    rp = hermitize(pi * rho * pi);
    double c = trace_real(rp);
    rp /= c;
    offset = -std::log2(c);
  }
  PayoffFactory make = [rp, &sigma, r]() -> PayoffFn {
    return [rp, &sigma, r](double a) { return sandwiched(rp, sigma, a) - r; };
  };
  return trace_curve(make, umegaki(rp, sigma) - r, offset, offset, cfg);
}

ExponentCurve exponent_pa(const CQState& cq, double r, const CurveConfig& cfg, DivergenceKind kind) {
  cq.validate();
  const Mat rho = cq.joint();
  const int nx = cq.alphabet();
  const int de = cq.dim_e();
  const OptimizerConfig opt = cfg.opt;
  PayoffFactory make = [&rho, nx, de, r, kind, opt]() -> PayoffFn {
    auto warm = std::make_shared<std::vector<Mat>>();
    return [&rho, nx, de, r, kind, opt, warm](double a) {
      EntropicValue h = warm->empty()
                            ? conditional_entropy(rho, nx, de, kind, a, opt)
                            : conditional_entropy(rho, nx, de, kind, a, warm_config(opt), warm.get());
      *warm = h.optimizer_states;
      return r - h.value;
    };
  };
  return trace_curve(make, r - conditional_entropy_vn(rho, nx, de), 0.0, 0.0, cfg);
}

ExponentCurve exponent_dec(const Mat& rho_ra, int dr, int da, double r, int block, const CurveConfig& cfg,
                           DivergenceKind kind) {
  if (block != 1 && block != 2) throw ValidationError("exponent_dec: block must be 1 or 2");
  Mat rho = rho_ra;
  int r_dim = dr;
  int a_dim = da;
  if (block == 2) {
    if (dr * dr * da * da > 64) throw ValidationError("exponent_dec: blocked dimension exceeds 64");
    rho = permute_systems(kron(rho_ra, rho_ra), {dr, da, dr, da}, {0, 2, 1, 3});
    r_dim = dr * dr;
    a_dim = da * da;
  }
  const OptimizerConfig opt = cfg.opt;
  PayoffFactory make = [rho, r_dim, a_dim, r, kind, opt, block]() -> PayoffFn {
    auto warm = std::make_shared<std::vector<Mat>>();
    return [rho, r_dim, a_dim, r, kind, opt, block, warm](double a) {
      EntropicValue i =
          warm->empty()
              ? mutual_information(rho, r_dim, a_dim, kind, a, MutualInfoVariant::kDoubleMin, opt)
              : mutual_information(rho, r_dim, a_dim, kind, a, MutualInfoVariant::kDoubleMin, warm_config(opt),
                                   warm.get());
      *warm = i.optimizer_states;
      return i.value / block - 2.0 * r;
    };
  };
  auto c = trace_curve(make, mutual_information_vn(rho_ra, dr, da) - 2.0 * r, 0.0, 0.0, cfg);
  c.label = "upper-bound";
  return c;
}

namespace {

// Pieces of a hinge objective f = base + |arg|^+ with gradients of both parts.
struct HingeCore {
  std::vector<DensityVariable> vars;
  std::function<void(const std::vector<Mat>&, double&, double&, std::vector<Mat>*, std::vector<Mat>*)> eval;
};

enum class HingeMode { kSmooth, kBranchUnpenalized, kBranchPenalized };

Problem hinge_problem(const HingeCore& core, HingeMode mode, double param) {
  Problem p;
  p.vars = core.vars;
  p.eval = [core, mode, param](const std::vector<Mat>& xs, std::vector<Mat>* grads) {
    double b = 0.0;
    double s = 0.0;
    std::vector<Mat> gb, gs;
    core.eval(xs, b, s, grads ? &gb : nullptr, grads ? &gs : nullptr);
    double phi = 0.0;
    double dphi = 0.0;
    switch (mode) {
      case HingeMode::kSmooth: {
        // mu * log2(1 + 2^{s/mu}), evaluated without overflow.
        double z = s / param;
        phi = param * (std::max(z, 0.0) + std::log2(1.0 + std::exp2(-std::abs(z))));
        dphi = 1.0 / (1.0 + std::exp2(-z));
        break;
      }
      case HingeMode::kBranchUnpenalized:
        phi = param * std::pow(std::max(0.0, s), 2);
        dphi = 2.0 * param * std::max(0.0, s);
        break;
      case HingeMode::kBranchPenalized:
        phi = s + param * std::pow(std::max(0.0, -s), 2);
        dphi = 1.0 - 2.0 * param * std::max(0.0, -s);
        break;
    }
    if (grads) {
      grads->resize(xs.size());
      for (size_t i = 0; i < xs.size(); ++i) (*grads)[i] = gb[i] + dphi * gs[i];
    }
    return b + phi;
  };
  return p;
}

VariationalDual solve_hinge(const HingeCore& core, const OptimizerConfig& cfg, int starts) {
  Problem shape;
  shape.vars = core.vars;
  Rng rng(cfg.seed);
  OptimizerConfig inner = cfg;
  inner.tol = std::max(cfg.tol, 1e-10);
  auto exact = [&core](const std::vector<Mat>& xs, double& b, double& s) {
    core.eval(xs, b, s, nullptr, nullptr);
    return b + std::max(0.0, s);
  };
  VariationalDual out;
  std::vector<Mat> best_logits;
  double best = kInf;
  for (int st = 0; st < std::max(1, starts); ++st) {
    std::vector<Mat> logits = st == 0 ? zero_logits(shape) : random_logits(shape, rng, 1.5);
    for (double mu = 1e-1; mu >= 0.99e-6; mu *= 0.1) {
      DescentResult r = mirror_descent(hinge_problem(core, HingeMode::kSmooth, mu), logits, inner);
      logits = r.logits;
    }
    std::vector<Mat> xs;
    for (size_t i = 0; i < core.vars.size(); ++i) xs.push_back(state_from_logits(core.vars[i], logits[i]));
    double b, s;
    double v = exact(xs, b, s);
    if (v < best) {
      best = v;
      best_logits = logits;
      out.tau = xs;
      out.hinge_argument = s;
    }
  }
  out.value = best;
  out.branch = out.hinge_argument < -1e-7 ? "unpenalized" : (out.hinge_argument > 1e-7 ? "penalized" : "boundary");
  // Branch values by quadratic-penalty continuation from the best point.
  for (int br = 0; br < 2; ++br) {
    HingeMode mode = br == 0 ? HingeMode::kBranchUnpenalized : HingeMode::kBranchPenalized;
    std::vector<Mat> logits = best_logits;
    for (double kappa = 1e1; kappa <= 1.01e8; kappa *= 10.0) {
      logits = mirror_descent(hinge_problem(core, mode, kappa), logits, inner).logits;
    }
    std::vector<Mat> xs;
    for (size_t i = 0; i < core.vars.size(); ++i) xs.push_back(state_from_logits(core.vars[i], logits[i]));
    double b, s;
    core.eval(xs, b, s, nullptr, nullptr);
    if (br == 0) {
      out.branch_unpenalized = b;
    } else {
      out.branch_penalized = b + s;
    }
  }
  return out;
}

}  // namespace

double flat_variational(const Mat& rho, const Mat& sigma, double alpha, const OptimizerConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("flat_variational: alpha must lie in (0, 1)");
  const Mat basis = support_intersection_basis(rho, sigma);
  if (basis.cols() == 0) return kInf;
  const Mat lr = matrix_log_on_support(rho);
  const Mat ls = matrix_log_on_support(sigma);
  const double c = alpha / (1.0 - alpha);
  Problem p;
  p.vars.push_back(DensityVariable{static_cast<int>(rho.rows()), basis, false});
  p.eval = [basis, lr, ls, c](const std::vector<Mat>& xs, std::vector<Mat>* grads) {
    const Mat& tau = xs[0];
    Mat lt = log_on_basis(tau, basis);
    Mat g = (1.0 + c) * lt - ls - c * lr;
    if (grads) grads->assign(1, g);
    return (tau * g).trace().real();
  };
  OptimizerConfig one = cfg;
  one.multistart = 1;
  return multistart_minimize(p, one).best.value;
}

VariationalDual dual_dmax(const Mat& rho, const Mat& sigma, double r, const OptimizerConfig& cfg) {
  const int d = static_cast<int>(rho.rows());
  DensityVariable var;
  var.dim = d;
  if (commute(rho, sigma)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(rho + 0.6180339887 * sigma));
    Mat u = es.eigenvectors();
    std::vector<int> keep;
    double sr = spectral(rho).cutoff;
    double ss = spectral(sigma).cutoff;
    for (int i = 0; i < d; ++i) {
      double p = (u.col(i).adjoint() * rho * u.col(i))(0, 0).real();
      double q = (u.col(i).adjoint() * sigma * u.col(i))(0, 0).real();
      if (p > sr && q > ss) keep.push_back(i);
    }
    var.basis = Mat(d, static_cast<int>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) var.basis.col(j) = u.col(keep[j]);
    var.diagonal = true;
  } else {
    var.basis = support_intersection_basis(rho, sigma);
  }
  VariationalDual out;
  if (var.basis.cols() == 0) {
    out.value = kInf;
    out.infinite = true;
    return out;
  }
  const Mat lr = matrix_log_on_support(rho);
  const Mat ls = matrix_log_on_support(sigma);
  HingeCore core;
  core.vars = {var};
  const Mat basis = var.basis;
  core.eval = [lr, ls, basis, r](const std::vector<Mat>& xs, double& b, double& s, std::vector<Mat>* gb,
                                 std::vector<Mat>* gs) {
    const Mat& tau = xs[0];
    Mat lt = log_on_basis(tau, basis);
    double neg_ent = (tau * lt).trace().real();
    b = neg_ent - (tau * lr).trace().real();
    s = neg_ent - (tau * ls).trace().real() - r;
    if (gb) {
      gb->assign(1, lt - lr);
      gs->assign(1, lt - ls);
    }
  };
  return solve_hinge(core, cfg, 2);
}

VariationalDual dual_pa(const CQState& cq_in, double r, const OptimizerConfig& cfg) {
  cq_in.validate();
  CQState cq;
  for (int x = 0; x < cq_in.alphabet(); ++x) {
    if (cq_in.probs[x] > 0.0) {
      cq.probs.push_back(cq_in.probs[x]);
      cq.cond.push_back(cq_in.cond[x]);
    }
  }
  const int nx = cq.alphabet();
  const int de = cq.dim_e();
  HingeCore core;
  core.vars.push_back(DensityVariable{nx, Mat(), true});
  std::vector<Mat> bases, logs;
  for (int x = 0; x < nx; ++x) {
    bases.push_back(support_basis(cq.cond[x]));
    logs.push_back(matrix_log_on_support(cq.cond[x]));
    core.vars.push_back(DensityVariable{de, bases.back(), false});
  }
  const std::vector<double> p = cq.probs;
  core.eval = [p, bases, logs, nx, de, r](const std::vector<Mat>& xs, double& b, double& s, std::vector<Mat>* gb,
                                          std::vector<Mat>* gs) {
    std::vector<double> t(nx);
    for (int x = 0; x < nx; ++x) t[x] = std::max(xs[0](x, x).real(), 1e-300);
    Mat tau_e = Mat::Zero(de, de);
    for (int x = 0; x < nx; ++x) tau_e += t[x] * xs[1 + x];
    Mat le = matrix_log_on_support(tau_e);
    double h_e = -(tau_e * le).trace().real();
    double ht = 0.0;
    b = 0.0;
    double cond = 0.0;
    std::vector<Mat> lt(nx);
    std::vector<double> sx(nx), dx(nx);
    for (int x = 0; x < nx; ++x) {
      lt[x] = log_on_basis(xs[1 + x], bases[x]);
      double ne = (xs[1 + x] * lt[x]).trace().real();
      sx[x] = -ne;
      dx[x] = ne - (xs[1 + x] * logs[x]).trace().real();
      ht -= t[x] * std::log2(t[x]);
      b += t[x] * (std::log2(t[x]) - std::log2(p[x])) + t[x] * dx[x];
      cond += t[x] * sx[x];
    }
    double h = ht + cond - h_e;
    s = r - h;
    if (gb) {
      gb->assign(1 + nx, Mat());
      gs->assign(1 + nx, Mat());
      Mat gbt = Mat::Zero(nx, nx);
      Mat gst = Mat::Zero(nx, nx);
      for (int x = 0; x < nx; ++x) {
        gbt(x, x) = std::log2(t[x]) - std::log2(p[x]) + dx[x];
        gst(x, x) = std::log2(t[x]) - sx[x] - (xs[1 + x] * le).trace().real();
        (*gb)[1 + x] = t[x] * (lt[x] - logs[x]);
        (*gs)[1 + x] = t[x] * (lt[x] - le);
      }
      (*gb)[0] = gbt;
      (*gs)[0] = gst;
    }
  };
  return solve_hinge(core, cfg, 2);
}

VariationalDual dual_dec(const Mat& rho_ra, int dr, int da, double r, const OptimizerConfig& cfg) {
  if (rho_ra.rows() != dr * da) throw ValidationError("dual_dec: dimension mismatch");
  HingeCore core;
  const Mat basis = support_basis(rho_ra);
  core.vars.push_back(DensityVariable{dr * da, basis, false});
  const Mat lr = matrix_log_on_support(rho_ra);
  core.eval = [basis, lr, dr, da, r](const std::vector<Mat>& xs, double& b, double& s, std::vector<Mat>* gb,
                                     std::vector<Mat>* gs) {
    const Mat& tau = xs[0];
    Mat lt = log_on_basis(tau, basis);
    Mat tr_ = partial_trace(tau, {dr, da}, {0});
    Mat ta = partial_trace(tau, {dr, da}, {1});
    Mat lr_r = matrix_log_on_support(tr_);
    Mat la = matrix_log_on_support(ta);
    double neg_ent = (tau * lt).trace().real();
    b = neg_ent - (tau * lr).trace().real();
    double info = -(tr_ * lr_r).trace().real() - (ta * la).trace().real() + neg_ent;
    s = info - 2.0 * r;
    if (gb) {
      gb->assign(1, lt - lr);
      gs->assign(1, lt - kron(lr_r, Mat::Identity(da, da)) - kron(Mat::Identity(dr, dr), la));
    }
  };
  return solve_hinge(core, cfg, cfg.multistart);
}

}  // namespace renyi
