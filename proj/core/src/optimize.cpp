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

#include "renyi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace renyi {

namespace {

Mat to_subspace(const DensityVariable& var, const Mat& ambient) {
  Mat g = var.basis.size() ? Mat(var.basis.adjoint() * ambient * var.basis) : ambient;
  g = hermitize(g);
  if (var.diagonal) g = Mat(g.diagonal().asDiagonal());
  return g;
}

Mat to_ambient(const DensityVariable& var, const Mat& sub) {
  return var.basis.size() ? Mat(var.basis * sub * var.basis.adjoint()) : sub;
}

// Orthonormal Hermitian basis of k x k matrices (diagonal part only if requested).
std::vector<Mat> hermitian_basis(int k, bool diagonal) {
  std::vector<Mat> out;
  for (int j = 0; j < k; ++j) {
    Mat e = Mat::Zero(k, k);
    e(j, j) = 1.0;
    out.push_back(e);
  }
  if (diagonal) return out;
  const double s = std::sqrt(0.5);
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      Mat re = Mat::Zero(k, k);
      re(j, l) = s;
      re(l, j) = s;
      out.push_back(re);
      Mat im = Mat::Zero(k, k);
      im(j, l) = cplx(0.0, -s);
      im(l, j) = cplx(0.0, s);
      out.push_back(im);
    }
  }
  return out;
}

double min_eigenvalue(const Mat& h) {
  if (h.rows() == 1) return h(0, 0).real();
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Mat center(const Mat& h) {
  const int k = static_cast<int>(h.rows());
  return h - (h.trace() / static_cast<double>(k)) * Mat::Identity(k, k);
}

struct Evaluated {
  std::vector<Mat> xs;      // ambient states
  std::vector<Mat> subs;    // subspace states
  std::vector<Mat> grads;   // subspace gradients
  double value = 0.0;
};

bool evaluate(const Problem& p, const std::vector<Mat>& logits, bool with_grad, double fd_step,
              Evaluated& out) {
  const size_t m = p.vars.size();
  out.xs.resize(m);
  out.subs.resize(m);
  for (size_t i = 0; i < m; ++i) {
    Mat sub = state_from_logits(DensityVariable{p.vars[i].rank(), Mat(), p.vars[i].diagonal}, logits[i]);
    out.subs[i] = sub;
    out.xs[i] = to_ambient(p.vars[i], sub);
  }
  if (!with_grad) {
    out.value = p.eval(out.xs, nullptr);
    return std::isfinite(out.value);
  }
  std::vector<Mat> amb;
  if (p.analytic_gradient) {
    out.value = p.eval(out.xs, &amb);
  } else {
    out.value = p.eval(out.xs, nullptr);
    amb = finite_difference_gradient(p, out.xs, fd_step);
  }
  out.grads.resize(m);
  for (size_t i = 0; i < m; ++i) out.grads[i] = to_subspace(p.vars[i], amb[i]);
  return std::isfinite(out.value);
}

}  // namespace

Mat state_from_logits(const DensityVariable& var, const Mat& h) {
  const int k = static_cast<int>(h.rows());
  Mat sub;
  if (var.diagonal || k == 1) {
    RVec d = h.diagonal().real();
    double mx = d.maxCoeff();
    RVec w = (d.array() - mx).exp();
    w /= w.sum();
    sub = Mat(w.cast<cplx>().asDiagonal());
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
    RVec d = es.eigenvalues();
    double mx = d.maxCoeff();
    RVec w = (d.array() - mx).exp();
    w /= w.sum();
    sub = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  }
  return to_ambient(var, sub);
}

std::vector<Mat> zero_logits(const Problem& p) {
  std::vector<Mat> out;
  for (const auto& v : p.vars) out.push_back(Mat::Zero(v.rank(), v.rank()));
  return out;
}

std::vector<Mat> random_logits(const Problem& p, Rng& rng, double scale) {
  std::vector<Mat> out;
  for (const auto& v : p.vars) {
    const int k = v.rank();
    Mat g = ginibre(k, k, rng);
    Mat h = scale * hermitize(g);
    if (v.diagonal) h = Mat(h.diagonal().real().cast<cplx>().asDiagonal());
    out.push_back(h);
  }
  return out;
}

Mat logits_from_state(const DensityVariable& var, const Mat& x) {
  Mat sub = var.basis.size() ? Mat(var.basis.adjoint() * x * var.basis) : x;
  if (var.diagonal) sub = Mat(sub.diagonal().asDiagonal());
  auto sd = spectral(sub, 0.0);
  double floor = 1e-12 * std::max(1e-300, sd.values(0));
  RVec lg = sd.values.unaryExpr([floor](double v) { return std::log(std::max(v, floor)); });
  Mat h = sd.vectors * lg.asDiagonal() * sd.vectors.adjoint();
  if (var.diagonal) h = Mat(h.diagonal().real().cast<cplx>().asDiagonal());
  return hermitize(h);
}

std::vector<Mat> finite_difference_gradient(const Problem& p, const std::vector<Mat>& xs, double fd_step) {
  std::vector<Mat> grads;
  std::vector<Mat> probe = xs;
  for (size_t i = 0; i < p.vars.size(); ++i) {
    const auto& var = p.vars[i];
    const int k = var.rank();
    Mat sub = to_subspace(DensityVariable{var.dim, var.basis, false}, xs[i]);
    double h = fd_step;
    double lmin = min_eigenvalue(sub);
    if (lmin < 2.0 * h) h = std::max(1e-12, 0.5 * lmin);
    Mat g = Mat::Zero(k, k);
    for (const Mat& b : hermitian_basis(k, var.diagonal)) {
      Mat dir = to_ambient(var, b);
      probe[i] = xs[i] + h * dir;
      double fp = p.eval(probe, nullptr);
      probe[i] = xs[i] - h * dir;
      double fm = p.eval(probe, nullptr);
      g += ((fp - fm) / (2.0 * h)) * b;
    }
    probe[i] = xs[i];
    grads.push_back(to_ambient(var, g));
  }
  return grads;
}

DescentResult mirror_descent(const Problem& p, std::vector<Mat> logits, const OptimizerConfig& cfg,
                             const std::vector<bool>& active_in) {
  const size_t m = p.vars.size();
  std::vector<bool> active = active_in.empty() ? std::vector<bool>(m, true) : active_in;
  DescentResult res;
  Evaluated cur;
  if (!evaluate(p, logits, true, cfg.fd_step, cur)) {
    throw std::runtime_error("mirror_descent: objective is not finite at the starting point");
  }
  double eta = -1.0;
  int stall = 0;
  double fw = std::numeric_limits<double>::infinity();
  double last_dec = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    fw = 0.0;
    double spread = 0.0;
    for (size_t i = 0; i < m; ++i) {
      if (!active[i]) continue;
      const Mat& g = cur.grads[i];
      double lmin = min_eigenvalue(g);
      fw += (cur.subs[i] * g).trace().real() - lmin;
      Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(g), Eigen::EigenvaluesOnly);
      spread = std::max(spread, es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff());
    }
    if (fw <= cfg.tol) {
      res.converged = true;
      break;
    }
    if (eta < 0.0) eta = 1.0 / std::max(spread, 1e-12);
    bool accepted = false;
    Evaluated next;
    std::vector<Mat> trial = logits;
    int tries = 0;
    double pred = 0.0;
    for (; tries < 60; ++tries) {
      for (size_t i = 0; i < m; ++i) {
        if (active[i]) trial[i] = center(logits[i] - eta * cur.grads[i]);
      }
      Evaluated cand;
      bool ok = evaluate(p, trial, false, cfg.fd_step, cand);
      pred = 0.0;
      for (size_t i = 0; i < m; ++i) {
        if (active[i]) pred += (cur.grads[i] * (cand.subs[i] - cur.subs[i])).trace().real();
      }
      if (ok && cand.value <= cur.value + 0.1 * pred) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      res.converged = fw <= 1e3 * cfg.tol;
      break;
    }
    evaluate(p, trial, true, cfg.fd_step, next);
    last_dec = cur.value - next.value;
    logits = trial;
    cur = std::move(next);
    if (tries == 0) eta *= 2.0;
    if (last_dec < 1e-3 * cfg.tol && -pred < cfg.tol) {
      if (++stall >= 20) {
        res.converged = fw <= 1e3 * cfg.tol;
        break;
      }
    } else {
      stall = 0;
    }
  }
  res.iterations = it;
  res.fw_gap = fw;
  res.last_decrease = last_dec;
  res.value = cur.value;
  res.states = cur.xs;
  res.logits = logits;
  return res;
}

DescentResult alternating_minimize(const Problem& p, std::vector<Mat> logits, const OptimizerConfig& cfg) {
  const size_t m = p.vars.size();
  if (m == 1) return mirror_descent(p, std::move(logits), cfg);
  DescentResult last;
  double prev = std::numeric_limits<double>::infinity();
  int total_iters = 0;
  int sweep = 0;
  for (; sweep < 500; ++sweep) {
    bool all_conv = true;
    for (size_t i = 0; i < m; ++i) {
      std::vector<bool> active(m, false);
      active[i] = true;
      last = mirror_descent(p, logits, cfg, active);
      logits = last.logits;
      total_iters += last.iterations;
      all_conv = all_conv && last.converged;
    }
    double dec = prev - last.value;
    prev = last.value;
    // Sub-solves that stall at round-off never report convergence; stop once sweeps stop helping.
    if (dec < cfg.tol && (all_conv || sweep >= 2)) break;
    if (total_iters > cfg.max_iters * static_cast<int>(m) * 4) break;
  }
  // Joint gap: every block's first-order condition at the final point.
  Evaluated fin;
  evaluate(p, logits, true, cfg.fd_step, fin);
  double fw = 0.0;
  for (size_t i = 0; i < m; ++i) {
    fw += (fin.subs[i] * fin.grads[i]).trace().real() - min_eigenvalue(fin.grads[i]);
  }
  last.fw_gap = fw;
  last.iterations = total_iters;
  last.converged = fw <= 1e3 * cfg.tol;
  last.value = fin.value;
  last.states = fin.xs;
  return last;
}

MultistartResult multistart_minimize(const Problem& p, const OptimizerConfig& cfg, const std::vector<Mat>* warm) {
  MultistartResult out;
  Rng rng(cfg.seed);
  const int starts = std::max(1, cfg.multistart);
  bool have = false;
  for (int s = 0; s < starts; ++s) {
    std::vector<Mat> init;
    if (s == 0) {
      init = warm ? *warm : zero_logits(p);
    } else if (s == 1 && warm) {
      init = zero_logits(p);
    } else {
      init = random_logits(p, rng, 1.5);
    }
    // Joint steps first; block-coordinate sweeps only when they stall short of the gap tolerance.
    DescentResult r = mirror_descent(p, init, cfg);
    if (!r.converged && p.vars.size() > 1) r = alternating_minimize(p, r.logits, cfg);
    out.optima.push_back(r.value);
    if (!have || r.value < out.best.value) {
      out.best = r;
      have = true;
    }
  }
  auto [lo, hi] = std::minmax_element(out.optima.begin(), out.optima.end());
  out.disagreement = (*hi - *lo) > 1e-6;
  return out;
}

BfgsResult minimize_bfgs(const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>& f,
                         Eigen::VectorXd x, int max_iters, double gtol) {
  const Eigen::Index n = x.size();
  BfgsResult res;
  Eigen::VectorXd g(n);
  double fx = f(x, &g);
  if (!std::isfinite(fx)) throw std::runtime_error("minimize_bfgs: infeasible starting point");
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  int small_steps = 0;
  int it = 0;
  for (; it < max_iters; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= gtol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * g;
    double slope = g.dot(dir);
    if (slope >= 0.0) {
      hinv.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    Eigen::VectorXd xn(n), gn(n);
    double fn = 0.0;
    bool ok = false;
    for (int k = 0; k < 80; ++k) {
      xn = x + step * dir;
      fn = f(xn, &gn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) {
      res.converged = g.lpNorm<Eigen::Infinity>() <= 1e3 * gtol;
      break;
    }
    Eigen::VectorXd s = xn - x;
    Eigen::VectorXd y = gn - g;
    double sy = s.dot(y);
    double dec = fx - fn;
    x = xn;
    g = gn;
    fx = fn;
    if (sy > 1e-300) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      double rho = 1.0 / sy;
      Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    if (dec <= 1e-16 * std::max(1.0, std::abs(fx))) {
      if (++small_steps >= 10) {
        res.converged = true;
        break;
      }
    } else {
      small_steps = 0;
    }
  }
  res.x = x;
  res.value = fx;
  res.iterations = it;
  return res;
}

}  // namespace renyi
