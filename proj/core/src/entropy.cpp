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

#include "renyi/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace renyi {

namespace {

void check_bipartite(const Mat& rho_ab, int da, int db) {
  if (da <= 0 || db <= 0 || rho_ab.rows() != da * db || rho_ab.cols() != da * db) {
    throw ValidationError("bipartite state: dimension mismatch");
  }
}

EntropicValue from_multistart(const MultistartResult& ms) {
  EntropicValue v;
  v.value = ms.best.value;
  v.optimizer_states = ms.best.states;
  v.gap_certificate = ms.best.last_decrease;
  v.fw_gap = ms.best.fw_gap;
  v.converged = ms.best.converged;
  v.multistart_values = ms.optima;
  v.multistart_disagreement = ms.disagreement;
  return v;
}

std::vector<Mat> warm_logits(const Problem& p, const std::vector<Mat>& states) {
  std::vector<Mat> out;
  for (size_t i = 0; i < p.vars.size(); ++i) out.push_back(logits_from_state(p.vars[i], states.at(i)));
  return out;
}

}  // namespace

namespace {

Mat diagonal_support(const Mat& m) {
  const double cut = kSupportCutoff * std::max(m.diagonal().real().maxCoeff(), 1e-300);
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, i).real() > cut) keep.push_back(static_cast<int>(i));
  }
  Mat b = Mat::Zero(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) b(keep[j], static_cast<Eigen::Index>(j)) = 1.0;
  return b;
}

}  // namespace

bool is_diagonal(const Mat& m) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && std::abs(m(i, j)) > 1e-14 * scale) return false;
    }
  }
  return true;
}

Mat weighted_trace_a(const Mat& g, const Mat& x, int da, int db) {
  Mat out = Mat::Zero(db, db);
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < da; ++k) {
      cplx w = x(i, k);
      if (w != cplx(0.0, 0.0)) out += w * g.block(k * db, i * db, db, db);
    }
  }
  return out;
}

Mat weighted_trace_b(const Mat& g, const Mat& y, int da, int db) {
  Mat out = Mat::Zero(da, da);
  for (int a = 0; a < da; ++a) {
    for (int c = 0; c < da; ++c) {
      out(a, c) = (y * g.block(a * db, c * db, db, db)).trace();
    }
  }
  return out;
}

EntropicValue min_over_sigma(const Mat& rho_ab, int da, int db, const Mat& x_a, DivergenceKind kind,
                             double alpha, const OptimizerConfig& cfg, const std::vector<Mat>* warm) {
  check_bipartite(rho_ab, da, db);
  auto ev = std::make_shared<DivergenceEvaluator>(rho_ab, kind, alpha);
  Mat rho_b = partial_trace(rho_ab, {da, db}, {1});
  Problem p;
  p.vars.push_back(DensityVariable{db, support_basis(rho_b), false});
  Mat x = x_a;
  p.eval = [ev, x, da, db](const std::vector<Mat>& xs, std::vector<Mat>* grads) {
    Mat full = kron(x, xs[0]);
    if (!grads) return (*ev)(full);
    Mat g;
    double v = (*ev)(full, &g);
    grads->assign(1, weighted_trace_a(g, x, da, db));
    return v;
  };
  std::vector<Mat> wl;
  if (warm) wl = warm_logits(p, *warm);
  return from_multistart(multistart_minimize(p, cfg, warm ? &wl : nullptr));
}

EntropicValue conditional_entropy(const Mat& rho_ab, int da, int db, DivergenceKind kind, double alpha,
                                  const OptimizerConfig& cfg, const std::vector<Mat>* warm) {
  EntropicValue v = min_over_sigma(rho_ab, da, db, Mat::Identity(da, da), kind, alpha, cfg, warm);
  v.value = -v.value;
  for (auto& m : v.multistart_values) m = -m;
  return v;
}

EntropicValue mutual_information(const Mat& rho_ab, int da, int db, DivergenceKind kind, double alpha,
                                 MutualInfoVariant variant, const OptimizerConfig& cfg,
                                 const std::vector<Mat>* warm) {
  check_bipartite(rho_ab, da, db);
  if (variant == MutualInfoVariant::kFixedMarginal) {
    Mat rho_a = partial_trace(rho_ab, {da, db}, {0});
    return min_over_sigma(rho_ab, da, db, rho_a, kind, alpha, cfg, warm);
  }
  auto ev = std::make_shared<DivergenceEvaluator>(rho_ab, kind, alpha);
  Mat rho_a = partial_trace(rho_ab, {da, db}, {0});
  Mat rho_b = partial_trace(rho_ab, {da, db}, {1});
  Problem p;
  // A diagonal rho is fixed by the product dephasing, which cannot increase the
  // divergence, so diagonal marginals suffice.
  const bool classical = is_diagonal(rho_ab);
  if (classical) {
    p.vars.push_back(DensityVariable{da, diagonal_support(rho_a), true});
    p.vars.push_back(DensityVariable{db, diagonal_support(rho_b), true});
  } else {
    p.vars.push_back(DensityVariable{da, support_basis(rho_a), false});
    p.vars.push_back(DensityVariable{db, support_basis(rho_b), false});
  }
  p.eval = [ev, da, db](const std::vector<Mat>& xs, std::vector<Mat>* grads) {
    Mat full = kron(xs[0], xs[1]);
    if (!grads) return (*ev)(full);
    Mat g;
    double v = (*ev)(full, &g);
    grads->assign(2, Mat());
    (*grads)[0] = weighted_trace_b(g, xs[1], da, db);
    (*grads)[1] = weighted_trace_a(g, xs[0], da, db);
    return v;
  };
  std::vector<Mat> wl;
  if (warm) wl = warm_logits(p, *warm);
  return from_multistart(multistart_minimize(p, cfg, warm ? &wl : nullptr));
}

EntropicValue regularized_mutual_information_estimate(const Mat& rho_ab, int da, int db, DivergenceKind kind,
                                                      double alpha, int max_block, const OptimizerConfig& cfg) {
  check_bipartite(rho_ab, da, db);
  if (max_block < 1 || max_block > 2) throw ValidationError("regularized estimate: max_block must be 1 or 2");
  int total = 1;
  for (int k = 0; k < max_block; ++k) total *= da * db;
  if (total > 64) throw ValidationError("regularized estimate: blocked dimension exceeds 64");
  EntropicValue b1 = mutual_information(rho_ab, da, db, kind, alpha, MutualInfoVariant::kDoubleMin, cfg);
  b1.block_values = {b1.value};
  if (max_block == 1) return b1;
  Mat two = permute_systems(kron(rho_ab, rho_ab), {da, db, da, db}, {0, 2, 1, 3});
  std::vector<Mat> warm = {kron(b1.optimizer_states[0], b1.optimizer_states[0]),
                           kron(b1.optimizer_states[1], b1.optimizer_states[1])};
  EntropicValue b2 = mutual_information(two, da * da, db * db, kind, alpha, MutualInfoVariant::kDoubleMin, cfg, &warm);
  b2.value /= 2.0;
  for (auto& m : b2.multistart_values) m /= 2.0;
  b2.block_values = {b1.value, b2.value};
  return b2;
}

double conditional_entropy_vn(const Mat& rho_ab, int da, int db) {
  check_bipartite(rho_ab, da, db);
  return von_neumann_entropy(rho_ab) - von_neumann_entropy(partial_trace(rho_ab, {da, db}, {1}));
}

double mutual_information_vn(const Mat& rho_ab, int da, int db) {
  check_bipartite(rho_ab, da, db);
  return von_neumann_entropy(partial_trace(rho_ab, {da, db}, {0})) +
         von_neumann_entropy(partial_trace(rho_ab, {da, db}, {1})) - von_neumann_entropy(rho_ab);
}

}  // namespace renyi
