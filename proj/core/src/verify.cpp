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

#include "renyi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "renyi/divergence.hpp"
#include "renyi/entropy.hpp"
#include "renyi/parallel.hpp"
#include "renyi/protocols.hpp"
#include "renyi/smoothing.hpp"
#include "renyi/state.hpp"

namespace renyi {

namespace {

// Collects expectations for one random instance.
class Ctx {
 public:
  Ctx(std::string check, std::uint64_t seed, double tol_scale)
      : check_(std::move(check)), seed_(seed), tol_scale_(tol_scale) {}

  void digest(double v) {
    const auto* b = reinterpret_cast<const unsigned char*>(&v);
    for (size_t i = 0; i < sizeof(double); ++i) {
      hash_ ^= b[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void digest(const Mat& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      digest(m.data()[i].real());
      digest(m.data()[i].imag());
    }
  }
  void digest(const std::vector<double>& v) {
    for (double x : v) digest(x);
  }

  // Expects observed <= bound + tol (tolerance scaled).
  void le(const std::string& label, double observed, double bound, double tol) {
    ++expectations_;
    double viol = observed - bound;
    if (std::isnan(viol)) viol = kInf;
    max_violation_ = std::max(max_violation_, viol);
    if (viol > tol * tol_scale_) {
      char buf[17];
      std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
      failures_.push_back(Failure{check_, label, seed_, buf, observed, bound, tol * tol_scale_});
    }
  }
  void near(const std::string& label, double a, double b, double tol) { le(label, std::abs(a - b), 0.0, tol); }
  void truth(const std::string& label, bool ok) { le(label, ok ? 0.0 : 1.0, 0.0, 0.0); }

  int expectations() const { return expectations_; }
  double max_violation() const { return max_violation_; }
  const std::vector<Failure>& failures() const { return failures_; }

 private:
  std::string check_;
  std::uint64_t seed_;
  double tol_scale_;
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
  int expectations_ = 0;
  double max_violation_ = -kInf;
  std::vector<Failure> failures_;
};

using InstanceFn = std::function<void(Rng&, Ctx&)>;

struct CheckDef {
  std::string suite;
  std::string name;
  int cost;  // suite runs ceil(trials / cost) instances
  InstanceFn fn;
};

std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Mat full_rank(int d, Rng& rng) { return random_density({d}, d, rng).matrix(); }
Mat any_rank(int d, Rng& rng) { return random_density({d}, rng.integer(1, d), rng).matrix(); }

Mat random_psd(int d, Rng& rng, double scale) {
  Mat g = ginibre(d, d, rng);
  return scale * hermitize(g * g.adjoint());
}

Mat pure_state(int d, Rng& rng) {
  Eigen::VectorXcd v = random_pure_vector(d, rng);
  return v * v.adjoint();
}

// Commuting pair sharing a random eigenbasis.
std::pair<Mat, Mat> commuting_pair(int d, Rng& rng) {
  Mat u = random_unitary(d, rng);
  std::vector<double> p = random_distribution(d, rng);
  std::vector<double> q = random_distribution(d, rng);
  Mat a = Mat::Zero(d, d), b = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    a(i, i) = p[i];
    b(i, i) = q[i];
  }
  return {hermitize(u * a * u.adjoint()), hermitize(u * b * u.adjoint())};
}

double min_eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Hermitian matrix with repeated eigenvalues so pinchings have nontrivial blocks.
Mat degenerate_hermitian(int d, Rng& rng) {
  Mat u = random_unitary(d, rng);
  Mat e = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) e(i, i) = static_cast<double>(rng.integer(0, 2));
  return hermitize(u * e * u.adjoint());
}

OptimizerConfig tight() {
  OptimizerConfig c;
  c.tol = 1e-10;
  return c;
}

// ---------------------------------------------------------------- core / divergence

void check_ptrace_kron(Rng& rng, Ctx& ctx) {
  int d1 = rng.integer(1, 4), d2 = rng.integer(1, 4);
  Mat a = any_rank(d1, rng), b = any_rank(d2, rng);
  ctx.digest(a);
  ctx.digest(b);
  Mat ab = kron(a, b);
  ctx.le("partial-trace-b", (partial_trace(ab, {d1, d2}, {0}) - a).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  ctx.le("partial-trace-a", (partial_trace(ab, {d1, d2}, {1}) - b).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

void check_fidelity_dpi(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3), dout = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = any_rank(d, rng);
  Channel ch = random_cptp(d, dout, 2, rng);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.le("fidelity-dpi", fidelity(rho, sigma), fidelity(ch.apply(rho), ch.apply(sigma)), 1e-9);
}

void check_pinching_inequality(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 4);
  Mat h = degenerate_hermitian(d, rng);
  Mat sigma = any_rank(d, rng);
  ctx.digest(h);
  ctx.digest(sigma);
  Pinching p = pinch(sigma, h);
  ctx.le("pinching-inequality", -min_eig(p.v_count * p.result - sigma), 0.0, 1e-9);
}

void check_block_fidelity(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 4);
  Mat h = degenerate_hermitian(d, rng);
  std::vector<Mat> proj = eigenspace_projectors(h);
  Mat rho = any_rank(d, rng);
  Mat sigma = pinch_with(full_rank(d, rng), proj);
  ctx.digest(h);
  ctx.digest(rho);
  ctx.digest(sigma);
  double lhs = fidelity(pinch_with(rho, proj), sigma);
  ctx.le("block-fidelity", lhs, std::sqrt(static_cast<double>(proj.size())) * fidelity(rho, sigma), 1e-9);
}

void check_alpha_monotone(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = full_rank(d, rng);
  double a = rng.uniform(0.5, 3.0), b = rng.uniform(0.5, 3.0);
  if (a > b) std::swap(a, b);
  double fa = rng.uniform(0.05, 2.5), fb = rng.uniform(0.05, 2.5);
  if (fa > fb) std::swap(fa, fb);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(std::vector<double>{a, b, fa, fb});
  ctx.le("sandwiched-alpha", sandwiched(rho, sigma, a), sandwiched(rho, sigma, b), 1e-9);
  ctx.le("flat-alpha", log_euclidean(rho, sigma, fa), log_euclidean(rho, sigma, fb), 1e-9);
}

void check_sigma_monotone(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = full_rank(d, rng);
  Mat bigger = sigma + random_psd(d, rng, rng.uniform(0.01, 0.5));
  double a = rng.uniform(0.5, 3.0), fa = rng.uniform(0.02, 1.0);
  ctx.digest(rho);
  ctx.digest(bigger);
  ctx.digest(std::vector<double>{a, fa});
  ctx.le("sandwiched-sigma", sandwiched(rho, bigger, a), sandwiched(rho, sigma, a), 1e-9);
  ctx.le("flat-sigma", log_euclidean(rho, bigger, fa), log_euclidean(rho, sigma, fa), 1e-9);
}

void check_data_processing(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3), dout = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = full_rank(d, rng);
  Channel ch = random_cptp(d, dout, 2, rng);
  double a = rng.uniform(0.5, 3.0), fa = rng.uniform(0.02, 1.0);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(std::vector<double>{a, fa});
  Mat nr = ch.apply(rho), ns = ch.apply(sigma);
  ctx.le("sandwiched-dpi", sandwiched(nr, ns, a), sandwiched(rho, sigma, a), 1e-8);
  ctx.le("flat-dpi", log_euclidean(nr, ns, fa), log_euclidean(rho, sigma, fa), 1e-8);
}

void check_flat_ordering(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = full_rank(d, rng);
  double a = rng.uniform(0.02, 0.98);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.le("flat-above-sandwiched", sandwiched(rho, sigma, a), log_euclidean(rho, sigma, a), 1e-9);
}

void check_half_fidelity(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = any_rank(d, rng);
  ctx.digest(rho);
  ctx.digest(sigma);
  double f = fidelity(rho, sigma);
  if (f < 1e-12) return;
  ctx.near("half-fidelity", sandwiched(rho, sigma, 0.5), -2.0 * std::log2(f), 1e-9);
}

void check_fidelity_relative_entropy(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = full_rank(d, rng), sigma = full_rank(d, rng), tau = any_rank(d, rng);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(tau);
  double f = fidelity(rho, sigma);
  ctx.le("fidelity-relative-entropy", -std::log2(f * f), umegaki(tau, rho) + umegaki(tau, sigma), 1e-8);
}

void check_lwd_general(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = any_rank(d, rng);
  Mat tau = rng.uniform(0.5, 2.0) * full_rank(d, rng);
  double a = rng.uniform(0.51, 0.99);
  double b = a / (2.0 * a - 1.0);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(tau);
  double f = fidelity(rho, sigma);
  if (f < 1e-12) return;
  double lhs = 2.0 * a / (1.0 - a) * std::log2(f);
  ctx.le("lwd-general", lhs, sandwiched(rho, tau, b) - sandwiched(sigma, tau, a), 1e-8);
}

// ---------------------------------------------------------------- entropies

void check_classical_discard(Rng& rng, Ctx& ctx) {
  std::vector<double> p = random_distribution(2, rng);
  Mat r0 = random_density({2, 2}, 4, rng).matrix(), r1 = random_density({2, 2}, 4, rng).matrix();
  Mat xab = Mat::Zero(8, 8);
  xab.block(0, 0, 4, 4) = p[0] * r0;
  xab.block(4, 4, 4, 4) = p[1] * r1;
  Mat ab = p[0] * r0 + p[1] * r1;
  double a = rng.uniform(0.5, 2.0);
  ctx.digest(xab);
  ctx.digest(a);
  double big = conditional_entropy(xab, 4, 2, DivergenceKind::kSandwiched, a, tight()).value;
  double small = conditional_entropy(ab, 2, 2, DivergenceKind::kSandwiched, a, tight()).value;
  ctx.le("classical-discard", small, big, 1e-7);
}

void check_dimension_bound(Rng& rng, Ctx& ctx) {
  Mat abc = random_density({2, 2, 2}, rng.integer(1, 8), rng).matrix();
  Mat ab = partial_trace(abc, {2, 2, 2}, {0, 1});
  double a = rng.uniform(0.5, 3.0);
  ctx.digest(abc);
  ctx.digest(a);
  double lhs = mutual_information(abc, 2, 4, DivergenceKind::kSandwiched, a, MutualInfoVariant::kFixedMarginal, tight())
                   .value;
  double rhs = mutual_information(ab, 2, 2, DivergenceKind::kSandwiched, a, MutualInfoVariant::kFixedMarginal, tight())
                   .value;
  ctx.le("dimension-bound", lhs, rhs + 2.0, 1e-7);
}

void check_variational_flat(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = full_rank(d, rng);
  double a = rng.uniform(0.05, 0.95);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(a);
  ctx.near("variational-flat", log_euclidean(rho, sigma, a), flat_variational(rho, sigma, a, tight()), 2e-4);
}

void check_mi_alpha_monotone(Rng& rng, Ctx& ctx) {
  Mat rho = random_density({2, 2}, rng.integer(1, 4), rng).matrix();
  std::vector<double> alphas(4);
  for (double& a : alphas) a = rng.uniform(0.5, 2.0);
  std::sort(alphas.begin(), alphas.end());
  ctx.digest(rho);
  ctx.digest(alphas);
  double prev = -kInf;
  for (double a : alphas) {
    double v = mutual_information(rho, 2, 2, DivergenceKind::kSandwiched, a, MutualInfoVariant::kDoubleMin, tight())
                   .value;
    ctx.le("mutual-information-alpha", prev, v, 1e-7);
    prev = v;
  }
}

void check_lwd(Rng& rng, Ctx& ctx) {
  Mat rho = random_density({2, 2}, rng.integer(1, 4), rng).matrix();
  Mat sigma = random_density({2, 2}, rng.integer(1, 4), rng).matrix();
  double a = rng.uniform(0.51, 0.99);
  double b = a / (2.0 * a - 1.0);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(a);
  double f = fidelity(rho, sigma);
  if (f < 1e-12) return;
  double lhs = 2.0 * a / (1.0 - a) * std::log2(f);
  double ha = conditional_entropy(rho, 2, 2, DivergenceKind::kSandwiched, a, tight()).value;
  double hb = conditional_entropy(sigma, 2, 2, DivergenceKind::kSandwiched, b, tight()).value;
  ctx.le("lwd", lhs, ha - hb, 1e-6);
}

// ---------------------------------------------------------------- duality

Mat random_pure_abc(Rng& rng) { return pure_state(8, rng); }

void check_duality_conditional(Rng& rng, Ctx& ctx) {
  Mat abc = random_pure_abc(rng);
  Mat ab = partial_trace(abc, {2, 2, 2}, {0, 1});
  Mat ac = partial_trace(abc, {2, 2, 2}, {0, 2});
  double a = rng.uniform(0.55, 3.0);
  double a2 = a / (2.0 * a - 1.0);
  ctx.digest(abc);
  ctx.digest(a);
  Mat id = Mat::Identity(2, 2);
  double lhs = min_over_sigma(ab, 2, 2, id, DivergenceKind::kSandwiched, a, tight()).value;
  double rhs = -min_over_sigma(ac, 2, 2, id, DivergenceKind::kSandwiched, a2, tight()).value;
  ctx.near("duality-conditional", lhs, rhs, 2e-4);
}

void check_duality_petz(Rng& rng, Ctx& ctx) {
  Mat abc = random_pure_abc(rng);
  Mat ab = partial_trace(abc, {2, 2, 2}, {0, 1});
  Mat ac = partial_trace(abc, {2, 2, 2}, {0, 2});
  Mat c = partial_trace(abc, {2, 2, 2}, {2});
  double b = rng.uniform(0.5, 2.0);
  ctx.digest(abc);
  ctx.digest(b);
  Mat id = Mat::Identity(2, 2);
  double lhs = min_over_sigma(ab, 2, 2, id, DivergenceKind::kPetz, b, tight()).value;
  double rhs = -sandwiched(ac, kron(id, c), 1.0 / b);
  ctx.near("duality-petz", lhs, rhs, 2e-4);
}

// ---------------------------------------------------------------- variational

CurveConfig coarse_curve(int grid) {
  CurveConfig cc;
  cc.grid = grid;
  cc.refine_tol = 1e-8;
  cc.opt = tight();
  // Each chunk start still runs random restarts; two keep suites affordable.
  cc.opt.multistart = 2;
  return cc;
}

void check_var_dmax(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho, sigma;
  if (rng.uniform() < 0.25) {
    std::tie(rho, sigma) = commuting_pair(d, rng);
  } else {
    rho = any_rank(d, rng);
    sigma = full_rank(d, rng);
  }
  double r = rng.uniform(0.0, 1.2) * umegaki(rho, sigma);
  ctx.digest(rho);
  ctx.digest(sigma);
  ctx.digest(r);
  double sup = exponent_dmax(rho, sigma, r, coarse_curve(64), DivergenceKind::kLogEuclidean).supremum;
  ctx.near("variational-dmax", sup, dual_dmax(rho, sigma, r, tight()).value, 2e-4);
}

void check_var_pa(Rng& rng, Ctx& ctx) {
  CQState cq = random_cq(2, 2, rng);
  double h = conditional_entropy_vn(cq.joint(), 2, 2);
  double r = std::max(0.0, h + rng.uniform(-0.3, 1.0));
  ctx.digest(cq.joint());
  ctx.digest(r);
  double sup = exponent_pa(cq, r, coarse_curve(64), DivergenceKind::kLogEuclidean).supremum;
  ctx.near("variational-pa", sup, dual_pa(cq, r, tight()).value, 2e-4);
}

void check_var_dec(Rng& rng, Ctx& ctx) {
  Mat rho = random_density({2, 2}, rng.integer(2, 4), rng).matrix();
  double r = rng.uniform(0.0, 0.6) * mutual_information_vn(rho, 2, 2);
  ctx.digest(rho);
  ctx.digest(r);
  double sup = exponent_dec(rho, 2, 2, r, 1, coarse_curve(64), DivergenceKind::kLogEuclidean).supremum;
  ctx.near("variational-dec", sup, dual_dec(rho, 2, 2, r, tight()).value, 2e-4);
}

void check_pa_ordering(Rng& rng, Ctx& ctx) {
  CQState cq = random_cq(2, 2, rng);
  double h = conditional_entropy_vn(cq.joint(), 2, 2);
  double r = h + rng.uniform(0.05, 1.0);
  ctx.digest(cq.joint());
  ctx.digest(r);
  double e = exponent_pa(cq, r, coarse_curve(32)).supremum;
  ctx.le("pa-ordering", e, dual_pa(cq, r, tight()).value, 1e-6);
}

void check_dec_ordering(Rng& rng, Ctx& ctx) {
  Mat rho = random_density({2, 2}, rng.integer(2, 4), rng).matrix();
  double r = rng.uniform(0.0, 0.5) * mutual_information_vn(rho, 2, 2);
  ctx.digest(rho);
  ctx.digest(r);
  double e = exponent_dec(rho, 2, 2, r, 1, coarse_curve(32)).supremum;
  ctx.le("dec-ordering", e, dual_dec(rho, 2, 2, r, tight()).value, 1e-6);
}

void check_dmax_rate_monotone(Rng& rng, Ctx& ctx) {
  int d = rng.integer(2, 3);
  Mat rho = any_rank(d, rng), sigma = full_rank(d, rng);
  double dd = umegaki(rho, sigma);
  double r1 = rng.uniform(0.0, 1.2) * dd, r2 = rng.uniform(0.0, 1.2) * dd;
  if (r1 > r2) std::swap(r1, r2);
  ctx.digest(rho);
  ctx.digest(sigma);
  CurveConfig cc = coarse_curve(64);
  ctx.le("dmax-rate-monotone", exponent_dmax(rho, sigma, r2, cc).supremum, exponent_dmax(rho, sigma, r1, cc).supremum,
         1e-9);
  ctx.le("dual-rate-monotone", dual_dmax(rho, sigma, r2, tight()).value, dual_dmax(rho, sigma, r1, tight()).value,
         1e-6);
}

Mat random_classical(int dr, int da, Rng& rng) {
  std::vector<double> p = random_distribution(dr * da, rng);
  Mat m = Mat::Zero(dr * da, dr * da);
  for (int i = 0; i < dr * da; ++i) m(i, i) = p[i];
  return m;
}

void check_positivity(Rng& rng, Ctx& ctx) {
  Mat rho = random_classical(2, 2, rng);
  double half = 0.5 * mutual_information_vn(rho, 2, 2);
  double delta = rng.uniform(0.02, 0.1);
  ctx.digest(rho);
  ctx.digest(delta);
  CurveConfig cc = coarse_curve(32);
  if (half - delta > 0.0) {
    ctx.le("positive-below", 1e-6, exponent_dec(rho, 2, 2, half - delta, 1, cc).supremum, 0.0);
  }
  ctx.le("zero-above", exponent_dec(rho, 2, 2, half + delta, 1, cc).supremum, 1e-6, 0.0);
}

void check_block_swap(Rng& rng, Ctx& ctx) {
  Mat rho = random_density({2, 2}, rng.integer(2, 4), rng).matrix();
  double r = rng.uniform(0.0, 0.5) * mutual_information_vn(rho, 2, 2);
  ctx.digest(rho);
  ctx.digest(r);
  CurveConfig cc = coarse_curve(16);
  double one = exponent_dec(rho, 2, 2, r, 1, cc).supremum;
  double two = exponent_dec(rho, 2, 2, r, 2, cc).supremum;
  ctx.le("block-swap", two, one, 1e-6);
}

// ---------------------------------------------------------------- smoothing

struct SmoothingInstance {
  Mat rho;
  Mat sigma;
  double lambda;
  bool commuting;
};

SmoothingInstance smoothing_instance(Rng& rng) {
  SmoothingInstance s;
  int d = rng.integer(2, 3);
  s.commuting = rng.uniform() < 0.3;
  if (s.commuting) {
    std::tie(s.rho, s.sigma) = commuting_pair(d, rng);
  } else {
    s.rho = any_rank(d, rng);
    s.sigma = full_rank(d, rng);
  }
  double dmax = max_divergence(s.rho, s.sigma);
  s.lambda = rng.uniform(-0.5, std::max(dmax, 0.0));
  return s;
}

std::vector<double> diagonal_in_basis(const Mat& m, const Mat& u) {
  std::vector<double> v(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) v[i] = (u.col(i).adjoint() * m * u.col(i))(0, 0).real();
  return v;
}

void check_smoothing_certified(Rng& rng, Ctx& ctx) {
  SmoothingInstance s = smoothing_instance(rng);
  ctx.digest(s.rho);
  ctx.digest(s.sigma);
  ctx.digest(s.lambda);
  SmoothingResult res = smooth_quantum(s.rho, s.sigma, s.lambda);
  ctx.le("bracket", res.epsilon - res.epsilon_lower, 5e-3, 0.0);
  if (s.commuting) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(s.rho + 0.6180339887 * s.sigma));
    Mat u = es.eigenvectors();
    ClassicalSmoothing cl = smooth_classical(diagonal_in_basis(s.rho, u), diagonal_in_basis(s.sigma, u), s.lambda);
    ctx.near("classical-match", res.epsilon, cl.epsilon, 1e-6);
  }
  PinchingSandwich ps = pinching_sandwich(s.rho, s.sigma, s.lambda, eigenspace_projectors(s.sigma));
  ctx.truth("pinching-sandwich", ps.holds);
}

void check_smoothing_monotone(Rng& rng, Ctx& ctx) {
  SmoothingInstance s = smoothing_instance(rng);
  ctx.digest(s.rho);
  ctx.digest(s.sigma);
  std::vector<double> lambdas(4);
  for (double& l : lambdas) l = rng.uniform(-0.5, 1.5);
  std::sort(lambdas.begin(), lambdas.end());
  // The certified lower bound at a larger lambda never exceeds a value attained at a smaller one.
  double prev = kInf;
  for (double l : lambdas) {
    SmoothingResult res = smooth_quantum(s.rho, s.sigma, l);
    ctx.le("lambda-monotone", res.epsilon_lower, prev, 1e-8);
    prev = res.epsilon;
  }
}

void check_smoothing_dpi(Rng& rng, Ctx& ctx) {
  SmoothingInstance s = smoothing_instance(rng);
  int d = static_cast<int>(s.rho.rows());
  Channel ch = random_cptp(d, d, 2, rng);
  ctx.digest(s.rho);
  ctx.digest(s.sigma);
  ctx.digest(s.lambda);
  Mat nr = ch.apply(s.rho), ns = ch.apply(s.sigma);
  ns = hermitize(ns);
  // The channel output of a full-rank sigma can be rank deficient only on a null set.
  if (min_eig(ns) <= 1e-10) return;
  double lhs = smooth_quantum(nr, ns, s.lambda).epsilon_lower;
  ctx.le("smoothing-dpi", lhs, smooth_quantum(s.rho, s.sigma, s.lambda).epsilon, 5e-3);
}

// ---------------------------------------------------------------- types

struct ClassicalPair {
  std::vector<double> p, q;
  double r;
};

ClassicalPair classical_pair(Rng& rng) {
  ClassicalPair c;
  int k = rng.integer(2, 3);
  c.p = random_distribution(k, rng);
  c.q = random_distribution(k, rng);
  c.r = rng.uniform(-0.2, 1.2) * std::max(classical_kl(c.p, c.q), 0.05);
  return c;
}

void check_types_bounds(Rng& rng, Ctx& ctx) {
  ClassicalPair c = classical_pair(rng);
  int n = rng.integer(2, 60);
  ctx.digest(c.p);
  ctx.digest(c.q);
  ctx.digest(c.r);
  ConvergenceReport rep = convergence_report(c.p, c.q, c.r, {n});
  ctx.truth("type-bounds", rep.bounds_hold);
  TypeTable tab = build_type_table(c.p, c.q, n);
  ctx.near("total-probability", std::exp2(tab.log2_total_p()), 1.0, 1e-9);
  ctx.le("type-count", static_cast<double>(tab.size()), std::pow(n + 1.0, static_cast<double>(c.p.size())), 0.0);
}

void check_types_one_shot(Rng& rng, Ctx& ctx) {
  ClassicalPair c = classical_pair(rng);
  ctx.digest(c.p);
  ctx.digest(c.q);
  ctx.digest(c.r);
  ctx.near("one-shot", finite_n_optimum(c.p, c.q, c.r, 1).a_n, smooth_classical(c.p, c.q, c.r).fidelity, 1e-12);
}

void check_types_variational(Rng& rng, Ctx& ctx) {
  ClassicalPair c = classical_pair(rng);
  ctx.digest(c.p);
  ctx.digest(c.q);
  ctx.digest(c.r);
  ctx.near("classical-variational", classical_exponent(c.p, c.q, c.r).value, classical_inf_form(c.p, c.q, c.r), 1e-8);
}

// ---------------------------------------------------------------- protocols

void check_pa_relabel(Rng& rng, Ctx& ctx) {
  CQState cq = random_cq(2, 2, rng);
  int n = rng.integer(1, 2);
  int nz = 1 << rng.integer(1, 2);
  HashFunction f = HashFunction::random(n, 2, nz, rng);
  std::vector<int> perm(nz);
  for (int z = 0; z < nz; ++z) perm[z] = z;
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  HashFunction g = f;
  for (int& z : g.table) z = perm[z];
  ctx.digest(cq.joint());
  PaPerformance a = pa_performance(cq, f, tight());
  PaPerformance b = pa_performance(cq, g, tight());
  ctx.near("pa-relabel", a.value, b.value, 1e-10);
  ctx.le("pa-range-low", -a.value, 0.0, 0.0);
  ctx.le("pa-range-high", a.value, 1.0, 0.0);
  ctx.le("pa-upper", a.value, a.upper, 0.0);
  if (a.purified_checked) ctx.near("pa-purified-form", a.purified, std::sqrt(std::max(0.0, 1.0 - a.value)), 1e-9);
}

void check_dec_local_unitary(Rng& rng, Ctx& ctx) {
  int da = rng.uniform() < 0.5 ? 2 : 4;
  Mat rho = random_density({2, da}, rng.integer(1, 2 * da), rng).matrix();
  DecouplingScheme s = DecouplingScheme::random(da, da == 2 ? rng.integer(1, 2) : 2, rng);
  Mat u = kron(random_unitary(2, rng), Mat::Identity(da, da));
  ctx.digest(rho);
  double a = dec_performance(rho, 2, da, s, tight()).value;
  double b = dec_performance(u * rho * u.adjoint(), 2, da, s, tight()).value;
  ctx.near("dec-local-unitary", a, b, 1e-8);
  ctx.le("dec-range-low", -a, 0.0, 0.0);
  ctx.le("dec-range-high", a, 1.0, 0.0);
}

void check_pa_floor(Rng& rng, Ctx& ctx) {
  CQState cq = random_cq(2, 2, rng);
  double h = conditional_entropy_vn(cq.joint(), 2, 2);
  double r = h + rng.uniform(0.1, 1.0);
  ctx.digest(cq.joint());
  ctx.digest(r);
  PaDecayConfig pc;
  pc.samples = 1;
  pc.seed = rng.next();
  pc.grid = 32;
  pc.opt = tight();
  for (const PaDecayRow& row : pa_decay_experiment(cq, r, {1, 2, 3}, pc)) {
    for (double rate : row.rates) ctx.le("pa-floor", row.floor, rate, 1e-6);
  }
}

void check_dec_floor(Rng& rng, Ctx& ctx) {
  // Nearly perfectly correlated classical source on 6 x 6, so I(R:A) > 2 log2 |Atilde|.
  const int d = 6;
  std::vector<double> noise = random_distribution(d * d, rng);
  double eta = rng.uniform(0.0, 0.2);
  Mat rho = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d * d; ++i) rho(i, i) = eta * noise[i];
  for (int i = 0; i < d; ++i) rho(i * d + i, i * d + i) += (1.0 - eta) / d;
  DecouplingScheme s = DecouplingScheme::random(d, 2, rng);
  ctx.digest(rho);
  double e = exponent_dec(rho, d, d, 1.0, 1, coarse_curve(16)).supremum;
  double p = dec_performance(rho, d, d, s, tight()).value;
  ctx.le("dec-floor", e, -std::log2(p), 1e-6);
}

void check_haar(Rng& rng, Ctx& ctx) {
  int da = rng.uniform() < 0.5 ? 2 : 4;
  int dt = da == 2 ? 2 : (rng.uniform() < 0.5 ? 2 : 4);
  Mat psi = pure_state(2 * da, rng);
  ctx.digest(psi);
  HaarDecouplingReport rep = haar_decoupling_check(psi, 2, da, dt, 100, rng.next());
  ctx.le("haar-decoupling", rep.mean, rep.bound + 3.0 * rep.standard_error, 0.0);
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"divergence-props", "partial-trace-kron", 1, check_ptrace_kron},
      {"divergence-props", "fidelity-dpi", 1, check_fidelity_dpi},
      {"divergence-props", "pinching-inequality", 1, check_pinching_inequality},
      {"divergence-props", "block-fidelity", 1, check_block_fidelity},
      {"divergence-props", "alpha-monotonicity", 1, check_alpha_monotone},
      {"divergence-props", "sigma-monotonicity", 1, check_sigma_monotone},
      {"divergence-props", "data-processing", 1, check_data_processing},
      {"divergence-props", "flat-ordering", 1, check_flat_ordering},
      {"divergence-props", "half-fidelity", 1, check_half_fidelity},
      {"divergence-props", "fidelity-relative-entropy", 1, check_fidelity_relative_entropy},
      {"divergence-props", "lwd-general", 1, check_lwd_general},
      {"entropy-props", "classical-discard", 1, check_classical_discard},
      {"entropy-props", "dimension-bound", 1, check_dimension_bound},
      {"entropy-props", "variational-flat", 1, check_variational_flat},
      {"entropy-props", "mutual-information-alpha", 2, check_mi_alpha_monotone},
      {"entropy-props", "lwd", 1, check_lwd},
      {"duality", "duality-conditional", 1, check_duality_conditional},
      {"duality", "duality-petz", 1, check_duality_petz},
      {"variational", "variational-dmax", 1, check_var_dmax},
      {"variational", "variational-pa", 1, check_var_pa},
      {"variational", "variational-dec", 2, check_var_dec},
      {"variational", "pa-ordering", 2, check_pa_ordering},
      {"variational", "dec-ordering", 4, check_dec_ordering},
      {"variational", "dmax-rate-monotone", 2, check_dmax_rate_monotone},
      {"variational", "positivity-threshold", 4, check_positivity},
      {"variational", "block-swap", 25, check_block_swap},
      {"smoothing", "smoothing-certified", 1, check_smoothing_certified},
      {"smoothing", "smoothing-monotone", 2, check_smoothing_monotone},
      {"smoothing", "smoothing-dpi", 2, check_smoothing_dpi},
      {"types", "type-bounds", 1, check_types_bounds},
      {"types", "one-shot", 1, check_types_one_shot},
      {"types", "classical-variational", 1, check_types_variational},
      {"protocols", "pa-relabel", 1, check_pa_relabel},
      {"protocols", "dec-local-unitary", 2, check_dec_local_unitary},
      {"protocols", "pa-floor", 2, check_pa_floor},
      {"protocols", "dec-floor", 5, check_dec_floor},
      {"protocols", "haar-decoupling", 2, check_haar},
  };
  return defs;
}

const CheckDef& find_check(const std::string& name) {
  for (const auto& d : registry()) {
    if (d.name == name) return d;
  }
  throw ValidationError("unknown check '" + name + "'");
}

CheckReport run_instances(const CheckDef& def, const std::vector<std::uint64_t>& seeds, const VerifyConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Ctx> ctxs;
  ctxs.reserve(seeds.size());
  for (std::uint64_t s : seeds) ctxs.emplace_back(def.name, s, cfg.tol_scale);
  parallel_for(static_cast<int>(seeds.size()), cfg.threads, [&](int i) {
    Rng rng(seeds[i]);
    def.fn(rng, ctxs[i]);
  });
  CheckReport rep;
  rep.name = def.name;
  rep.suite = def.suite;
  rep.instances = static_cast<int>(seeds.size());
  rep.max_violation = -kInf;
  for (const Ctx& c : ctxs) {
    rep.expectations += c.expectations();
    rep.max_violation = std::max(rep.max_violation, c.max_violation());
    rep.failures.insert(rep.failures.end(), c.failures().begin(), c.failures().end());
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

int CheckReport::failures_with_label(const std::string& label) const {
  return static_cast<int>(
      std::count_if(failures.begin(), failures.end(), [&](const Failure& f) { return f.label == label; }));
}

std::vector<std::string> suite_names() {
  return {"divergence-props", "entropy-props", "duality", "variational", "smoothing", "types", "protocols", "all"};
}

std::vector<std::string> check_names(const std::string& suite) {
  std::vector<std::string> out;
  for (const auto& d : registry()) {
    if (suite == "all" || d.suite == suite) out.push_back(d.name);
  }
  if (out.empty()) throw ValidationError("unknown suite '" + suite + "'");
  return out;
}

CheckReport run_check(const std::string& name, int trials, std::uint64_t seed, const VerifyConfig& cfg) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  const CheckDef& def = find_check(name);
  std::vector<std::uint64_t> seeds(trials);
  const std::uint64_t base = mix(seed ^ name_hash(name));
  for (int i = 0; i < trials; ++i) seeds[i] = mix(base + static_cast<std::uint64_t>(i));
  return run_instances(def, seeds, cfg);
}

CheckReport replay_instance(const std::string& name, std::uint64_t instance_seed, const VerifyConfig& cfg) {
  return run_instances(find_check(name), {instance_seed}, cfg);
}

SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed, const VerifyConfig& cfg) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = name;
  if (name == "all") {
    for (const auto& s : suite_names()) {
      if (s == "all") continue;
      SuiteReport child = run_suite(s, trials, seed, cfg);
      rep.instances += child.instances;
      rep.failures.insert(rep.failures.end(), child.failures.begin(), child.failures.end());
      rep.children.push_back(std::move(child));
    }
  } else {
    for (const auto& check : check_names(name)) {
      const CheckDef& def = find_check(check);
      int n = (trials + def.cost - 1) / def.cost;
      CheckReport c = run_check(check, n, seed, cfg);
      rep.instances += c.instances;
      rep.failures.insert(rep.failures.end(), c.failures.begin(), c.failures.end());
      rep.checks.push_back(std::move(c));
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string SuiteReport::to_text(bool timing) const {
  std::ostringstream os;
  os << "suite " << name << ": " << instances << " instances, " << failures.size() << " failures";
  if (timing) os << ", " << format_number(wall_seconds) << " s";
  os << "\n";
  for (const auto& c : checks) {
    os << "  " << c.name << ": " << c.instances << " instances, " << c.expectations << " expectations, "
       << c.failures.size() << " failures, max violation " << format_number(c.max_violation) << "\n";
  }
  for (const auto& ch : children) os << ch.to_text(timing);
  if (!children.empty()) return os.str();
  for (const auto& f : failures) {
    os << "  FAIL " << f.check << "/" << f.label << " seed=" << f.seed << " inputs=" << f.digest
       << " observed=" << format_number(f.observed) << " bound=" << format_number(f.bound)
       << " tol=" << format_number(f.tolerance) << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json report_json(const SuiteReport& r, bool timing) {
  nlohmann::json j;
  j["suite"] = r.name;
  j["instances"] = r.instances;
  if (timing) j["wall_seconds"] = r.wall_seconds;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) {
    j["failures"].push_back({{"check", f.check},
                             {"label", f.label},
                             {"seed", f.seed},
                             {"inputs", f.digest},
                             {"observed", format_number(f.observed)},
                             {"bound", format_number(f.bound)},
                             {"tolerance", f.tolerance}});
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"instances", c.instances},
                           {"expectations", c.expectations},
                           {"failures", c.failures.size()},
                           {"max_violation", format_number(c.max_violation)}});
  }
  if (!r.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& ch : r.children) j["children"].push_back(report_json(ch, timing));
  }
  return j;
}

}  // namespace

std::string SuiteReport::to_json(bool timing) const { return report_json(*this, timing).dump(2); }

std::vector<double> blocking_gaps(const Mat& rho, const Mat& sigma, double alpha, int m_max) {
  if (m_max < 1) throw ValidationError("blocking_gaps: m_max must be positive");
  const double base = sandwiched(rho, sigma, alpha);
  std::vector<double> out;
  Mat rm = Mat::Identity(1, 1), sm = Mat::Identity(1, 1);
  for (int m = 1; m <= m_max; ++m) {
    rm = kron(rm, rho);
    sm = kron(sm, sigma);
    Mat pinched = pinch(rm, sm).result;
    out.push_back(std::abs(sandwiched(pinched, sm, alpha) / m - base));
  }
  return out;
}

std::string curve_csv(const ExponentCurve& curve) {
  std::ostringstream os;
  os << "alpha,payoff,weighted_value\n";
  for (size_t k = 0; k < curve.alphas.size(); ++k) {
    os << format_number(curve.alphas[k]) << ',' << format_number(curve.payoffs[k]) << ','
       << format_number(curve.values[k]) << '\n';
  }
  os << "supremum," << format_number(curve.supremum) << ',' << format_number(curve.argmax) << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void emit_curve(const ExponentCurve& curve, const std::string& path) { write_text_file(path, curve_csv(curve)); }

void emit_convergence(const ConvergenceReport& report, const std::string& path) {
  write_text_file(path, report.to_csv());
}

}  // namespace renyi
