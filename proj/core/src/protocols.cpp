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

#include "renyi/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "renyi/entropy.hpp"
#include "renyi/exponent.hpp"
#include "renyi/parallel.hpp"

namespace renyi {

namespace {

int int_pow(int b, int e) {
  long long v = 1;
  for (int i = 0; i < e; ++i) {
    v *= b;
    if (v > (1 << 24)) throw ValidationError("dimension overflow");
  }
  return static_cast<int>(v);
}

// tr sqrt(S w S) for S = sqrt(A), with gradient (1/2) S (S w S)^{-1/2} S.
double root_fidelity(const Mat& s, const Mat& w, Mat* grad) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(s * w * s));
  const RVec& ev = es.eigenvalues();
  const double cut = kSupportCutoff * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  double f = 0.0;
  RVec inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    bool on = ev(i) > cut;
    f += on ? std::sqrt(ev(i)) : 0.0;
    inv(i) = on ? 0.5 / std::sqrt(ev(i)) : 0.0;
  }
  if (grad) *grad = s * (es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint()) * s;
  return f;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t i) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
}

}  // namespace

void HashFunction::validate() const {
  if (n < 1 || input_alphabet < 1 || output_size < 1) throw ValidationError("hash: sizes must be positive");
  if (static_cast<int>(table.size()) != int_pow(input_alphabet, n)) {
    throw ValidationError("hash: table must have |X|^n entries");
  }
  for (int z : table) {
    if (z < 0 || z >= output_size) throw ValidationError("hash: table entry outside the output alphabet");
  }
}

HashFunction HashFunction::random(int n, int input_alphabet, int output_size, Rng& rng) {
  HashFunction f{n, input_alphabet, output_size, {}};
  const int m = int_pow(input_alphabet, n);
  f.table.resize(m);
  for (int& z : f.table) z = rng.integer(0, output_size - 1);
  return f;
}

HashFunction HashFunction::injective(int n, int input_alphabet, int output_size) {
  const int m = int_pow(input_alphabet, n);
  if (output_size < m) throw ValidationError("hash: injective map needs |Z| >= |X|^n");
  HashFunction f{n, input_alphabet, output_size, std::vector<int>(m)};
  for (int x = 0; x < m; ++x) f.table[x] = x;
  return f;
}

HashFunction HashFunction::constant(int n, int input_alphabet, int output_size) {
  return HashFunction{n, input_alphabet, output_size, std::vector<int>(int_pow(input_alphabet, n), 0)};
}

PaPerformance pa_performance(const CQState& cq, const HashFunction& f, const OptimizerConfig& cfg) {
  cq.validate();
  f.validate();
  if (f.input_alphabet != cq.alphabet()) throw ValidationError("pa_performance: hash alphabet does not match X");
  const int nx = cq.alphabet();
  const int de = cq.dim_e();
  const int n = f.n;
  if (std::pow(static_cast<double>(de), n) > 1024.0) throw ValidationError("pa_performance: d_E^n exceeds 1024");
  const int den = int_pow(de, n);
  const int nz = f.output_size;
  std::vector<Mat> m(nz, Mat::Zero(den, den));
  std::vector<bool> used(nz, false);
  std::vector<int> digits(n, 0);
  for (size_t x = 0; x < f.table.size(); ++x) {
    double p = 1.0;
    size_t rest = x;
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rest % nx);
      rest /= nx;
      p *= cq.probs[digits[i]];
    }
    if (p <= 0.0) continue;
    Mat c = Mat::Identity(1, 1);
    if (den > 1) {
      for (int i = 0; i < n; ++i) c = kron(c, cq.cond[digits[i]]);
    }
    m[f.table[x]] += p * c;
    used[f.table[x]] = true;
  }
  PaPerformance out;
  if (den == 1) {
    double s = 0.0;
    for (int z = 0; z < nz; ++z) s += std::sqrt(std::max(0.0, m[z](0, 0).real()));
    out.value = std::min(1.0, s * s / nz);
    out.upper = out.value;
    out.omega = Mat::Identity(1, 1);
  } else {
    std::vector<Mat> roots;
    for (int z = 0; z < nz; ++z) {
      if (used[z]) roots.push_back(matrix_power_on_support(m[z], 0.5));
    }
    Problem prob;
    prob.vars.push_back(DensityVariable{den, Mat(), false});
    prob.eval = [roots](const std::vector<Mat>& xs, std::vector<Mat>* grads) {
      double f = 0.0;
      Mat g = Mat::Zero(xs[0].rows(), xs[0].cols());
      Mat gi;
      for (const Mat& s : roots) {
        f += root_fidelity(s, xs[0], grads ? &gi : nullptr);
        if (grads) g += gi;
      }
      if (grads) grads->assign(1, -g);
      return -f;
    };
    OptimizerConfig c = cfg;
    c.multistart = 1;
    MultistartResult r = multistart_minimize(prob, c);
    double fs = -r.best.value;
    double fu = fs + std::max(0.0, r.best.fw_gap);
    out.value = std::min(1.0, fs * fs / nz);
    out.upper = std::min(1.0, fu * fu / nz);
    out.omega = r.best.states[0];
  }
  if (static_cast<long long>(nz) * den <= 256) {
    Mat fin = Mat::Zero(nz * den, nz * den);
    Mat tgt = Mat::Zero(nz * den, nz * den);
    for (int z = 0; z < nz; ++z) {
      fin.block(z * den, z * den, den, den) = m[z];
      tgt.block(z * den, z * den, den, den) = out.omega / static_cast<double>(nz);
    }
    out.purified = purified_distance(fin, tgt);
    out.purified_checked = true;
  }
  return out;
}

HashStrategy parse_hash_strategy(const std::string& s) {
  if (s == "random") return HashStrategy::kRandom;
  if (s == "best-of-k") return HashStrategy::kBestOfK;
  throw ValidationError("unknown hash strategy '" + s + "' (expected random or best-of-k)");
}

std::vector<PaDecayRow> pa_decay_experiment(const CQState& cq, double r, const std::vector<int>& n_list,
                                            const PaDecayConfig& cfg) {
  cq.validate();
  if (cfg.samples < 1 || cfg.k < 1) throw ValidationError("pa_decay_experiment: samples and k must be positive");
  double h = conditional_entropy_vn(cq.joint(), cq.alphabet(), cq.dim_e());
  if (!(r > h)) throw ValidationError("pa_decay_experiment: rate must exceed H(X|E)");
  CurveConfig cc;
  cc.grid = cfg.grid;
  cc.opt = cfg.opt;
  const double floor = exponent_pa(cq, r, cc).supremum;
  std::vector<PaDecayRow> rows;
  for (int n : n_list) {
    if (n < 1) throw ValidationError("pa_decay_experiment: n must be positive");
    double bits = std::ceil(n * r - 1e-12);
    if (bits > 24) throw ValidationError("pa_decay_experiment: output alphabet too large");
    const int nz = 1 << static_cast<int>(std::max(0.0, bits));
    PaDecayRow row;
    row.n = n;
    row.output_size = nz;
    row.floor = floor;
    row.rates.assign(cfg.samples, 0.0);
    std::vector<double> worst(cfg.samples, kInf);
    const int k = cfg.strategy == HashStrategy::kBestOfK ? cfg.k : 1;
    parallel_for(cfg.samples, default_threads(), [&](int s) {
      Rng rng(derived_seed(cfg.seed + static_cast<std::uint64_t>(n) * 1000003ULL, s));
      double best = -1.0;
      for (int j = 0; j < k; ++j) {
        HashFunction f = HashFunction::random(n, cq.alphabet(), nz, rng);
        PaPerformance p = pa_performance(cq, f, cfg.opt);
        double rate = -std::log2(p.upper) / n;
        worst[s] = std::min(worst[s], rate);
        if (p.value > best) {
          best = p.value;
          row.rates[s] = rate;
        }
      }
    });
    row.best_rate = *std::min_element(row.rates.begin(), row.rates.end());
    for (double w : worst) {
      if (w < floor - cfg.slack) row.floor_holds = false;
    }
    rows.push_back(row);
  }
  return rows;
}

void DecouplingScheme::validate(int da) const {
  const int dc = static_cast<int>(catalyst.rows());
  validate_density(catalyst, Normalization::kNormalized, "catalyst");
  if (unitary.rows() != da * dc || unitary.cols() != da * dc) {
    throw ValidationError("decoupling scheme: unitary must act on A A'");
  }
  if (d_bar * d_tilde != da * dc) throw ValidationError("decoupling scheme: |Abar||Atilde| must equal |A||A'|");
  const Mat id = Mat::Identity(da * dc, da * dc);
  if ((unitary.adjoint() * unitary - id).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("decoupling scheme: U is not unitary within 1e-10");
  }
}

DecouplingScheme DecouplingScheme::random(int da, int d_tilde, Rng& rng, int catalyst_dim) {
  const int tot = da * catalyst_dim;
  if (d_tilde < 1 || tot % d_tilde != 0) throw ValidationError("decoupling scheme: |Atilde| must divide |A||A'|");
  DecouplingScheme s;
  s.catalyst = Mat::Identity(catalyst_dim, catalyst_dim) / static_cast<double>(catalyst_dim);
  s.unitary = random_unitary(tot, rng);
  s.d_tilde = d_tilde;
  s.d_bar = tot / d_tilde;
  return s;
}

DecPerformance dec_performance(const Mat& rho_ra, int dr, int da, const DecouplingScheme& scheme,
                               const OptimizerConfig& cfg) {
  if (rho_ra.rows() != dr * da) throw ValidationError("dec_performance: dimension mismatch");
  validate_density(rho_ra, Normalization::kNormalized, "rho_RA");
  scheme.validate(da);
  const int dc = static_cast<int>(scheme.catalyst.rows());
  if (dr * da * dc > 64) throw ValidationError("dec_performance: total dimension exceeds 64");
  Mat full = kron(rho_ra, scheme.catalyst);
  Mat u = kron(Mat::Identity(dr, dr), scheme.unitary);
  Mat out_state = u * full * u.adjoint();
  const int db = scheme.d_bar;
  Mat t = partial_trace(out_state, {dr, db, scheme.d_tilde}, {0, 1});
  Mat s = matrix_power_on_support(t, 0.5);
  Problem prob;
  prob.vars.push_back(DensityVariable{dr, Mat(), false});
  prob.vars.push_back(DensityVariable{db, Mat(), false});
  prob.eval = [s, dr, db](const std::vector<Mat>& xs, std::vector<Mat>* grads) {
    Mat g;
    double f = root_fidelity(s, kron(xs[0], xs[1]), grads ? &g : nullptr);
    if (grads) {
      grads->resize(2);
      (*grads)[0] = -weighted_trace_b(g, xs[1], dr, db);
      (*grads)[1] = -weighted_trace_a(g, xs[0], dr, db);
    }
    return -f;
  };
  MultistartResult r = multistart_minimize(prob, cfg);
  DecPerformance res;
  res.value = std::min(1.0, r.best.value * r.best.value);
  res.omega_r = r.best.states[0];
  res.omega_bar = r.best.states[1];
  for (double v : r.optima) res.multistart_values.push_back(std::min(1.0, v * v));
  return res;
}

HaarDecouplingReport haar_decoupling_check(const Mat& psi_ra, int dr, int da, int d_tilde, int samples,
                                           std::uint64_t seed, int threads) {
  if (samples < 100) throw ValidationError("haar_decoupling_check: at least 100 samples are required");
  if (psi_ra.rows() != dr * da) throw ValidationError("haar_decoupling_check: dimension mismatch");
  if (d_tilde < 1 || da % d_tilde != 0) throw ValidationError("haar_decoupling_check: |Atilde| must divide |A|");
  if (da > 16 || dr > 4) throw ValidationError("haar_decoupling_check: requires |A| <= 16 and |R| <= 4");
  validate_density(psi_ra, Normalization::kNormalized, "psi_RA");
  const int db = da / d_tilde;
  Mat psi_r = partial_trace(psi_ra, {dr, da}, {0});
  Mat psi_a = partial_trace(psi_ra, {dr, da}, {1});
  auto purity = [](const Mat& m) { return (m * m).trace().real(); };
  HaarDecouplingReport rep;
  rep.samples = samples;
  rep.bound = static_cast<double>(dr) * da / (static_cast<double>(d_tilde) * d_tilde) *
              (purity(psi_ra) + purity(psi_r) * purity(psi_a));
  std::vector<double> vals(samples);
  parallel_for(samples, threads, [&](int i) {
    Rng rng(derived_seed(seed, i));
    Mat u = kron(Mat::Identity(dr, dr), random_unitary(da, rng));
    Mat sig = partial_trace(u * psi_ra * u.adjoint(), {dr, db, d_tilde}, {0, 1});
    Mat sig_bar = partial_trace(sig, {dr, db}, {1});
    double d = trace_norm(sig - kron(psi_r, sig_bar));
    vals[i] = d * d;
  });
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= samples;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= samples - 1;
  rep.mean = mean;
  rep.standard_error = std::sqrt(var / samples);
  rep.holds = rep.mean <= rep.bound + 3.0 * rep.standard_error;
  return rep;
}

}  // namespace renyi
