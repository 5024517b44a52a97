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

#include "renyi/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "renyi/linalg.hpp"
#include "renyi/smoothing.hpp"

namespace renyi {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();
constexpr double kNegInfD = -std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

double log2_sum_exp2(const std::vector<double>& v) {
  double mx = kNegInfD;
  for (double x : v) mx = std::max(mx, x);
  if (mx == kNegInfD) return kNegInfD;
  double s = 0.0;
  for (double x : v) s += std::exp2(x - mx);
  return mx + std::log2(s);
}

void check_pair(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.empty() || p.size() != q.size()) throw ValidationError("p and q must have equal non-zero length");
  double sp = 0.0, sq = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (!(p[x] >= 0.0) || !(q[x] >= 0.0)) throw ValidationError("distributions must be non-negative");
    sp += p[x];
    sq += q[x];
  }
  if (std::abs(sp - 1.0) > 1e-9) throw ValidationError("p must sum to 1");
  if (sq <= 0.0) throw ValidationError("q must be non-zero");
}

double binomial_count(int n, int k) {
  double c = 1.0;
  for (int i = 1; i < k; ++i) c = c * (n + i) / i;
  return c;
}

void enumerate(int k, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int c = 0; c <= n; ++c) {
    cur.push_back(c);
    enumerate(k, n - c, cur, out);
    cur.pop_back();
  }
}

double rel_ent(const std::vector<double>& t, const std::vector<double>& q) {
  double d = 0.0;
  for (size_t x = 0; x < t.size(); ++x) {
    if (t[x] <= 0.0) continue;
    if (q[x] <= 0.0) return kInfD;
    d += t[x] * std::log2(t[x] / q[x]);
  }
  return d;
}

std::vector<double> tilted(const std::vector<double>& p, const std::vector<double>& q, double b) {
  std::vector<double> t(p.size(), 0.0);
  double s = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0 && q[x] > 0.0) {
      t[x] = std::exp(b * std::log(p[x]) + (1.0 - b) * std::log(q[x]));
      s += t[x];
    }
  }
  for (double& v : t) v /= s;
  return t;
}

}  // namespace

double TypeTable::log2_total_p() const { return log2_sum_exp2(log2_p); }

TypeTable build_type_table(const std::vector<double>& p, const std::vector<double>& q, int n) {
  check_pair(p, q);
  const int k = static_cast<int>(p.size());
  if (k > 4) throw ValidationError("build_type_table: alphabet larger than 4");
  if (n < 1 || n > 400) throw ValidationError("build_type_table: n must lie in [1, 400]");
  if (binomial_count(n, k) > static_cast<double>(kMaxTypes)) {
    throw ValidationError("build_type_table: more than 250000 types for this alphabet and n");
  }
  TypeTable tab;
  tab.n = n;
  tab.alphabet_size = k;
  std::vector<int> cur;
  enumerate(k, n, cur, tab.types);
  const double lfn = std::lgamma(n + 1.0);
  for (const auto& c : tab.types) {
    double lc = lfn;
    double lp = 0.0, lq = 0.0;
    std::vector<double> t(k);
    for (int x = 0; x < k; ++x) {
      lc -= std::lgamma(c[x] + 1.0);
      t[x] = static_cast<double>(c[x]) / n;
      if (c[x] > 0) {
        lp += p[x] > 0.0 ? c[x] * std::log2(p[x]) : kNegInfD;
        lq += q[x] > 0.0 ? c[x] * std::log2(q[x]) : kNegInfD;
      }
    }
    double h = 0.0;
    for (double v : t) {
      if (v > 0.0) h -= v * std::log2(v);
    }
    lc /= kLn2;
    tab.log2_class_size.push_back(lc);
    tab.entropy.push_back(h);
    tab.div_p.push_back(rel_ent(t, p));
    tab.div_q.push_back(rel_ent(t, q));
    tab.log2_p.push_back(lc + lp);
    tab.log2_q.push_back(lc + lq);
  }
  return tab;
}

double classical_kl(const std::vector<double>& p, const std::vector<double>& q) { return rel_ent(p, q); }

double classical_dmax(const std::vector<double>& p, const std::vector<double>& q) {
  double m = kNegInfD;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    if (q[x] <= 0.0) return kInfD;
    m = std::max(m, std::log2(p[x] / q[x]));
  }
  return m;
}

double classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  if (std::abs(alpha - 1.0) < 1e-12) return classical_kl(p, q);
  double s = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    if (q[x] <= 0.0) {
      if (alpha > 1.0) return kInfD;
      continue;
    }
    s += std::exp(alpha * std::log(p[x]) + (1.0 - alpha) * std::log(q[x]));
  }
  if (s <= 0.0) return kInfD;
  return std::log2(s) / (alpha - 1.0);
}

ClassicalExponent classical_exponent(const std::vector<double>& p, const std::vector<double>& q, double r) {
  check_pair(p, q);
  ClassicalExponent out;
  double overlap = 0.0;
  for (size_t x = 0; x < p.size(); ++x) overlap += p[x] > 0.0 && q[x] > 0.0 ? p[x] : 0.0;
  if (overlap <= 0.0) {
    out.value = kInfD;
    out.infinite = true;
    out.argmax = 0.5;
    return out;
  }
  // Mass of p outside supp q enters through the alpha -> 1 limit -log2(overlap).
  auto f = [&](double a) { return (1.0 - a) / a * (classical_renyi(p, q, a) - r); };
  double endpoint = overlap < 1.0 ? -std::log2(overlap) : 0.0;
  const int grid = 512;
  int best = 0;
  double bv = kNegInfD;
  std::vector<double> vals(grid);
  for (int k = 0; k < grid; ++k) {
    double a = 0.5 + 0.5 * k / (grid - 1);
    vals[k] = k == grid - 1 ? endpoint : f(a);
    if (vals[k] > bv) {
      bv = vals[k];
      best = k;
    }
  }
  double lo = 0.5 + 0.5 * std::max(best - 1, 0) / (grid - 1);
  double hi = 0.5 + 0.5 * std::min(best + 1, grid - 1) / (grid - 1);
  auto g = [&](double a) { return a >= 1.0 ? endpoint : f(a); };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = g(x1);
    }
  }
  out.value = bv;
  out.argmax = 0.5 + 0.5 * best / (grid - 1);
  if (f1 > out.value) {
    out.value = f1;
    out.argmax = x1;
  }
  if (f2 > out.value) {
    out.value = f2;
    out.argmax = x2;
  }
  return out;
}

double classical_inf_form(const std::vector<double>& p, const std::vector<double>& q, double r) {
  check_pair(p, q);
  double overlap = 0.0;
  for (size_t x = 0; x < p.size(); ++x) overlap += p[x] > 0.0 && q[x] > 0.0 ? p[x] : 0.0;
  if (overlap <= 0.0) return kInfD;
  auto objective = [&](double b) {
    std::vector<double> t = tilted(p, q, b);
    return rel_ent(t, p) + std::max(0.0, rel_ent(t, q) - r);
  };
  // D(t_b||q) increases with b; the optimum sits at max(b*, 1/2) where
  // D(t_b*||q) = r, or at b = 1 when the constraint never binds.
  std::vector<double> t1 = tilted(p, q, 1.0);
  if (rel_ent(t1, q) <= r) return rel_ent(t1, p);
  double lo = 0.0, hi = 1.0;
  if (rel_ent(tilted(p, q, 0.0), q) >= r) {
    hi = 0.0;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      double mid = 0.5 * (lo + hi);
      if (rel_ent(tilted(p, q, mid), q) > r) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  return std::min({objective(std::max(hi, 0.5)), objective(std::max(lo, 0.5)), objective(1.0)});
}

FiniteNExponent finite_n_optimum(const std::vector<double>& p, const std::vector<double>& q, double r, int n) {
  TypeTable tab = build_type_table(p, q, n);
  const int k = tab.alphabet_size;
  FiniteNExponent out;
  out.n = n;
  std::vector<double> lp(tab.size()), lc(tab.size());
  double best_b = kNegInfD;
  double mesh = kInfD;
  double mesh_shift = kInfD;
  const double l = k * std::log2(n + 1.0) / n;
  for (size_t i = 0; i < tab.size(); ++i) {
    lp[i] = tab.log2_p[i] * kLn2;
    lc[i] = (n * r + tab.log2_q[i]) * kLn2;
    if (tab.log2_p[i] != kNegInfD) {
      best_b = std::max(best_b, 0.5 * (tab.log2_p[i] + std::min(n * r + tab.log2_q[i], 0.0)));
    }
    double base = tab.div_p[i];
    if (std::isfinite(base)) {
      mesh = std::min(mesh, base + std::max(0.0, tab.div_q[i] - r));
      mesh_shift = std::min(mesh_shift, base + std::max(0.0, tab.div_q[i] - r + l));
    }
  }
  bool binding = false;
  for (size_t i = 0; i < tab.size(); ++i) binding = binding || (tab.log2_p[i] != kNegInfD && lc[i] < lp[i]);
  // With no binding cap t = P_n and A_n = 1 exactly; summing the type masses would leave round-off.
  double ln_a = binding ? water_fill_log_fidelity(lp, lc) : 0.0;
  out.log2_a_n = std::min(ln_a / kLn2, 0.0);
  out.a_n = std::exp2(out.log2_a_n);
  out.epsilon = std::sqrt(std::max(0.0, -std::expm1(2.0 * out.log2_a_n * kLn2)));
  if (out.log2_a_n == kNegInfD) {
    out.minus_log_one_minus_eps_over_n = kInfD;
  } else {
    out.minus_log_one_minus_eps_over_n = -(2.0 * out.log2_a_n - std::log2(1.0 + out.epsilon)) / n;
  }
  out.log2_bracket_lower = best_b;
  out.log2_bracket_upper = best_b + k * std::log2(n + 1.0);
  out.mesh_min = mesh;
  out.rate_lower = 0.5 * mesh - l;
  out.rate_upper = 0.5 * mesh_shift + 0.5 * l;
  ClassicalExponent asym = classical_exponent(p, q, r);
  out.asymptote = asym.value;
  out.gap = asym.infinite ? kInfD : std::abs(out.minus_log_one_minus_eps_over_n - out.asymptote);
  out.gap_bound = asym.infinite ? kInfD : std::max(0.0, mesh - out.asymptote) + 2.0 * l + 1.0 / n;
  return out;
}

ConvergenceReport convergence_report(const std::vector<double>& p, const std::vector<double>& q, double r,
                                     const std::vector<int>& n_list) {
  ConvergenceReport rep;
  rep.asymptote = classical_exponent(p, q, r).value;
  const double slack = 1e-9;
  for (int n : n_list) {
    FiniteNExponent f = finite_n_optimum(p, q, r, n);
    auto fail = [&](const std::string& what) {
      rep.bounds_hold = false;
      rep.violations.push_back("n=" + std::to_string(n) + ": " + what);
    };
    if (f.log2_a_n != kNegInfD) {
      if (f.log2_bracket_lower > f.log2_a_n + slack || f.log2_a_n > f.log2_bracket_upper + slack) {
        fail("A_n outside the type bracket");
      }
      double rate = -f.log2_a_n / n;
      if (rate < f.rate_lower - slack || rate > f.rate_upper + slack) fail("rate outside the type-mesh bounds");
      if (std::isfinite(f.gap_bound) && f.gap > f.gap_bound + slack) fail("gap exceeds the polynomial bound");
    }
    rep.rows.push_back(f);
  }
  return rep;
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "n,A_n,epsilon,minus_log_one_minus_eps_over_n,asymptote,gap,gap_bound\n";
  for (const auto& f : rows) {
    os << f.n << ',' << f.a_n << ',' << f.epsilon << ',' << f.minus_log_one_minus_eps_over_n << ',' << f.asymptote
       << ',' << f.gap << ',' << f.gap_bound << '\n';
  }
  return os.str();
}

}  // namespace renyi
