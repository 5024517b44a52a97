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

#ifndef RENYI_TYPES_HPP
#define RENYI_TYPES_HPP

#include <string>
#include <vector>

namespace renyi {

// Exact enumeration of the types of length-n sequences over a finite alphabet,
// with per-type probabilities of the i.i.d. sources p and q. All logs base 2.
struct TypeTable {
  int n = 0;
  int alphabet_size = 0;
  std::vector<std::vector<int>> types;  // lexicographic compositions of n
  std::vector<double> log2_class_size;
  std::vector<double> entropy;          // H(t)
  std::vector<double> div_p;            // D(t||p)
  std::vector<double> div_q;            // D(t||q)
  std::vector<double> log2_p;           // log2 P_n(t)
  std::vector<double> log2_q;           // log2 Q_n(t)

  size_t size() const { return types.size(); }
  double log2_total_p() const;
};

// Throws ValidationError for alphabets above 4 letters, n above 400, or more
// than kMaxTypes types.
TypeTable build_type_table(const std::vector<double>& p, const std::vector<double>& q, int n);
inline constexpr size_t kMaxTypes = 250000;

double classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha);
double classical_kl(const std::vector<double>& p, const std::vector<double>& q);
double classical_dmax(const std::vector<double>& p, const std::vector<double>& q);

struct ClassicalExponent {
  double value = 0.0;
  double argmax = 1.0;
  bool infinite = false;
};

// sup over alpha in [1/2, 1] of (1 - alpha)/alpha (D_alpha(p||q) - r).
ClassicalExponent classical_exponent(const std::vector<double>& p, const std::vector<double>& q, double r);

// min over distributions t of D(t||p) + |D(t||q) - r|^+, solved through the
// one-parameter stationarity family t ~ p^b q^(1-b).
double classical_inf_form(const std::vector<double>& p, const std::vector<double>& q, double r);

struct FiniteNExponent {
  int n = 0;
  double a_n = 0.0;
  double log2_a_n = 0.0;
  double epsilon = 0.0;
  double minus_log_one_minus_eps_over_n = 0.0;
  double asymptote = 0.0;
  double gap = 0.0;
  // log2 of the certified bracket [max_t B_n(t), (n+1)^|X| max_t B_n(t)].
  double log2_bracket_lower = 0.0;
  double log2_bracket_upper = 0.0;
  // Type-mesh bounds on -(1/n) log2 A_n.
  double rate_lower = 0.0;
  double rate_upper = 0.0;
  double mesh_min = 0.0;  // min over types of D(t||p) + |D(t||q) - r|^+
  double gap_bound = 0.0;
};

FiniteNExponent finite_n_optimum(const std::vector<double>& p, const std::vector<double>& q, double r, int n);

struct ConvergenceReport {
  std::vector<FiniteNExponent> rows;
  double asymptote = 0.0;
  bool bounds_hold = true;  // bracket, rate bounds and gap bound at every n
  std::vector<std::string> violations;

  std::string to_csv() const;
};

ConvergenceReport convergence_report(const std::vector<double>& p, const std::vector<double>& q, double r,
                                     const std::vector<int>& n_list);

}  // namespace renyi

#endif  // RENYI_TYPES_HPP
