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

#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyi/divergence.hpp"
#include "renyi/entropy.hpp"
#include "renyi/exponent.hpp"
#include "renyi/protocols.hpp"
#include "renyi/smoothing.hpp"
#include "renyi/state_io.hpp"
#include "renyi/types.hpp"
#include "renyi/verify.hpp"

namespace renyi_cli {

using namespace renyi;

namespace {

// JSON has no infinities, so non-finite values travel as strings.
Json num(double v) {
  if (v == 0.0) return 0.0;
  if (std::isfinite(v)) return v;
  return format_number(v);
}

Json num_list(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

Json matrix_json(const Mat& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    Json c = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return Json{{"re", re}, {"im", im}};
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw ValidationError(flag + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(flag + ": empty list");
  return out;
}

void require_bipartite(const DensityMatrix& s, const std::string& what) {
  if (s.dims().size() != 2) throw ValidationError(what + ": dims must list exactly two subsystems");
}

OptimizerConfig optimizer(const GlobalOptions& g) {
  OptimizerConfig cfg;
  cfg.seed = g.seed;
  cfg.tol *= g.tol_scale;
  return cfg;
}

std::string text_value(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + text_value(v[i]);
    return s + "]";
  }
  return v.dump();
}

Json dual_json(const VariationalDual& d) {
  return Json{{"value", num(d.value)},
              {"branch", d.branch},
              {"branch_unpenalized", num(d.branch_unpenalized)},
              {"branch_penalized", num(d.branch_penalized)},
              {"hinge_argument", num(d.hinge_argument)},
              {"infinite", d.infinite}};
}

}  // namespace

void emit(const Json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) std::cout << key << "." << k2 << ": " << text_value(v2) << "\n";
    } else {
      std::cout << key << ": " << text_value(value) << "\n";
    }
  }
}

void add_divergence(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string kind = "sandwiched";
    double alpha = 1.0;
    std::string rho, sigma;
    double eps = 0.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("divergence", "Renyi divergence D(rho||sigma)");
  sub->add_option("--kind", o->kind, "umegaki, sandwiched, petz, log-euclidean or max")->capture_default_str();
  sub->add_option("--alpha", o->alpha, "Order alpha")->capture_default_str();
  sub->add_option("--rho", o->rho, "JSON state file")->required();
  sub->add_option("--sigma", o->sigma, "JSON state file")->required();
  sub->add_option("--eps", o->eps, "Smoothing for --kind max")->capture_default_str();
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      DensityMatrix rho = load_state(o->rho);
      DensityMatrix sigma = load_state(o->sigma);
      if (rho.dim() != sigma.dim()) throw ValidationError("rho and sigma have different dimensions");
      DivergenceValue v = divergence(rho.matrix(), sigma.matrix(), {parse_divergence_kind(o->kind), o->alpha, o->eps});
      emit(Json{{"value", num(v.value)}, {"finite", v.finite}, {"support_case", to_string(v.support_case)}}, g.json);
      return 0;
    };
  });
}

void add_entropy(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string kind = "sandwiched";
    double alpha = 1.0;
    std::string state;
    std::string what = "cond";
    int block = 2;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("entropy", "Conditional entropy or mutual information of a bipartite state");
  sub->add_option("--kind", o->kind, "Divergence kind")->capture_default_str();
  sub->add_option("--alpha", o->alpha, "Order alpha")->capture_default_str();
  sub->add_option("--state", o->state, "JSON state with dims [dA, dB]")->required();
  sub->add_option("--what", o->what, "cond, mi, mi-bar or mi-reg")
      ->capture_default_str()
      ->check(CLI::IsMember({"cond", "mi", "mi-bar", "mi-reg"}));
  sub->add_option("--block", o->block, "Largest block for mi-reg")->capture_default_str()->check(CLI::Range(1, 2));
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      DensityMatrix s = load_state(o->state);
      require_bipartite(s, o->state);
      const int da = s.dims()[0];
      const int db = s.dims()[1];
      const DivergenceKind kind = parse_divergence_kind(o->kind);
      const OptimizerConfig cfg = optimizer(g);
      EntropicValue v;
      if (o->what == "cond") {
        v = conditional_entropy(s.matrix(), da, db, kind, o->alpha, cfg);
      } else if (o->what == "mi") {
        v = mutual_information(s.matrix(), da, db, kind, o->alpha, MutualInfoVariant::kDoubleMin, cfg);
      } else if (o->what == "mi-bar") {
        v = mutual_information(s.matrix(), da, db, kind, o->alpha, MutualInfoVariant::kFixedMarginal, cfg);
      } else {
        v = regularized_mutual_information_estimate(s.matrix(), da, db, kind, o->alpha, o->block, cfg);
      }
      Json j{{"what", o->what},
             {"value", num(v.value)},
             {"converged", v.converged},
             {"fw_gap", num(v.fw_gap)},
             {"multistart_values", num_list(v.multistart_values)},
             {"multistart_disagreement", v.multistart_disagreement}};
      if (!v.block_values.empty()) j["block_values"] = num_list(v.block_values);
      emit(j, g.json);
      return 0;
    };
  });
}

void add_exponent(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string task;
    double rate = 0.0;
    std::string state, sigma, kind = "sandwiched", emit_path;
    int block = 1;
    int grid = 512;
    bool dual = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("exponent", "Strong converse exponent curve over alpha in [1/2, 1]");
  sub->add_option("--task", o->task, "dmax, pa or dec")->required()->check(CLI::IsMember({"dmax", "pa", "dec"}));
  sub->add_option("--rate", o->rate, "Rate r")->required();
  sub->add_option("--state", o->state, "rho (dmax), CQ state (pa) or rho_RA with dims [dR, dA] (dec)")->required();
  sub->add_option("--sigma", o->sigma, "sigma for --task dmax");
  sub->add_option("--block", o->block, "Blocking for dec")->capture_default_str()->check(CLI::Range(1, 2));
  sub->add_option("--kind", o->kind, "sandwiched or log-euclidean")->capture_default_str();
  sub->add_option("--grid", o->grid, "Alpha grid points")->capture_default_str()->check(CLI::Range(3, 100000));
  sub->add_option("--emit", o->emit_path, "Write the curve as CSV");
  sub->add_flag("--dual", o->dual, "Also solve the variational inf form (block 1)");
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      const DivergenceKind kind = parse_divergence_kind(o->kind);
      if (kind != DivergenceKind::kSandwiched && kind != DivergenceKind::kLogEuclidean) {
        throw ValidationError("--kind must be sandwiched or log-euclidean");
      }
      CurveConfig cc;
      cc.grid = o->grid;
      cc.threads = g.threads;
      cc.opt = optimizer(g);
      ExponentCurve c;
      VariationalDual d;
      if (o->task == "dmax") {
        if (o->sigma.empty()) throw ValidationError("--task dmax requires --sigma");
        DensityMatrix rho = load_state(o->state);
        DensityMatrix sigma = load_state(o->sigma);
        if (rho.dim() != sigma.dim()) throw ValidationError("rho and sigma have different dimensions");
        c = exponent_dmax(rho.matrix(), sigma.matrix(), o->rate, cc, kind);
        if (o->dual) d = dual_dmax(rho.matrix(), sigma.matrix(), o->rate, cc.opt);
      } else if (o->task == "pa") {
        CQState cq = load_cq_state(o->state);
        c = exponent_pa(cq, o->rate, cc, kind);
        if (o->dual) d = dual_pa(cq, o->rate, cc.opt);
      } else {
        DensityMatrix s = load_state(o->state);
        require_bipartite(s, o->state);
        c = exponent_dec(s.matrix(), s.dims()[0], s.dims()[1], o->rate, o->block, cc, kind);
        if (o->dual) d = dual_dec(s.matrix(), s.dims()[0], s.dims()[1], o->rate, cc.opt);
      }
      if (!o->emit_path.empty()) emit_curve(c, o->emit_path);
      Json j{{"task", o->task},
             {"rate", num(o->rate)},
             {"supremum", num(c.supremum)},
             {"argmax", num(c.argmax)},
             {"infinite", c.infinite},
             {"local_maxima", num_list(c.local_maxima)}};
      if (!c.label.empty()) j["label"] = c.label;
      if (o->dual) j["dual"] = dual_json(d);
      emit(j, g.json);
      return 0;
    };
  });
}

void add_smooth(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string rho, sigma;
    double lambda = 0.0;
    bool classical = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("smooth", "Smoothing quantity epsilon(rho||sigma, lambda)");
  sub->add_option("--rho", o->rho, "JSON state file (normalized)")->required();
  sub->add_option("--sigma", o->sigma, "JSON state file")->required();
  sub->add_option("--lambda", o->lambda, "Cap exponent lambda")->required();
  sub->add_flag("--classical", o->classical, "Water-filling on diagonal inputs");
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      DensityMatrix rho = load_state(o->rho);
      DensityMatrix sigma = load_state(o->sigma);
      if (rho.dim() != sigma.dim()) throw ValidationError("rho and sigma have different dimensions");
      if (o->classical) {
        if (!is_diagonal(rho.matrix()) || !is_diagonal(sigma.matrix())) {
          throw ValidationError("--classical requires diagonal rho and sigma");
        }
        std::vector<double> p, q;
        for (int i = 0; i < rho.dim(); ++i) {
          p.push_back(rho.matrix()(i, i).real());
          q.push_back(sigma.matrix()(i, i).real());
        }
        ClassicalSmoothing cs = smooth_classical(p, q, o->lambda);
        emit(Json{{"epsilon", num(cs.epsilon)},
                  {"fidelity", num(cs.fidelity)},
                  {"nu", num(cs.nu)},
                  {"t", num_list(cs.t)},
                  {"method", "classical"}},
             g.json);
        return 0;
      }
      SmoothingConfig cfg;
      cfg.seed = g.seed;
      cfg.bracket_tol *= g.tol_scale;
      SmoothingResult r = smooth_quantum(rho, sigma.matrix(), o->lambda, cfg);
      emit(Json{{"epsilon", num(r.epsilon)},
                {"epsilon_lower", num(r.epsilon_lower)},
                {"fidelity_achieved", num(r.fidelity_achieved)},
                {"fidelity_upper", num(r.fidelity_upper)},
                {"cap_residual", num(r.cap_residual)},
                {"trace_slack", num(r.trace_slack)},
                {"certified", r.certified},
                {"method", r.method},
                {"rho_tilde", matrix_json(r.rho_tilde)}},
           g.json);
      return 0;
    };
  });
}

void add_types_sim(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string p, q, n = "50,100,200", emit_path;
    double rate = 0.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("types-sim", "Exact finite-n optimum by the method of types");
  sub->add_option("--p", o->p, "Comma-separated distribution p")->required();
  sub->add_option("--q", o->q, "Comma-separated distribution q")->required();
  sub->add_option("--rate", o->rate, "Rate r")->required();
  sub->add_option("--n", o->n, "Comma-separated block lengths")->capture_default_str();
  sub->add_option("--emit", o->emit_path, "Write the convergence table as CSV");
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      auto p = parse_list<double>(o->p, "--p");
      auto q = parse_list<double>(o->q, "--q");
      auto ns = parse_list<int>(o->n, "--n");
      ConvergenceReport rep = convergence_report(p, q, o->rate, ns);
      if (!o->emit_path.empty()) emit_convergence(rep, o->emit_path);
      if (!g.json) {
        std::cout << "asymptote: " << format_number(rep.asymptote) << "\n";
        std::cout << "bounds_hold: " << (rep.bounds_hold ? "true" : "false") << "\n";
        std::cout << rep.to_csv();
        for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
        return 0;
      }
      Json rows = Json::array();
      for (const auto& r : rep.rows) {
        rows.push_back(Json{{"n", r.n},
                            {"A_n", num(r.a_n)},
                            {"epsilon", num(r.epsilon)},
                            {"minus_log_one_minus_eps_over_n", num(r.minus_log_one_minus_eps_over_n)},
                            {"gap", num(r.gap)},
                            {"gap_bound", num(r.gap_bound)},
                            {"rate_lower", num(r.rate_lower)},
                            {"rate_upper", num(r.rate_upper)}});
      }
      emit(Json{{"asymptote", num(rep.asymptote)},
                {"bounds_hold", rep.bounds_hold},
                {"rows", rows},
                {"violations", rep.violations}},
           true);
      return 0;
    };
  });
}

void add_pa_sim(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string state, n = "2,4,6", strategy = "random";
    double rate = 0.0;
    int samples = 8;
    int k = 32;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("pa-sim", "Privacy amplification decay rates under hashing");
  sub->add_option("--state", o->state, "CQ state JSON")->required();
  sub->add_option("--rate", o->rate, "Rate r, above H(X|E)")->required();
  sub->add_option("--n", o->n, "Comma-separated block lengths")->capture_default_str();
  sub->add_option("--strategy", o->strategy, "random or best-of-k")->capture_default_str();
  sub->add_option("--samples", o->samples, "Hashes sampled per n")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--k", o->k, "Candidates for best-of-k")->capture_default_str()->check(CLI::PositiveNumber);
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      CQState cq = load_cq_state(o->state);
      PaDecayConfig cfg;
      cfg.strategy = parse_hash_strategy(o->strategy);
      cfg.samples = o->samples;
      cfg.k = o->k;
      cfg.seed = g.seed;
      cfg.slack *= g.tol_scale;
      cfg.opt = optimizer(g);
      auto rows = pa_decay_experiment(cq, o->rate, parse_list<int>(o->n, "--n"), cfg);
      Json jr = Json::array();
      bool all = true;
      for (const auto& r : rows) {
        all = all && r.floor_holds;
        jr.push_back(Json{{"n", r.n},
                          {"output_size", r.output_size},
                          {"best_rate", num(r.best_rate)},
                          {"floor", num(r.floor)},
                          {"floor_holds", r.floor_holds},
                          {"rates", num_list(r.rates)}});
      }
      if (!g.json) {
        std::cout << "n,output_size,best_rate,floor,floor_holds\n";
        for (const auto& r : rows) {
          std::cout << r.n << "," << r.output_size << "," << format_number(r.best_rate) << ","
                    << format_number(r.floor) << "," << (r.floor_holds ? "true" : "false") << "\n";
        }
        std::cout << "floors_hold: " << (all ? "true" : "false") << "\n";
        return 0;
      }
      emit(Json{{"rate", num(o->rate)}, {"rows", jr}, {"floors_hold", all}}, true);
      return 0;
    };
  });
}

void add_dec_sim(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string state, scheme = "random";
    int discard_qubits = 1;
    int samples = 20;
    int catalyst_qubits = 0;
    bool haar = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("dec-sim", "Decoupling performance of sampled schemes");
  sub->add_option("--state", o->state, "rho_RA JSON with dims [dR, dA]")->required();
  sub->add_option("--scheme", o->scheme, "random or identity")
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "identity"}));
  sub->add_option("--discard-qubits", o->discard_qubits, "log2 |Atilde|")->capture_default_str()->check(
      CLI::Range(0, 6));
  sub->add_option("--samples", o->samples, "Schemes sampled")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--catalyst-qubits", o->catalyst_qubits, "log2 |A'|")->capture_default_str()->check(
      CLI::Range(0, 4));
  sub->add_flag("--haar", o->haar, "Report the one-shot Haar average against its analytic bound");
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      DensityMatrix s = load_state(o->state);
      require_bipartite(s, o->state);
      const int dr = s.dims()[0];
      const int da = s.dims()[1];
      const int dt = 1 << o->discard_qubits;
      const int dc = 1 << o->catalyst_qubits;
      const double r = o->discard_qubits;
      Json j{{"rate", num(r)}};
      if (o->haar) {
        HaarDecouplingReport h = haar_decoupling_check(s.matrix(), dr, da, dt, std::max(o->samples, 100), g.seed,
                                                       g.threads);
        j["haar"] = Json{{"samples", h.samples},
                         {"mean", num(h.mean)},
                         {"standard_error", num(h.standard_error)},
                         {"bound", num(h.bound)},
                         {"holds", h.holds}};
        emit(j, g.json);
        return 0;
      }
      CurveConfig cc;
      cc.grid = 32;
      cc.threads = g.threads;
      cc.opt = optimizer(g);
      const double floor = exponent_dec(s.matrix(), dr, da, r, 1, cc).supremum;
      Rng rng(g.seed);
      const int count = o->scheme == "identity" ? 1 : o->samples;
      std::vector<double> rates;
      double best = kInf;
      bool holds = true;
      for (int i = 0; i < count; ++i) {
        DecouplingScheme scheme;
        if (o->scheme == "identity") {
          if ((da * dc) % dt != 0) throw ValidationError("|Atilde| must divide |A||A'|");
          scheme.catalyst = Mat::Identity(dc, dc) / static_cast<double>(dc);
          scheme.unitary = Mat::Identity(da * dc, da * dc);
          scheme.d_tilde = dt;
          scheme.d_bar = da * dc / dt;
        } else {
          scheme = DecouplingScheme::random(da, dt, rng, dc);
        }
        double rate = -std::log2(dec_performance(s.matrix(), dr, da, scheme, cc.opt).value);
        rates.push_back(rate);
        best = std::min(best, rate);
        holds = holds && rate >= floor - 1e-6 * g.tol_scale;
      }
      j["floor"] = num(floor);
      j["best_rate"] = num(best);
      j["floor_holds"] = holds;
      j["rates"] = num_list(rates);
      emit(j, g.json);
      return 0;
    };
  });
}

void add_verify(CLI::App& app, const GlobalOptions& g, Action& out) {
  struct Opts {
    std::string suite = "all";
    std::string check;
    int trials = 10;
    std::uint64_t replay = 0;
    bool timing = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("verify", "Randomized property and invariant suites");
  sub->add_option("--suite", o->suite, "Suite name or all")->capture_default_str();
  sub->add_option("--check", o->check, "Run a single named check");
  sub->add_option("--trials", o->trials, "Random instances per check")->capture_default_str();
  sub->add_option("--replay", o->replay, "Replay one instance seed of --check");
  sub->add_flag("--timing", o->timing, "Include wall times in the report");
  sub->callback([o, &g, &out] {
    out = [o, &g] {
      if (o->trials < 1) {
        std::cerr << "error: --trials must be at least 1\n";
        return 2;
      }
      VerifyConfig cfg{g.tol_scale, g.threads};
      SuiteReport rep;
      if (!o->check.empty()) {
        CheckReport c = o->replay ? replay_instance(o->check, o->replay, cfg)
                                  : run_check(o->check, o->trials, g.seed, cfg);
        rep.name = c.name;
        rep.instances = c.instances;
        rep.failures = c.failures;
        rep.wall_seconds = c.wall_seconds;
        rep.checks.push_back(c);
      } else {
        rep = run_suite(o->suite, o->trials, g.seed, cfg);
      }
      std::string text = g.json ? rep.to_json(o->timing) : rep.to_text(o->timing);
      if (!text.empty() && text.back() != '\n') text += '\n';
      std::cout << text;
      std::cerr << "wall_seconds: " << format_number(rep.wall_seconds) << "\n";
      return rep.ok() ? 0 : 1;
    };
  });
}

}  // namespace renyi_cli
