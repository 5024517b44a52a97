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

#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace renyi_cli;
  CLI::App app{"Strong converse exponents, Renyi divergences and smoothing for small quantum systems."};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every randomized step")->capture_default_str();
  app.add_option("--tol-scale", g.tol_scale, "Multiplies default tolerances")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (RENYI_THREADS overrides)")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Machine-readable JSON output");

  Action action;
  add_divergence(app, g, action);
  add_entropy(app, g, action);
  add_exponent(app, g, action);
  add_smooth(app, g, action);
  add_types_sim(app, g, action);
  add_pa_sim(app, g, action);
  add_dec_sim(app, g, action);
  add_verify(app, g, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (const char* env = std::getenv("RENYI_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) g.threads = t;
  }
  try {
    return action ? action() : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
