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

#ifndef RENYI_TOOLS_COMMANDS_HPP
#define RENYI_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <functional>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"

namespace renyi_cli {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 7;
  double tol_scale = 1.0;
  int threads = 1;
  bool json = false;
};

// Each registrar adds one subcommand whose callback stores the action to run.
using Action = std::function<int()>;

void add_divergence(CLI::App& app, const GlobalOptions& g, Action& out);
void add_entropy(CLI::App& app, const GlobalOptions& g, Action& out);
void add_exponent(CLI::App& app, const GlobalOptions& g, Action& out);
void add_smooth(CLI::App& app, const GlobalOptions& g, Action& out);
void add_types_sim(CLI::App& app, const GlobalOptions& g, Action& out);
void add_pa_sim(CLI::App& app, const GlobalOptions& g, Action& out);
void add_dec_sim(CLI::App& app, const GlobalOptions& g, Action& out);
void add_verify(CLI::App& app, const GlobalOptions& g, Action& out);

// Prints j as JSON or as aligned "key: value" lines.
void emit(const Json& j, bool as_json);

}  // namespace renyi_cli

#endif  // RENYI_TOOLS_COMMANDS_HPP
