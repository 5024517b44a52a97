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

#ifndef RENYI_STATE_IO_HPP
#define RENYI_STATE_IO_HPP

#include <string>

#include "renyi/state.hpp"

// JSON layouts:
//   state:    {"dims":[2,2], "re":[[...],...], "im":[[...],...], "normalized":true}
//   cq state: {"probs":[...], "cond_states":[<state>, ...]}
// "im" may be omitted for real matrices; "normalized" defaults to true.

namespace renyi {

DensityMatrix parse_state(const std::string& json_text, const std::string& source = "<input>");
CQState parse_cq_state(const std::string& json_text, const std::string& source = "<input>");
DensityMatrix load_state(const std::string& path);
CQState load_cq_state(const std::string& path);
// Accepts either layout; CQ files are converted to their joint matrix.
DensityMatrix load_any_state(const std::string& path);

std::string state_to_json(const DensityMatrix& rho);
std::string cq_state_to_json(const CQState& cq);

}  // namespace renyi

#endif  // RENYI_STATE_IO_HPP
