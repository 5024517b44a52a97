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

#include "renyi/state_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace renyi {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line number for the message.
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ValidationError(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

// A square matrix; `expected` fixes the size when nonzero.
Eigen::MatrixXd parse_real_matrix(const json& j, const std::string& where, size_t expected = 0) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of rows");
  const size_t n = j.size();
  if (expected != 0 && n != expected) {
    throw ValidationError(where + ": expected " + std::to_string(expected) + " rows, found " + std::to_string(n));
  }
  Eigen::MatrixXd m(n, n);
  for (size_t r = 0; r < n; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) throw ValidationError(row_where + ": expected an array");
    if (j[r].size() != n) {
      throw ValidationError(row_where + ": expected " + std::to_string(n) + " entries, found " +
                            std::to_string(j[r].size()));
    }
    for (size_t c = 0; c < n; ++c) {
      if (!j[r][c].is_number()) {
        throw ValidationError(row_where + "[" + std::to_string(c) + "]: expected a number");
      }
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

DensityMatrix state_from_json(const json& j, const std::string& where) {
  const json& dims_j = require(j, "dims", where);
  if (!dims_j.is_array() || dims_j.empty()) throw ValidationError(where + ".dims: expected a non-empty array");
  std::vector<int> dims;
  for (size_t k = 0; k < dims_j.size(); ++k) {
    if (!dims_j[k].is_number_integer() || dims_j[k].get<int>() <= 0) {
      throw ValidationError(where + ".dims[" + std::to_string(k) + "]: expected a positive integer");
    }
    dims.push_back(dims_j[k].get<int>());
  }
  Eigen::MatrixXd re = parse_real_matrix(require(j, "re", where), where + ".re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = parse_real_matrix(j["im"], where + ".im", static_cast<size_t>(re.rows()));
  }
  bool normalized = true;
  if (j.contains("normalized")) {
    if (!j["normalized"].is_boolean()) throw ValidationError(where + ".normalized: expected a boolean");
    normalized = j["normalized"].get<bool>();
  }
  Mat m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  if (product(dims) != m.rows()) {
    throw ValidationError(where + ".dims: product " + std::to_string(product(dims)) +
                          " does not match matrix size " + std::to_string(m.rows()));
  }
  try {
    return DensityMatrix(dims, m, normalized ? Normalization::kNormalized : Normalization::kSubnormalized);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json state_to_json_value(const std::vector<int>& dims, const Mat& m, bool normalized) {
  json j;
  j["dims"] = dims;
  j["re"] = matrix_rows(m.real());
  j["im"] = matrix_rows(m.imag());
  j["normalized"] = normalized;
  return j;
}

CQState cq_from_json(const json& j, const std::string& where) {
  const json& probs = require(j, "probs", where);
  const json& conds = require(j, "cond_states", where);
  if (!probs.is_array() || probs.empty()) throw ValidationError(where + ".probs: expected a non-empty array");
  if (!conds.is_array()) throw ValidationError(where + ".cond_states: expected an array");
  CQState cq;
  for (size_t k = 0; k < probs.size(); ++k) {
    if (!probs[k].is_number()) throw ValidationError(where + ".probs[" + std::to_string(k) + "]: expected a number");
    cq.probs.push_back(probs[k].get<double>());
  }
  for (size_t k = 0; k < conds.size(); ++k) {
    cq.cond.push_back(state_from_json(conds[k], where + ".cond_states[" + std::to_string(k) + "]").matrix());
  }
  try {
    cq.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return cq;
}

}  // namespace

DensityMatrix parse_state(const std::string& json_text, const std::string& source) {
  return state_from_json(parse_json(json_text, source), source);
}

CQState parse_cq_state(const std::string& json_text, const std::string& source) {
  return cq_from_json(parse_json(json_text, source), source);
}

DensityMatrix load_state(const std::string& path) { return parse_state(read_file(path), path); }

CQState load_cq_state(const std::string& path) { return parse_cq_state(read_file(path), path); }

DensityMatrix load_any_state(const std::string& path) {
  std::string text = read_file(path);
  json j = parse_json(text, path);
  if (j.is_object() && j.contains("probs")) {
    CQState cq = cq_from_json(j, path);
    return DensityMatrix(cq.dims(), cq.joint());
  }
  return state_from_json(j, path);
}

std::string state_to_json(const DensityMatrix& rho) {
  return state_to_json_value(rho.dims(), rho.matrix(),
                             rho.normalization() == Normalization::kNormalized)
      .dump();
}

std::string cq_state_to_json(const CQState& cq) {
  json j;
  j["probs"] = cq.probs;
  j["cond_states"] = json::array();
  for (const auto& c : cq.cond) {
    j["cond_states"].push_back(state_to_json_value({static_cast<int>(c.rows())}, c, true));
  }
  return j.dump();
}

}  // namespace renyi
