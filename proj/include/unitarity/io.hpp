// Copyright 2026 The Unitarity Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "unitarity/channel.hpp"
#include "unitarity/errors.hpp"

namespace unitarity {

// Channel file schema:
//   {"dim": d, "kraus": [ operator, ... ]}
// where an operator is a row-major list of rows and every entry is a
// two-element [re, im] array of doubles.

inline nlohmann::json channel_to_json(const KrausChannel& ch) {
  nlohmann::json ops = nlohmann::json::array();
  for (const cmat& e : ch.kraus()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < e.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Index j = 0; j < e.cols(); ++j) {
        row.push_back({e(i, j).real(), e(i, j).imag()});
      }
      rows.push_back(std::move(row));
    }
    ops.push_back(std::move(rows));
  }
  return nlohmann::json{{"dim", ch.dim()}, {"kraus", std::move(ops)}};
}

inline KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("kraus")) {
    throw ParseError("channel spec must be an object with 'dim' and 'kraus'");
  }
  if (!j["dim"].is_number_integer()) {
    throw ParseError("channel spec: 'dim' must be an integer");
  }
  const Index d = j["dim"].get<Index>();
  if (!j["kraus"].is_array() || j["kraus"].empty()) {
    throw ParseError("channel spec: 'kraus' must be a nonempty array");
  }
  std::vector<cmat> kraus;
  for (const auto& op : j["kraus"]) {
    if (!op.is_array() || static_cast<Index>(op.size()) != d) {
      throw ParseError("channel spec: operator must have 'dim' rows");
    }
    cmat e(d, d);
    for (Index i = 0; i < d; ++i) {
      const auto& row = op[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != d) {
        throw ParseError("channel spec: row must have 'dim' entries");
      }
      for (Index jj = 0; jj < d; ++jj) {
        const auto& entry = row[static_cast<std::size_t>(jj)];
        if (!entry.is_array() || entry.size() != 2 ||
            !entry[0].is_number() || !entry[1].is_number()) {
          throw ParseError("channel spec: entry must be a [re, im] pair");
        }
        e(i, jj) = complex_t(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    kraus.push_back(std::move(e));
  }
  return KrausChannel(std::move(kraus), d);
}

/// Loads and validates a channel from a JSON file.
inline KrausChannel load_channel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open channel spec: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("channel spec " + path + ": " + e.what());
  }
  return channel_from_json(j);
}

inline void save_channel_spec(const KrausChannel& ch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write channel spec: " + path);
  out << channel_to_json(ch).dump(2) << "\n";
}

}  // namespace unitarity
