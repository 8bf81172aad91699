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

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unitarity/harness.hpp"

using namespace unitarity;

namespace {

// Strips volatile fields (timestamp, wall clocks) for reproducibility
// comparisons.
void strip_volatile(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("timestamp");
    j.erase("wall_seconds");
    for (auto& [key, value] : j.items()) strip_volatile(value);
  } else if (j.is_array()) {
    for (auto& value : j) strip_volatile(value);
  }
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/unitarity_test_") + name;
}

}  // namespace

TEST_CASE("channel spec parsing") {
  const ChannelSpec spec =
      parse_channel_spec("builtin:depolarizing,q=1,dim=4");
  REQUIRE(spec.builtin);
  REQUIRE(spec.name == "depolarizing");
  REQUIRE(spec.dim == 4);
  REQUIRE(spec.params.at("q") == 1.0);
  REQUIRE(exact_unitarity(spec.instantiate()) ==
          Catch::Approx(1.0 / 16.0).margin(kAlgTol));

  REQUIRE_THROWS_AS(parse_channel_spec("builtin:depolarizing,q=1"),
                    ParseError);  // missing dim
  REQUIRE_THROWS_AS(parse_channel_spec("builtin:depolarizing,oops,dim=2"),
                    ParseError);
  REQUIRE_THROWS_AS(parse_channel_spec("builtin:depolarizing,q=abc,dim=2"),
                    ParseError);
  REQUIRE_THROWS_AS(
      parse_channel_spec("builtin:no_such_thing,dim=2").instantiate(),
      UnknownBuiltin);
}

TEST_CASE("builtin channels are valid and hit oracle targets") {
  // identity, depolarizing, dephasing, amplitude_damping, shift_mixture,
  // random_unitary, scaled_identity, zero
  const std::map<std::string, std::map<std::string, double>> builtins = {
      {"identity", {}},
      {"depolarizing", {{"q", 0.7}}},
      {"dephasing", {{"q", 0.4}}},
      {"amplitude_damping", {{"gamma", 0.3}}},
      {"shift_mixture", {{"a", 2.0 / 3.0}, {"b", 1.0 / 3.0}}},
      {"random_unitary", {{"seed", 11}}},
      {"scaled_identity", {{"c", 0.5}}},
      {"zero", {}},
  };
  for (const auto& [name, params] : builtins) {
    const KrausChannel ch = builtin_channel(name, params, 4);
    REQUIRE(ch.dim() == 4);
    const bool trace_preserving = name != "scaled_identity" && name != "zero";
    if (trace_preserving) {
      REQUIRE(exact_t_index(ch) == Catch::Approx(1.0).margin(kAlgTol));
    }
  }
  REQUIRE(exact_unitarity(builtin_channel("random_unitary", {{"seed", 8}}, 8)) ==
          Catch::Approx(1.0).margin(kAlgTol));
  REQUIRE(exact_t_index(builtin_channel("scaled_identity", {{"c", 0.5}}, 2)) ==
          Catch::Approx(0.5).margin(kAlgTol));

  REQUIRE_THROWS_AS(builtin_channel("amplitude_damping", {{"gamma", 1.5}}, 2),
                    BadParams);
  REQUIRE_THROWS_AS(builtin_channel("depolarizing", {{"weird", 1.0}}, 2),
                    BadParams);
  REQUIRE_THROWS_AS(builtin_channel("nope", {}, 2), UnknownBuiltin);
}

TEST_CASE("channel files round trip and reject malformed input") {
  const std::string path = temp_path("channel.json");
  const KrausChannel ch = shift_mixture_channel(2.0 / 3.0, 1.0 / 3.0, 4);
  save_channel_spec(ch, path);
  const KrausChannel back = load_channel_spec(path);
  REQUIRE(back.dim() == 4);
  REQUIRE(back.kraus().size() == ch.kraus().size());
  REQUIRE((back.matrix_rep() - ch.matrix_rep()).cwiseAbs().maxCoeff() < 1e-15);

  {
    std::ofstream bad(temp_path("bad.json"));
    bad << "{ this is not json";
  }
  REQUIRE_THROWS_AS(load_channel_spec(temp_path("bad.json")), ParseError);
  REQUIRE_THROWS_AS(load_channel_spec("/nonexistent/nowhere.json"), IoError);

  {
    std::ofstream wrong(temp_path("wrong.json"));
    wrong << R"({"dim": 2, "kraus": [[[[2.0, 0], [0, 0]], [[0, 0], [0, 0]]]]})";
  }
  // Structurally fine but 2I fails the trace-nonincreasing check... the
  // operator here is [[2,0],[0,0]], whose overlap eigenvalue is 4.
  REQUIRE_THROWS_AS(load_channel_spec(temp_path("wrong.json")),
                    ValidationError);
}

TEST_CASE("run_estimate summarizes against the oracle") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kEstimate;
  cfg.channel = parse_channel_spec("builtin:zero,dim=2");
  cfg.access = Access::kIncoherent;
  cfg.epsilon = 0.2;
  cfg.delta = 0.4;
  cfg.seed = 3;
  cfg.repeats = 4;
  const ResultRecord rec = run_estimate(cfg);
  REQUIRE(rec.kind == "estimate");
  REQUIRE(rec.repeats.size() == 4);
  // zero channel: every estimate is exactly zero and always succeeds.
  REQUIRE(rec.summary.at("mean").get<double>() == 0.0);
  REQUIRE(rec.summary.at("success_fraction").get<double>() == 1.0);
  REQUIRE(rec.summary.at("oracle").get<double>() == 0.0);
  // Per-repeat rows: components (p, o) plus the assembled record.
  REQUIRE(rec.repeats[0].size() == 3);
  REQUIRE(rec.repeats[0].back().index == IndexKind::kU);
}

TEST_CASE("result records round trip through JSON") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kEstimate;
  cfg.channel = parse_channel_spec("builtin:shift_mixture,a=0.66,b=0.33,dim=2");
  cfg.epsilon = 0.3;
  cfg.seed = 17;
  cfg.repeats = 2;
  const ResultRecord rec = run_estimate(cfg);

  const std::string path = temp_path("result.json");
  emit_result(rec, path, OutputFormat::kJson);
  const ResultRecord back = load_result(path);
  const nlohmann::json a = rec;
  const nlohmann::json b = back;
  REQUIRE(a == b);
}

TEST_CASE("csv flattening has one row per repeat and index") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kEstimate;
  cfg.channel = parse_channel_spec("builtin:identity,dim=2");
  cfg.epsilon = 0.3;
  cfg.variant = UnitarityVariant::kUAlt;
  cfg.repeats = 3;
  const ResultRecord rec = run_estimate(cfg);
  const std::string path = temp_path("result.csv");
  emit_result(rec, path, OutputFormat::kCsv);

  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "repeat,index_kind,value,queries,seed,wall_seconds");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  // u' runs expose p, o, s, t plus the assembled u' per repeat.
  REQUIRE(rows == 3 * 5);
}

TEST_CASE("emit_result reports unwritable paths") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kOracle;
  cfg.channel = parse_channel_spec("builtin:identity,dim=2");
  const ResultRecord rec = run_oracle(cfg);
  try {
    emit_result(rec, "/nonexistent_dir/out.json", OutputFormat::kJson);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    REQUIRE(std::string(e.what()).find("/nonexistent_dir/out.json") !=
            std::string::npos);
  }
}

TEST_CASE("output directory override") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kOracle;
  cfg.channel = parse_channel_spec("builtin:identity,dim=2");
  const ResultRecord rec = run_oracle(cfg);
  setenv("UNITARITY_OUT_DIR", "/tmp", 1);
  emit_result(rec, "unitarity_test_envdir.json", OutputFormat::kJson);
  unsetenv("UNITARITY_OUT_DIR");
  std::ifstream in("/tmp/unitarity_test_envdir.json");
  REQUIRE(in.good());
}

TEST_CASE("run_oracle and run_bounds report exact values") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kOracle;
  cfg.channel = parse_channel_spec("builtin:depolarizing,q=1,dim=4");
  const ResultRecord rec = run_oracle(cfg);
  REQUIRE(rec.summary.at("u").get<double>() ==
          Catch::Approx(1.0 / 16.0).margin(kAlgTol));
  REQUIRE(rec.summary.at("uprime").get<double>() ==
          Catch::Approx(0.0).margin(kAlgTol));

  cfg.kind = ExperimentConfig::Kind::kBounds;
  cfg.channel = parse_channel_spec("builtin:random_unitary,seed=2,dim=4");
  const ResultRecord bounds = run_bounds(cfg);
  REQUIRE(bounds.summary.at("lower").get<double>() ==
          Catch::Approx(1.0).margin(kAlgTol));
  REQUIRE(bounds.summary.at("upper").get<double>() ==
          Catch::Approx(1.0).margin(kAlgTol));
}

TEST_CASE("run_scaling emits rows and exact epsilon slope") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kScaling;
  cfg.channel = parse_channel_spec("builtin:shift_mixture,dim=4");
  cfg.access = Access::kCoherent;
  cfg.dims = {4};
  cfg.epsilons = {0.2, 0.1};
  cfg.repeats = 1;
  cfg.seed = 5;
  const ResultRecord rec = run_scaling(cfg);
  REQUIRE(rec.summary.at("rows").size() == 2);
  // M = ceil(8/(eps/3)^2) scales exactly as eps^-2 here.
  REQUIRE(rec.summary.at("slope_queries_vs_inv_epsilon").get<double>() ==
          Catch::Approx(2.0).margin(1e-12));
  REQUIRE_FALSE(rec.summary.contains("slope_queries_vs_dim"));

  // Dimension sweeps refuse non-builtin channels.
  ExperimentConfig bad = cfg;
  bad.channel = ChannelSpec{};
  bad.channel.path = "whatever.json";
  bad.dims = {2, 4};
  REQUIRE_THROWS_AS(run_scaling(bad), ValidationError);
}

TEST_CASE("run_distinguish degrades to guessing under a 1-query budget") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kDistinguish;
  cfg.dim = 2;
  cfg.trials = 100;
  cfg.seed = 21;
  cfg.budget = 1;
  const ResultRecord rec = run_distinguish(cfg);
  const double rate = rec.summary.at("success_rate").get<double>();
  // Pure coin flipping: 5 sigma around 1/2 at n = 100.
  REQUIRE(rate > 0.25);
  REQUIRE(rate < 0.75);
  REQUIRE(rec.summary.at("queries_per_trial").get<std::uint64_t>() == 0);
}

TEST_CASE("experiments are reproducible across runs and worker counts") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::kEstimate;
  cfg.channel = parse_channel_spec("builtin:depolarizing,q=1,dim=2");
  cfg.epsilon = 0.3;
  cfg.seed = 12;
  cfg.repeats = 3;
  cfg.workers = 1;
  nlohmann::json a = run_estimate(cfg);
  cfg.workers = 8;
  nlohmann::json b = run_estimate(cfg);
  strip_volatile(a);
  strip_volatile(b);
  REQUIRE(a == b);
}
