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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unitarity/channels.hpp"
#include "unitarity/estimators.hpp"
#include "unitarity/io.hpp"
#include "unitarity/oracle.hpp"
#include "unitarity/version.hpp"

namespace unitarity {

// Oracle cross-checks are computed whenever the dimension is desk-computable.
inline constexpr Index kOracleDimLimit = 64;

/// Channel selection: a named builtin with parameters, or an explicit Kraus
/// file.
struct ChannelSpec {
  bool builtin = false;
  std::string name;                      // builtin name
  std::map<std::string, double> params;  // builtin params
  Index dim = 0;
  std::string path;    // explicit spec file
  std::string source;  // original CLI string, echoed into results

  KrausChannel instantiate() const {
    if (builtin) return builtin_channel(name, params, dim);
    return load_channel_spec(path);
  }

  ChannelSpec with_dim(Index d) const {
    if (!builtin) {
      throw ValidationError("dimension sweeps need a builtin channel spec");
    }
    ChannelSpec out = *this;
    out.dim = d;
    return out;
  }
};

/// Parses "builtin:name,k=v,..." (with a mandatory dim=<n> entry) or treats
/// the argument as a file path.
inline ChannelSpec parse_channel_spec(const std::string& arg) {
  ChannelSpec spec;
  spec.source = arg;
  if (arg.rfind("builtin:", 0) != 0) {
    spec.path = arg;
    return spec;
  }
  spec.builtin = true;
  std::stringstream body(arg.substr(8));
  std::string field;
  bool first = true;
  while (std::getline(body, field, ',')) {
    if (first) {
      spec.name = field;
      first = false;
      continue;
    }
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw ParseError("channel spec: expected k=v, got '" + field + "'");
    }
    const std::string key = field.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(field.substr(eq + 1), &used);
      if (used != field.size() - eq - 1) throw std::invalid_argument("trail");
    } catch (const std::exception&) {
      throw ParseError("channel spec: bad numeric value in '" + field + "'");
    }
    if (key == "dim") {
      spec.dim = static_cast<Index>(value);
    } else {
      spec.params[key] = value;
    }
  }
  if (spec.name.empty()) throw ParseError("channel spec: missing builtin name");
  if (spec.dim < 2) {
    throw ParseError("channel spec: builtin needs dim=<n> with n >= 2");
  }
  return spec;
}

enum class OutputFormat { kJson, kCsv };

/// One experiment to run.
struct ExperimentConfig {
  enum class Kind { kEstimate, kOracle, kBounds, kScaling, kDistinguish };

  Kind kind = Kind::kEstimate;
  ChannelSpec channel;
  Access access = Access::kIncoherent;
  double epsilon = 0.1;
  double delta = 1.0 / 3.0;
  UnitarityVariant variant = UnitarityVariant::kU;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  unsigned workers = 1;
  std::vector<Index> dims;        // scaling
  std::vector<double> epsilons;   // scaling
  std::size_t trials = 100;       // distinguish
  std::optional<std::uint64_t> budget;  // distinguish query budget
  Index dim = 4;                  // distinguish
  std::string out_path;           // empty = stdout
  OutputFormat format = OutputFormat::kJson;

  void validate() const {
    if (repeats < 1) throw ValidationError("repeats must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw ValidationError("epsilon must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ValidationError("delta must lie in (0, 1)");
    }
    if (kind == Kind::kScaling && (dims.empty() || epsilons.empty())) {
      throw ValidationError("scaling needs nonempty dim and epsilon lists");
    }
    if (kind == Kind::kDistinguish && trials < 1) {
      throw ValidationError("distinguish needs trials >= 1");
    }
  }
};

/// Full experiment output: reproducible inputs, per-repeat estimate records,
/// oracle values when computable, and a summary.
struct ResultRecord {
  std::string kind;
  nlohmann::json config;
  nlohmann::json oracle;  // null when not computable
  std::vector<std::vector<EstimateRecord>> repeats;
  nlohmann::json summary;
  std::string tool_version;
  std::string timestamp;
};

inline void to_json(nlohmann::json& j, const EstimatorConfig& c) {
  j = nlohmann::json{{"input_settings", c.input_settings},
                     {"basis_settings", c.basis_settings},
                     {"shots_per_basis", c.shots_per_basis},
                     {"epsilon", c.epsilon},
                     {"delta", c.delta},
                     {"access", to_string(c.access)},
                     {"seed", c.seed}};
}

inline void from_json(const nlohmann::json& j, EstimatorConfig& c) {
  j.at("input_settings").get_to(c.input_settings);
  j.at("basis_settings").get_to(c.basis_settings);
  j.at("shots_per_basis").get_to(c.shots_per_basis);
  j.at("epsilon").get_to(c.epsilon);
  j.at("delta").get_to(c.delta);
  c.access = j.at("access").get<std::string>() == "coherent"
                 ? Access::kCoherent
                 : Access::kIncoherent;
  j.at("seed").get_to(c.seed);
}

inline IndexKind index_kind_from_string(const std::string& s) {
  if (s == "p") return IndexKind::kP;
  if (s == "o") return IndexKind::kO;
  if (s == "s") return IndexKind::kS;
  if (s == "t") return IndexKind::kT;
  if (s == "u") return IndexKind::kU;
  if (s == "uprime") return IndexKind::kUAlt;
  if (s == "inner_product") return IndexKind::kInnerProduct;
  throw ParseError("unknown index kind '" + s + "'");
}

inline void to_json(nlohmann::json& j, const EstimateRecord& r) {
  j = nlohmann::json{{"index", to_string(r.index)},
                     {"access", to_string(r.access)},
                     {"value", r.value},
                     {"total_queries", r.total_queries},
                     {"rounds", r.rounds},
                     {"config", r.config},
                     {"wall_seconds", r.wall_seconds}};
}

inline void from_json(const nlohmann::json& j, EstimateRecord& r) {
  r.index = index_kind_from_string(j.at("index").get<std::string>());
  r.access = j.at("access").get<std::string>() == "coherent"
                 ? Access::kCoherent
                 : Access::kIncoherent;
  j.at("value").get_to(r.value);
  j.at("total_queries").get_to(r.total_queries);
  j.at("rounds").get_to(r.rounds);
  j.at("config").get_to(r.config);
  j.at("wall_seconds").get_to(r.wall_seconds);
}

inline void to_json(nlohmann::json& j, const ResultRecord& r) {
  j = nlohmann::json{{"kind", r.kind},
                     {"config", r.config},
                     {"oracle", r.oracle},
                     {"repeats", r.repeats},
                     {"summary", r.summary},
                     {"tool_version", r.tool_version},
                     {"timestamp", r.timestamp}};
}

inline void from_json(const nlohmann::json& j, ResultRecord& r) {
  j.at("kind").get_to(r.kind);
  r.config = j.at("config");
  r.oracle = j.at("oracle");
  j.at("repeats").get_to(r.repeats);
  r.summary = j.at("summary");
  j.at("tool_version").get_to(r.tool_version);
  j.at("timestamp").get_to(r.timestamp);
}

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

inline double sample_stddev(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

inline double mean_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = mean_of(lx);
  const double my = mean_of(ly);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

inline nlohmann::json oracle_json(const KrausChannel& ch) {
  const IndexReport r = oracle_report(ch);
  const BlockDecomposition b = block_decomposition(ch);
  return nlohmann::json{
      {"u", r.u},           {"uprime", r.u_alt}, {"p", r.p},
      {"o", r.o},           {"s", r.s},          {"t", r.t},
      {"alpha", r.alpha},   {"beta", r.beta},    {"block_t", b.t},
      {"block_sdl2", b.sdl2}, {"block_n2", b.n2}, {"block_u2", b.u2}};
}

// The worker count is deliberately not echoed: results are independent of it
// and outputs from different worker counts must compare equal.
inline nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j{{"channel", cfg.channel.source},
                   {"access", to_string(cfg.access)},
                   {"epsilon", cfg.epsilon},
                   {"delta", cfg.delta},
                   {"variant", to_string(cfg.variant)},
                   {"seed", cfg.seed},
                   {"repeats", cfg.repeats}};
  if (!cfg.dims.empty()) j["dims"] = cfg.dims;
  if (!cfg.epsilons.empty()) j["epsilons"] = cfg.epsilons;
  return j;
}

}  // namespace detail

/// Runs `repeats` independent unitarity estimations with per-repeat stream
/// ids and summarizes them against the oracle when the dimension permits.
inline ResultRecord run_estimate(const ExperimentConfig& cfg) {
  cfg.validate();
  const KrausChannel ch = cfg.channel.instantiate();
  ResultRecord rec;
  rec.kind = "estimate";
  rec.config = detail::config_json(cfg);
  rec.tool_version = kVersion;
  rec.timestamp = detail::utc_timestamp();

  std::optional<IndexReport> oracle;
  if (ch.dim() <= kOracleDimLimit) {
    oracle = oracle_report(ch);
    rec.oracle = detail::oracle_json(ch);
  }

  const RngStream master(cfg.seed, 0);
  rec.repeats.resize(cfg.repeats);
  const bool parallel_repeats = cfg.workers > 1 && cfg.repeats > 1;
  const unsigned inner_workers = parallel_repeats ? 1 : cfg.workers;
  detail::parallel_rounds(
      cfg.repeats, parallel_repeats ? cfg.workers : 1, [&](std::size_t r) {
        UnitarityEstimate est =
            estimate_unitarity(ch, cfg.access, cfg.epsilon, cfg.delta,
                               cfg.variant, master.derive(r), inner_workers);
        std::vector<EstimateRecord> records = std::move(est.components);
        records.push_back(std::move(est.record));
        rec.repeats[r] = std::move(records);
      });

  std::vector<double> values;
  std::uint64_t total_queries = 0;
  for (const auto& records : rec.repeats) {
    values.push_back(records.back().value);
    total_queries += records.back().total_queries;
  }
  nlohmann::json summary{{"index", to_string(cfg.variant)},
                         {"mean", detail::mean_of(values)},
                         {"median", median_of_runs(values)},
                         {"stddev", detail::sample_stddev(values)},
                         {"tolerance", cfg.epsilon},
                         {"total_queries", total_queries}};
  if (oracle) {
    const double truth = cfg.variant == UnitarityVariant::kU ? oracle->u
                                                             : oracle->u_alt;
    std::size_t ok = 0;
    for (double v : values) {
      if (std::abs(v - truth) <= cfg.epsilon) ++ok;
    }
    summary["oracle"] = truth;
    summary["abs_error_of_mean"] = std::abs(detail::mean_of(values) - truth);
    summary["success_fraction"] =
        static_cast<double>(ok) / static_cast<double>(values.size());
  }
  rec.summary = std::move(summary);
  return rec;
}

/// Exact index report for the channel; no sampling.
inline ResultRecord run_oracle(const ExperimentConfig& cfg) {
  const KrausChannel ch = cfg.channel.instantiate();
  ResultRecord rec;
  rec.kind = "oracle";
  rec.config = detail::config_json(cfg);
  rec.oracle = detail::oracle_json(ch);
  rec.tool_version = kVersion;
  rec.timestamp = detail::utc_timestamp();
  const IndexReport r = oracle_report(ch);
  rec.summary = {{"u", r.u}, {"uprime", r.u_alt}, {"p", r.p}, {"o", r.o},
                 {"s", r.s}, {"t", r.t}};
  // One pseudo-repeat so the CSV flattening has rows to emit.
  std::vector<EstimateRecord> rows;
  auto push = [&](IndexKind k, double v) {
    EstimateRecord e;
    e.index = k;
    e.value = v;
    e.access = cfg.access;
    e.config.seed = cfg.seed;
    rows.push_back(std::move(e));
  };
  push(IndexKind::kU, r.u);
  push(IndexKind::kUAlt, r.u_alt);
  push(IndexKind::kP, r.p);
  push(IndexKind::kO, r.o);
  push(IndexKind::kS, r.s);
  push(IndexKind::kT, r.t);
  rec.repeats.push_back(std::move(rows));
  return rec;
}

/// Unitary-approximability bounds and the explicit candidate.
inline ResultRecord run_bounds(const ExperimentConfig& cfg) {
  const KrausChannel ch = cfg.channel.instantiate();
  ResultRecord rec;
  rec.kind = "bounds";
  rec.config = detail::config_json(cfg);
  rec.oracle = detail::oracle_json(ch);
  rec.tool_version = kVersion;
  rec.timestamp = detail::utc_timestamp();
  const ApproximabilityBounds bounds = approximability_bounds(ch);
  nlohmann::json candidate = nlohmann::json::array();
  for (Index i = 0; i < bounds.candidate_unitary.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < bounds.candidate_unitary.cols(); ++j) {
      row.push_back({bounds.candidate_unitary(i, j).real(),
                     bounds.candidate_unitary(i, j).imag()});
    }
    candidate.push_back(std::move(row));
  }
  rec.summary = {{"lower", bounds.lower},
                 {"upper", bounds.upper},
                 {"candidate_fidelity", bounds.candidate_fidelity},
                 {"degenerate", bounds.degenerate},
                 {"candidate_unitary", std::move(candidate)}};
  return rec;
}

/// Query-scaling sweep over dimensions and precisions. Each grid cell runs
/// `repeats` full estimations; the summary carries log-log slopes of queries
/// against d (at the first epsilon) and against 1/epsilon (at the first
/// dim). Achieved errors are measured against the oracle only.
inline ResultRecord run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  ResultRecord rec;
  rec.kind = "scaling";
  rec.config = detail::config_json(cfg);
  rec.tool_version = kVersion;
  rec.timestamp = detail::utc_timestamp();

  struct Cell {
    Index dim;
    double epsilon;
    std::uint64_t queries;
    double mean_abs_error;
  };
  std::vector<Cell> cells;
  nlohmann::json rows = nlohmann::json::array();
  const RngStream master(cfg.seed, 1);

  std::size_t cell_id = 0;
  for (const Index d : cfg.dims) {
    for (const double eps : cfg.epsilons) {
      const KrausChannel ch = cfg.channel.with_dim(d).instantiate();
      const double truth = cfg.variant == UnitarityVariant::kU
                               ? exact_unitarity(ch)
                               : exact_alt_unitarity(ch);
      std::vector<EstimateRecord> cell_records(cfg.repeats);
      detail::parallel_rounds(
          cfg.repeats, cfg.workers, [&](std::size_t r) {
            UnitarityEstimate est = estimate_unitarity(
                ch, cfg.access, eps, cfg.delta, cfg.variant,
                master.derive(cell_id).derive(r), 1);
            cell_records[r] = std::move(est.record);
          });
      double err_sum = 0.0;
      for (std::size_t r = 0; r < cfg.repeats; ++r) {
        const double err = std::abs(cell_records[r].value - truth);
        err_sum += err;
        rows.push_back({{"dim", d},
                        {"epsilon", eps},
                        {"repeat", r},
                        {"access", to_string(cfg.access)},
                        {"value", cell_records[r].value},
                        {"oracle", truth},
                        {"abs_error", err},
                        {"queries", cell_records[r].total_queries}});
      }
      cells.push_back(Cell{d, eps, cell_records.front().total_queries,
                           err_sum / static_cast<double>(cfg.repeats)});
      rec.repeats.push_back(std::move(cell_records));
      ++cell_id;
    }
  }

  std::vector<double> dims_x, dims_y, eps_x, eps_y;
  for (const Cell& c : cells) {
    if (c.epsilon == cfg.epsilons.front()) {
      dims_x.push_back(static_cast<double>(c.dim));
      dims_y.push_back(static_cast<double>(c.queries));
    }
    if (c.dim == cfg.dims.front()) {
      eps_x.push_back(1.0 / c.epsilon);
      eps_y.push_back(static_cast<double>(c.queries));
    }
  }
  nlohmann::json summary{{"rows", std::move(rows)}};
  if (dims_x.size() >= 2) {
    summary["slope_queries_vs_dim"] = detail::loglog_slope(dims_x, dims_y);
  }
  if (eps_x.size() >= 2) {
    summary["slope_queries_vs_inv_epsilon"] = detail::loglog_slope(eps_x, eps_y);
  }
  rec.summary = std::move(summary);
  return rec;
}

/// Depolarizing-vs-unitary distinguishing task: per trial, a fair coin picks
/// the channel, the incoherent estimator runs within the query budget, and
/// the answer is "unitary" iff the estimate exceeds 1/2.
inline ResultRecord run_distinguish(const ExperimentConfig& cfg) {
  cfg.validate();
  const Index d = cfg.dim;
  if (d < 2) throw ValidationError("distinguish needs dim >= 2");
  ResultRecord rec;
  rec.kind = "distinguish";
  rec.config = detail::config_json(cfg);
  rec.config["dim"] = d;
  rec.config["trials"] = cfg.trials;
  rec.tool_version = kVersion;
  rec.timestamp = detail::utc_timestamp();

  // Default budget: what the incoherent estimator needs at the configured
  // precision. A smaller explicit budget shrinks the per-index round count;
  // once no full round fits, trials degrade to fair guessing.
  const UnitarityPlan plan =
      plan_unitarity(d, cfg.epsilon, cfg.delta, UnitarityVariant::kU);
  const std::uint64_t per_round =
      4ull * plan.basis_settings * plan.shots_per_basis;
  const std::uint64_t full_budget =
      2ull * plan.input_settings * per_round * plan.repetitions;
  const std::uint64_t budget = cfg.budget.value_or(full_budget);
  std::size_t input_settings = plan.input_settings;
  if (budget < full_budget) {
    input_settings = static_cast<std::size_t>(
        budget / (2ull * per_round * plan.repetitions));
  }
  rec.config["budget"] = budget;

  const RngStream master(cfg.seed, 2);
  std::vector<int> truths(cfg.trials), answers(cfg.trials);
  std::vector<double> estimates(cfg.trials,
                                std::numeric_limits<double>::quiet_NaN());
  std::vector<std::uint64_t> used(cfg.trials, 0);
  detail::parallel_rounds(cfg.trials, cfg.workers, [&](std::size_t trial) {
    RngStream rng = master.derive(trial);
    const bool is_unitary = rng.uniform() < 0.5;
    truths[trial] = is_unitary ? 1 : 0;
    const KrausChannel ch =
        is_unitary ? unitary_channel(haar_unitary(d, rng))
                   : depolarizing_channel(1.0, d);
    if (input_settings == 0) {
      answers[trial] = rng.uniform() < 0.5 ? 1 : 0;  // no information
      return;
    }
    UnitarityPlan trial_plan = plan;
    trial_plan.input_settings = input_settings;
    UnitarityEstimate est = estimate_unitarity_with_plan(
        ch, Access::kIncoherent, trial_plan, UnitarityVariant::kU,
        rng.derive(1), 1, cfg.epsilon, cfg.delta);
    estimates[trial] = est.record.value;
    used[trial] = est.record.total_queries;
    answers[trial] = est.record.value > 0.5 ? 1 : 0;
  });

  std::size_t correct = 0;
  std::uint64_t total_used = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    if (truths[trial] == answers[trial]) ++correct;
    total_used += used[trial];
    rows.push_back({{"trial", trial},
                    {"truth", truths[trial] ? "unitary" : "depolarizing"},
                    {"answer", answers[trial] ? "unitary" : "depolarizing"},
                    {"estimate", estimates[trial]},
                    {"queries", used[trial]}});
  }
  rec.summary = {{"success_rate",
                  static_cast<double>(correct) / static_cast<double>(cfg.trials)},
                 {"trials", cfg.trials},
                 {"queries_per_trial", input_settings == 0 ? 0 : total_used / cfg.trials},
                 {"threshold", 0.5},
                 {"rows", std::move(rows)}};
  return rec;
}

namespace detail {

inline void write_csv(const ResultRecord& rec, std::ostream& out) {
  out << "repeat,index_kind,value,queries,seed,wall_seconds\n";
  char line[256];
  for (std::size_t r = 0; r < rec.repeats.size(); ++r) {
    for (const EstimateRecord& e : rec.repeats[r]) {
      std::snprintf(line, sizeof(line), "%zu,%s,%.17g,%llu,%llu,%.17g\n", r,
                    to_string(e.index), e.value,
                    static_cast<unsigned long long>(e.total_queries),
                    static_cast<unsigned long long>(e.config.seed),
                    e.wall_seconds);
      out << line;
    }
  }
}

}  // namespace detail

/// Resolves the effective output path: the UNITARITY_OUT_DIR environment
/// variable, when set, prefixes relative paths.
inline std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path == "-") return path;
  const char* dir = std::getenv("UNITARITY_OUT_DIR");
  if (dir != nullptr && *dir != '\0' && path.front() != '/') {
    return std::string(dir) + "/" + path;
  }
  return path;
}

/// Writes the record as JSON (full document) or CSV (flat per-repeat rows).
/// An empty or "-" path writes to stdout.
inline void emit_result(const ResultRecord& rec, const std::string& path,
                        OutputFormat format) {
  const std::string resolved = resolve_out_path(path);
  std::ofstream file;
  const bool to_stdout = resolved.empty() || resolved == "-";
  if (!to_stdout) {
    file.open(resolved);
    if (!file) throw IoError("cannot write result to " + resolved);
  }
  std::ostream& out = to_stdout ? std::cout : file;
  if (format == OutputFormat::kJson) {
    nlohmann::json doc = rec;
    out << doc.dump(2) << "\n";
  } else {
    detail::write_csv(rec, out);
  }
  if (!to_stdout && !file.good()) {
    throw IoError("failed while writing result to " + resolved);
  }
}

inline ResultRecord load_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open result file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("result file: ") + e.what());
  }
  return doc.get<ResultRecord>();
}

inline ResultRecord run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentConfig::Kind::kEstimate: return run_estimate(cfg);
    case ExperimentConfig::Kind::kOracle: return run_oracle(cfg);
    case ExperimentConfig::Kind::kBounds: return run_bounds(cfg);
    case ExperimentConfig::Kind::kScaling: return run_scaling(cfg);
    case ExperimentConfig::Kind::kDistinguish: return run_distinguish(cfg);
  }
  throw ValidationError("unknown experiment kind");
}

}  // namespace unitarity
