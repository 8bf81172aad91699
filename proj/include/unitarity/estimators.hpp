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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "unitarity/channel.hpp"
#include "unitarity/ensemble.hpp"
#include "unitarity/errors.hpp"
#include "unitarity/rng.hpp"
#include "unitarity/sampling.hpp"

namespace unitarity {

enum class Access { kCoherent, kIncoherent };

enum class IndexKind { kP, kO, kS, kT, kU, kUAlt, kInnerProduct };

enum class UnitarityVariant { kU, kUAlt };

inline const char* to_string(Access a) {
  return a == Access::kCoherent ? "coherent" : "incoherent";
}

inline const char* to_string(IndexKind k) {
  switch (k) {
    case IndexKind::kP: return "p";
    case IndexKind::kO: return "o";
    case IndexKind::kS: return "s";
    case IndexKind::kT: return "t";
    case IndexKind::kU: return "u";
    case IndexKind::kUAlt: return "uprime";
    case IndexKind::kInnerProduct: return "inner_product";
  }
  return "?";
}

inline const char* to_string(UnitarityVariant v) {
  return v == UnitarityVariant::kU ? "u" : "uprime";
}

/// Run parameters for one estimation. input_settings is the number of
/// random-input rounds (M); basis_settings (N) and shots_per_basis (m) only
/// matter for incoherent access.
struct EstimatorConfig {
  std::size_t input_settings = 1;   // M
  std::size_t basis_settings = 1;   // N
  std::size_t shots_per_basis = 1;  // m
  double epsilon = 0.1;
  double delta = 1.0 / 3.0;
  Access access = Access::kIncoherent;
  std::uint64_t seed = 0;

  void validate() const {
    if (input_settings < 1 || basis_settings < 1 || shots_per_basis < 1) {
      throw ValidationError("estimator config: M, N, m must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw ValidationError("estimator config: epsilon must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ValidationError("estimator config: delta must lie in (0, 1)");
    }
  }
};

/// One reproducible estimation result with exact query accounting.
struct EstimateRecord {
  double value = 0.0;
  IndexKind index = IndexKind::kU;
  Access access = Access::kIncoherent;
  std::uint64_t total_queries = 0;
  std::vector<double> rounds;  // per-round values z_i (or per-repetition values)
  EstimatorConfig config;
  double wall_seconds = 0.0;
};

/// One batch of basis-measurement outcomes (the X or Y of a basis setting).
struct SampleBatch {
  std::vector<MeasurementOutcome> outcomes;
};

/// Tunable constants behind the asymptotic parameter choices. The defaults
/// drive the Hoeffding and Chebyshev failure terms below 1/6 each at the
/// default variance budget.
struct EstimationPolicy {
  double settings_constant = 8.0;       // M = ceil(c / eps^2)
  std::size_t basis_settings = 12;      // N
  double shots_constant = 2.0;          // m = ceil(c * sqrt(d))
  double trace_samples_constant = 2.0;  // t samples = ceil(c / eps^2)
  double median_constant = 18.0;        // repetitions = ceil(c * ln(1/delta))
  double precision_split_u = 3.0;       // per-index precision for u
  double precision_split_u_alt = 8.0;   // per-index precision for u'
};

namespace detail {

template <typename Body>
void parallel_rounds(std::size_t n, unsigned workers, Body&& body) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned count =
      static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(count);
  std::mutex fail_mutex;
  std::exception_ptr failure;
  for (unsigned w = 0; w < count; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / count;
      const std::size_t hi = n * (w + 1) / count;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class WallTimer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// Inner-product estimation core on ensemble states (Algorithm: N basis
// settings of m shots each on both states, partial collisions, minus the
// trivial-POVM trace correction).
inline double dqipe_core(const OutputEnsemble& rho, const OutputEnsemble& sigma,
                         std::size_t basis_settings, std::size_t shots,
                         const RngStream& rng) {
  const Index d = rho.dim;
  JointRotatedSampler sampler(rho, sigma);
  std::vector<double> p, q;
  std::vector<std::uint32_t> cx(static_cast<std::size_t>(d));
  std::vector<std::uint32_t> cy(static_cast<std::size_t>(d));
  // Rotation-invariant pairs see the same outcome law in every basis; fill it
  // once. sample_setting consumes no randomness in that case, so the streams
  // line up either way.
  const bool invariant = sampler.frame_rank() == 0;
  if (invariant) {
    RngStream unused = rng.derive(0);
    sampler.sample_setting(unused, p, q);
  }
  double w_sum = 0.0;
  for (std::size_t i = 0; i < basis_settings; ++i) {
    RngStream sub = rng.derive(i);
    if (!invariant) sampler.sample_setting(sub, p, q);
    std::fill(cx.begin(), cx.end(), 0);
    std::fill(cy.begin(), cy.end(), 0);
    for (std::size_t s = 0; s < shots; ++s) {
      const MeasurementOutcome mx = draw_outcome(p, sub);
      if (mx.valid()) ++cx[static_cast<std::size_t>(mx.value)];
    }
    for (std::size_t s = 0; s < shots; ++s) {
      const MeasurementOutcome my = draw_outcome(q, sub);
      if (my.valid()) ++cy[static_cast<std::size_t>(my.value)];
    }
    std::uint64_t collisions = 0;
    for (Index b = 0; b < d; ++b) {
      collisions += static_cast<std::uint64_t>(cx[static_cast<std::size_t>(b)]) *
                    cy[static_cast<std::size_t>(b)];
    }
    const double m2 = static_cast<double>(shots) * static_cast<double>(shots);
    w_sum += static_cast<double>(d + 1) * (static_cast<double>(collisions) / m2);
  }
  const std::size_t trace_shots = basis_settings * shots;
  RngStream t1_rng = rng.derive(basis_settings);
  RngStream t2_rng = rng.derive(basis_settings + 1);
  std::size_t v1 = 0, v2 = 0;
  for (std::size_t s = 0; s < trace_shots; ++s) {
    if (trivial_povm_from_trace(rho.trace, t1_rng)) ++v1;
  }
  for (std::size_t s = 0; s < trace_shots; ++s) {
    if (trivial_povm_from_trace(sigma.trace, t2_rng)) ++v2;
  }
  const double t1 = static_cast<double>(v1) / static_cast<double>(trace_shots);
  const double t2 = static_cast<double>(v2) / static_cast<double>(trace_shots);
  return w_sum / static_cast<double>(basis_settings) - t1 * t2;
}

// Shared round-loop driver: fills rounds[i] = round(i, stream_i), averages in
// round-index order so results do not depend on the worker count.
template <typename Round>
EstimateRecord run_rounds(IndexKind index, Access access, std::size_t rounds_n,
                          std::uint64_t queries_per_round,
                          const EstimatorConfig& config, unsigned workers,
                          const RngStream& rng, Round&& round) {
  WallTimer timer;
  EstimateRecord rec;
  rec.index = index;
  rec.access = access;
  rec.config = config;
  rec.rounds.resize(rounds_n);
  parallel_rounds(rounds_n, workers, [&](std::size_t i) {
    RngStream sub = rng.derive(i);
    rec.rounds[i] = round(sub);
  });
  double sum = 0.0;
  for (double z : rec.rounds) sum += z;
  rec.value = sum / static_cast<double>(rounds_n);
  rec.total_queries = queries_per_round * rounds_n;
  rec.wall_seconds = timer.seconds();
  return rec;
}

inline Eigen::VectorXcd haar_state(Index d, RngStream& rng) {
  return haar_isometry(d, 1, rng).col(0);
}

}  // namespace detail

/// Partial collision estimator: the normalized count of matching non-failure
/// outcomes between two batches of equal length.
inline double partial_collision(const SampleBatch& x, const SampleBatch& y) {
  const std::size_t m = x.outcomes.size();
  if (m == 0 || y.outcomes.size() == 0) {
    throw EmptyBatch("partial_collision: empty sample batch");
  }
  if (y.outcomes.size() != m) {
    throw DimensionMismatch("partial_collision: batches must have equal length");
  }
  std::uint64_t collisions = 0;
  for (const MeasurementOutcome& a : x.outcomes) {
    if (!a.valid()) continue;
    for (const MeasurementOutcome& b : y.outcomes) {
      if (a == b) ++collisions;
    }
  }
  return static_cast<double>(collisions) /
         (static_cast<double>(m) * static_cast<double>(m));
}

/// Distributed inner product estimation for partial density operators.
/// Unbiased for tr(rho sigma); uses 2Nm simulated copies of each state.
inline double dqipe(const PartialDensityOperator& rho,
                    const PartialDensityOperator& sigma,
                    std::size_t basis_settings, std::size_t shots_per_basis,
                    RngStream rng) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("dqipe: state dims differ");
  }
  if (basis_settings < 1 || shots_per_basis < 1) {
    throw ValidationError("dqipe: N and m must be >= 1");
  }
  return detail::dqipe_core(detail::ensemble_from_density(rho.matrix),
                            detail::ensemble_from_density(sigma.matrix),
                            basis_settings, shots_per_basis, rng);
}

/// Orthogonality-preservation estimator, coherent access: per round draw a
/// Haar pair (psi, phi) = (U|0>, U|1>), push both through the channel, and
/// SWAP-test the outputs. 2 channel queries per round.
inline EstimateRecord estimate_o_coherent(const KrausChannel& ch,
                                          std::size_t input_settings,
                                          const RngStream& rng,
                                          unsigned workers = 1) {
  if (ch.dim() < 2) throw DimensionTooSmall("o estimation needs d >= 2");
  EstimatorConfig cfg;
  cfg.input_settings = input_settings;
  cfg.access = Access::kCoherent;
  cfg.seed = rng.seed();
  return detail::run_rounds(
      IndexKind::kO, Access::kCoherent, input_settings, 2, cfg, workers, rng,
      [&](RngStream& sub) {
        const Eigen::MatrixXcd pair = haar_isometry(ch.dim(), 2, sub);
        const auto rho = detail::prepare_output(ch, pair.col(0));
        const auto sigma = detail::prepare_output(ch, pair.col(1));
        const double cross = detail::inner_product_trace(rho, sigma);
        return static_cast<double>(
            swap_test_from_traces(rho.trace, sigma.trace, cross, sub).w);
      });
}

/// Purity-preservation estimator, coherent access: the second state is an
/// independent channel invocation on the same input.
inline EstimateRecord estimate_p_coherent(const KrausChannel& ch,
                                          std::size_t input_settings,
                                          const RngStream& rng,
                                          unsigned workers = 1) {
  EstimatorConfig cfg;
  cfg.input_settings = input_settings;
  cfg.access = Access::kCoherent;
  cfg.seed = rng.seed();
  return detail::run_rounds(
      IndexKind::kP, Access::kCoherent, input_settings, 2, cfg, workers, rng,
      [&](RngStream& sub) {
        const auto rho = detail::prepare_output(ch, detail::haar_state(ch.dim(), sub));
        const double cross = detail::inner_product_trace(rho, rho);
        return static_cast<double>(
            swap_test_from_traces(rho.trace, rho.trace, cross, sub).w);
      });
}

/// Orthogonality-preservation estimator, incoherent access: SWAP test
/// replaced by inner product estimation from single-copy measurements.
/// 4Nm channel queries per round (2Nm copies of each output state).
inline EstimateRecord estimate_o_incoherent(const KrausChannel& ch,
                                            std::size_t input_settings,
                                            std::size_t basis_settings,
                                            std::size_t shots_per_basis,
                                            const RngStream& rng,
                                            unsigned workers = 1) {
  if (ch.dim() < 2) throw DimensionTooSmall("o estimation needs d >= 2");
  EstimatorConfig cfg;
  cfg.input_settings = input_settings;
  cfg.basis_settings = basis_settings;
  cfg.shots_per_basis = shots_per_basis;
  cfg.access = Access::kIncoherent;
  cfg.seed = rng.seed();
  const std::uint64_t per_round = 4ull * basis_settings * shots_per_basis;
  return detail::run_rounds(
      IndexKind::kO, Access::kIncoherent, input_settings, per_round, cfg,
      workers, rng, [&](RngStream& sub) {
        const Eigen::MatrixXcd pair = haar_isometry(ch.dim(), 2, sub);
        const auto rho = detail::prepare_output(ch, pair.col(0));
        const auto sigma = detail::prepare_output(ch, pair.col(1));
        return detail::dqipe_core(rho, sigma, basis_settings, shots_per_basis,
                                  sub);
      });
}

inline EstimateRecord estimate_p_incoherent(const KrausChannel& ch,
                                            std::size_t input_settings,
                                            std::size_t basis_settings,
                                            std::size_t shots_per_basis,
                                            const RngStream& rng,
                                            unsigned workers = 1) {
  EstimatorConfig cfg;
  cfg.input_settings = input_settings;
  cfg.basis_settings = basis_settings;
  cfg.shots_per_basis = shots_per_basis;
  cfg.access = Access::kIncoherent;
  cfg.seed = rng.seed();
  const std::uint64_t per_round = 4ull * basis_settings * shots_per_basis;
  return detail::run_rounds(
      IndexKind::kP, Access::kIncoherent, input_settings, per_round, cfg,
      workers, rng, [&](RngStream& sub) {
        const auto rho = detail::prepare_output(ch, detail::haar_state(ch.dim(), sub));
        return detail::dqipe_core(rho, rho, basis_settings, shots_per_basis, sub);
      });
}

/// Averaged self-overlap under a random rotation: per round prepare
/// rho = E(|psi><psi|), rotate one copy by an independent Haar unitary, and
/// estimate tr(U rho U^dag rho) with the access-appropriate subroutine.
inline EstimateRecord estimate_s(const KrausChannel& ch, Access access,
                                 std::size_t input_settings,
                                 std::size_t basis_settings,
                                 std::size_t shots_per_basis,
                                 const RngStream& rng, unsigned workers = 1) {
  EstimatorConfig cfg;
  cfg.input_settings = input_settings;
  cfg.basis_settings = basis_settings;
  cfg.shots_per_basis = shots_per_basis;
  cfg.access = access;
  cfg.seed = rng.seed();
  const std::uint64_t per_round =
      access == Access::kCoherent ? 2 : 4ull * basis_settings * shots_per_basis;
  return detail::run_rounds(
      IndexKind::kS, access, input_settings, per_round, cfg, workers, rng,
      [&, access](RngStream& sub) -> double {
        const auto rho = detail::prepare_output(ch, detail::haar_state(ch.dim(), sub));
        const auto rotated = detail::rotate_haar(rho, sub);
        if (access == Access::kCoherent) {
          const double cross = detail::inner_product_trace(rotated, rho);
          return static_cast<double>(
              swap_test_from_traces(rotated.trace, rho.trace, cross, sub).w);
        }
        return detail::dqipe_core(rotated, rho, basis_settings, shots_per_basis,
                                  sub);
      });
}

/// Trace-preservation estimator: feed the maximally mixed state and count
/// trivial-POVM successes. One channel query per sample.
inline EstimateRecord estimate_t(const KrausChannel& ch, std::size_t samples,
                                 RngStream rng) {
  if (samples < 1) throw ValidationError("estimate_t: samples must be >= 1");
  detail::WallTimer timer;
  cmat out_of_identity = cmat::Zero(ch.dim(), ch.dim());
  for (const cmat& e : ch.kraus()) out_of_identity += e * e.adjoint();
  const double trace =
      out_of_identity.trace().real() / static_cast<double>(ch.dim());
  std::size_t valid = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (trivial_povm_from_trace(trace, rng)) ++valid;
  }
  EstimateRecord rec;
  rec.index = IndexKind::kT;
  rec.access = Access::kIncoherent;
  rec.value = static_cast<double>(valid) / static_cast<double>(samples);
  rec.total_queries = samples;
  rec.config.input_settings = samples;
  rec.config.seed = rng.seed();
  rec.wall_seconds = timer.seconds();
  return rec;
}

/// u = p - (1 - 1/d) o.
inline double assemble_u(double p_hat, double o_hat, Index d) {
  return p_hat - (1.0 - 1.0 / static_cast<double>(d)) * o_hat;
}

/// u' = p - o - (d/(d-1)) s + t^2/(d-1).
inline double assemble_u_alt(double p_hat, double o_hat, double s_hat,
                             double t_hat, Index d) {
  if (d < 2) throw DimensionTooSmall("assemble_u_alt needs d >= 2");
  const double dd = static_cast<double>(d);
  return p_hat - o_hat - dd / (dd - 1.0) * s_hat + t_hat * t_hat / (dd - 1.0);
}

/// Median; an even-length list averages the two central values.
inline double median_of_runs(std::vector<double> values) {
  if (values.empty()) throw EmptyList("median_of_runs: empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Derived per-run parameters for a full unitarity estimation.
struct UnitarityPlan {
  std::size_t input_settings = 0;   // M per index estimator
  std::size_t basis_settings = 0;   // N (incoherent only)
  std::size_t shots_per_basis = 0;  // m (incoherent only)
  std::size_t trace_samples = 0;    // t estimator samples (u' only)
  std::size_t repetitions = 0;      // median-trick repetitions
  double index_epsilon = 0.0;
};

inline UnitarityPlan plan_unitarity(Index d, double epsilon, double delta,
                                    UnitarityVariant variant,
                                    const EstimationPolicy& policy = {}) {
  UnitarityPlan plan;
  const double split = variant == UnitarityVariant::kU
                           ? policy.precision_split_u
                           : policy.precision_split_u_alt;
  plan.index_epsilon = epsilon / split;
  plan.input_settings = static_cast<std::size_t>(
      std::ceil(policy.settings_constant /
                (plan.index_epsilon * plan.index_epsilon)));
  plan.basis_settings = policy.basis_settings;
  plan.shots_per_basis = static_cast<std::size_t>(
      std::ceil(policy.shots_constant * std::sqrt(static_cast<double>(d))));
  plan.trace_samples = static_cast<std::size_t>(
      std::ceil(policy.trace_samples_constant /
                (plan.index_epsilon * plan.index_epsilon)));
  plan.repetitions =
      delta < 1.0 / 3.0
          ? static_cast<std::size_t>(
                std::ceil(policy.median_constant * std::log(1.0 / delta)))
          : 1;
  return plan;
}

/// Full unitarity estimation record plus the per-index component records
/// (aggregated across median-trick repetitions).
struct UnitarityEstimate {
  EstimateRecord record;
  std::vector<EstimateRecord> components;
};

/// Core unitarity estimation with explicit per-run parameters: runs the
/// needed index estimators per repetition, assembles, and takes the median
/// across repetitions.
inline UnitarityEstimate estimate_unitarity_with_plan(
    const KrausChannel& ch, Access access, const UnitarityPlan& plan,
    UnitarityVariant variant, const RngStream& rng, unsigned workers = 1,
    double epsilon = 0.1, double delta = 1.0 / 3.0) {
  if (ch.dim() < 2) throw DimensionTooSmall("unitarity estimation needs d >= 2");
  detail::WallTimer timer;
  const Index d = ch.dim();
  const std::size_t n_indices = variant == UnitarityVariant::kU ? 2 : 4;

  auto run_index = [&](IndexKind kind, const RngStream& sub) -> EstimateRecord {
    switch (kind) {
      case IndexKind::kP:
        return access == Access::kCoherent
                   ? estimate_p_coherent(ch, plan.input_settings, sub, workers)
                   : estimate_p_incoherent(ch, plan.input_settings,
                                           plan.basis_settings,
                                           plan.shots_per_basis, sub, workers);
      case IndexKind::kO:
        return access == Access::kCoherent
                   ? estimate_o_coherent(ch, plan.input_settings, sub, workers)
                   : estimate_o_incoherent(ch, plan.input_settings,
                                           plan.basis_settings,
                                           plan.shots_per_basis, sub, workers);
      case IndexKind::kS:
        return estimate_s(ch, access, plan.input_settings, plan.basis_settings,
                          plan.shots_per_basis, sub, workers);
      default:
        return estimate_t(ch, plan.trace_samples, sub);
    }
  };

  static constexpr IndexKind kOrder[4] = {IndexKind::kP, IndexKind::kO,
                                          IndexKind::kS, IndexKind::kT};
  std::vector<std::vector<double>> index_values(n_indices);
  std::vector<std::uint64_t> index_queries(n_indices, 0);
  std::vector<double> index_walls(n_indices, 0.0);
  std::vector<double> assembled(plan.repetitions);

  for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
    const RngStream rep_rng = rng.derive(rep);
    double vals[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < n_indices; ++j) {
      const EstimateRecord r = run_index(kOrder[j], rep_rng.derive(j));
      vals[j] = r.value;
      index_values[j].push_back(r.value);
      index_queries[j] += r.total_queries;
      index_walls[j] += r.wall_seconds;
    }
    assembled[rep] = variant == UnitarityVariant::kU
                         ? assemble_u(vals[0], vals[1], d)
                         : assemble_u_alt(vals[0], vals[1], vals[2], vals[3], d);
  }

  UnitarityEstimate out;
  out.record.index =
      variant == UnitarityVariant::kU ? IndexKind::kU : IndexKind::kUAlt;
  out.record.access = access;
  out.record.value = median_of_runs(assembled);
  out.record.rounds = std::move(assembled);
  out.record.config.input_settings = plan.input_settings;
  out.record.config.basis_settings = plan.basis_settings;
  out.record.config.shots_per_basis = plan.shots_per_basis;
  out.record.config.epsilon = epsilon;
  out.record.config.delta = delta;
  out.record.config.access = access;
  out.record.config.seed = rng.seed();

  std::uint64_t total = 0;
  for (std::size_t j = 0; j < n_indices; ++j) {
    EstimateRecord comp;
    comp.index = kOrder[j];
    comp.access = access;
    comp.value = median_of_runs(index_values[j]);
    comp.rounds = std::move(index_values[j]);
    comp.total_queries = index_queries[j];
    comp.wall_seconds = index_walls[j];
    comp.config = out.record.config;
    out.components.push_back(std::move(comp));
    total += index_queries[j];
  }
  out.record.total_queries = total;
  out.record.wall_seconds = timer.seconds();
  return out;
}

/// Estimates u or u' to precision epsilon with failure probability delta,
/// deriving the run parameters from the policy.
inline UnitarityEstimate estimate_unitarity(const KrausChannel& ch,
                                            Access access, double epsilon,
                                            double delta,
                                            UnitarityVariant variant,
                                            const RngStream& rng,
                                            unsigned workers = 1,
                                            const EstimationPolicy& policy = {}) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("estimate_unitarity: need epsilon, delta in (0, 1)");
  }
  const UnitarityPlan plan =
      plan_unitarity(ch.dim(), epsilon, delta, variant, policy);
  return estimate_unitarity_with_plan(ch, access, plan, variant, rng, workers,
                                      epsilon, delta);
}

}  // namespace unitarity
