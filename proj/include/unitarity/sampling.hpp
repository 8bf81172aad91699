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
#include <cmath>
#include <cstdint>
#include <vector>

#include "unitarity/channel.hpp"
#include "unitarity/errors.hpp"
#include "unitarity/linalg.hpp"
#include "unitarity/rng.hpp"

namespace unitarity {

/// Result of a basis measurement: either a basis index in {0..d-1} or the
/// failure outcome that partial density operators produce with probability
/// 1 - trace.
struct MeasurementOutcome {
  static constexpr std::int32_t kFailure = -1;
  std::int32_t value = kFailure;

  bool valid() const { return value >= 0; }
  static MeasurementOutcome failure() { return {kFailure}; }
  static MeasurementOutcome basis(std::int32_t b) { return {b}; }
  friend bool operator==(MeasurementOutcome a, MeasurementOutcome b) {
    return a.value == b.value;
  }
};

/// Outcome of one extended SWAP test: +1, -1, or 0 (the failure branch).
struct SwapTestOutcome {
  int w = 0;
};

namespace detail {

inline Eigen::MatrixXcd ginibre(Index rows, Index cols, RngStream& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      g(i, j) = rng.complex_normal();
    }
  }
  return g;
}

// Modified Gram-Schmidt with one reorthogonalization pass. The diagonal of R
// comes out real and positive, which is exactly the convention under which
// the Q factor of a Ginibre matrix is Haar-distributed.
inline void mgs_orthonormalize(Eigen::MatrixXcd& a) {
  const Index k = a.cols();
  for (Index j = 0; j < k; ++j) {
    auto col = a.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < j; ++i) {
        col -= a.col(i) * a.col(i).dot(col);
      }
    }
    col /= col.norm();
  }
}

}  // namespace detail

/// Haar-distributed isometry: the first `cols` columns of a Haar unitary.
inline Eigen::MatrixXcd haar_isometry(Index rows, Index cols, RngStream& rng) {
  Eigen::MatrixXcd q = detail::ginibre(rows, cols, rng);
  detail::mgs_orthonormalize(q);
  return q;
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the
/// positive-diagonal phase convention.
inline cmat haar_unitary(Index d, RngStream& rng) {
  return cmat(haar_isometry(d, d, rng));
}

namespace detail {

// Draws from unnormalized outcome weights p (clamped to [0,1] entrywise);
// residual mass 1 - sum(p) goes to the failure outcome. If rounding pushed
// the total slightly above 1, the draw is rescaled instead.
inline MeasurementOutcome draw_outcome(const std::vector<double>& p,
                                       RngStream& rng) {
  double total = 0.0;
  for (double v : p) total += v;
  const double t = rng.uniform() * std::max(total, 1.0);
  double running = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    running += p[b];
    if (t < running) return MeasurementOutcome::basis(static_cast<int>(b));
  }
  return MeasurementOutcome::failure();
}

inline std::vector<double> rotated_basis_probabilities(
    const PartialDensityOperator& rho, const cmat& u) {
  const Index d = rho.dim();
  if (u.rows() != d || u.cols() != d) {
    throw DimensionMismatch("measurement basis does not match state dimension");
  }
  const cmat v = u * rho.matrix;
  std::vector<double> p(static_cast<std::size_t>(d));
  for (Index b = 0; b < d; ++b) {
    const double pb = v.row(b).dot(u.row(b)).real();
    if (pb < -kPsdTol) {
      throw NumericalNegativeProbability(
          "rotated-basis probability " + std::to_string(pb) +
          "; state is not positive semidefinite");
    }
    p[static_cast<std::size_t>(b)] = std::clamp(pb, 0.0, 1.0);
  }
  return p;
}

}  // namespace detail

/// Measures rho in the basis {U^dag |b><b| U}: outcome b with probability
/// <b| U rho U^dag |b>, failure with the remaining 1 - tr(rho).
inline MeasurementOutcome measure_rotated_basis(
    const PartialDensityOperator& rho, const cmat& u, RngStream& rng) {
  return detail::draw_outcome(detail::rotated_basis_probabilities(rho, u), rng);
}

/// m i.i.d. draws from the same rotated basis; the outcome distribution is
/// computed once.
inline std::vector<MeasurementOutcome> measure_rotated_basis_batch(
    const PartialDensityOperator& rho, const cmat& u, std::size_t m,
    RngStream& rng) {
  const std::vector<double> p = detail::rotated_basis_probabilities(rho, u);
  std::vector<MeasurementOutcome> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = detail::draw_outcome(p, rng);
  return out;
}

/// SWAP test on partial density operators given the three traces that fix
/// its outcome law:
///   P(+1) = (tr rho tr sigma + tr rho sigma)/2,
///   P(-1) = (tr rho tr sigma - tr rho sigma)/2,
///   P(0)  = 1 - tr rho tr sigma   (the failure branch scores 0),
/// so E[w] = tr(rho sigma).
inline SwapTestOutcome swap_test_from_traces(double tr_rho, double tr_sigma,
                                             double tr_rho_sigma,
                                             RngStream& rng) {
  const double joint = std::clamp(tr_rho * tr_sigma, 0.0, 1.0);
  const double cross = std::clamp(tr_rho_sigma, 0.0, joint);
  const double p_plus = 0.5 * (joint + cross);
  const double p_minus = 0.5 * (joint - cross);
  const double t = rng.uniform();
  if (t < p_plus) return {+1};
  if (t < p_plus + p_minus) return {-1};
  return {0};
}

inline SwapTestOutcome swap_test_sample(const PartialDensityOperator& rho,
                                        const PartialDensityOperator& sigma,
                                        RngStream& rng) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("swap_test_sample: state dims differ");
  }
  const double cross = (rho.matrix * sigma.matrix).trace().real();
  return swap_test_from_traces(rho.trace(), sigma.trace(), cross, rng);
}

/// Trivial POVM {I}: true with probability tr(rho), false (failure) otherwise.
inline bool trivial_povm_from_trace(double tr_rho, RngStream& rng) {
  return rng.uniform() < std::clamp(tr_rho, 0.0, 1.0);
}

inline bool trivial_povm_sample(const PartialDensityOperator& rho,
                                RngStream& rng) {
  return trivial_povm_from_trace(rho.trace(), rng);
}

/// Random channel for oracle sweeps: k Ginibre operators, k uniform in
/// {1..d^2}, jointly rescaled so the largest eigenvalue of sum E_i^dag E_i
/// equals a uniform draw in [0.3, 1]. Exercises trace-decreasing paths.
inline KrausChannel random_channel(Index d, RngStream& rng) {
  const Index kmax = d * d;
  const Index k =
      1 + static_cast<Index>(rng.uniform() * static_cast<double>(kmax));
  std::vector<cmat> kraus;
  kraus.reserve(static_cast<std::size_t>(k));
  cmat overlap = cmat::Zero(d, d);
  for (Index i = 0; i < k; ++i) {
    cmat g = detail::ginibre(d, d, rng);
    overlap += g.adjoint() * g;
    kraus.push_back(std::move(g));
  }
  const double target = 0.3 + 0.7 * rng.uniform();
  const double scale = std::sqrt(target / hermitian_eigenvalues(overlap).maxCoeff());
  for (cmat& e : kraus) e *= scale;
  return KrausChannel(std::move(kraus), d);
}

/// Random partial density operator: normalized Wishart of random rank,
/// rescaled to a uniform trace in [0.3, 1].
inline PartialDensityOperator random_partial_state(Index d, RngStream& rng) {
  const Index r = 1 + static_cast<Index>(rng.uniform() * static_cast<double>(d));
  const Eigen::MatrixXcd g = detail::ginibre(d, r, rng);
  cmat w = cmat(g * g.adjoint());
  const double tr = w.trace().real();
  w *= (0.3 + 0.7 * rng.uniform()) / tr;
  return PartialDensityOperator{std::move(w)};
}

}  // namespace unitarity
