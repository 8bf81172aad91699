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
#include <vector>

#include "unitarity/channel.hpp"
#include "unitarity/linalg.hpp"

namespace unitarity {

/// Every exactly-computable index of a channel, plus the invariant-subspace
/// weights alpha (traceless sector) and beta (identity sector) they derive
/// from.
struct IndexReport {
  double u = 0.0;
  double u_alt = 0.0;
  double p = 0.0;
  double o = 0.0;
  double s = 0.0;
  double t = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Unitarity u = tr(M^dag M)/d^2 computed from the Gram matrix of the
/// vectorized Kraus operators, sum_ij |tr(E_i^dag E_j)|^2 / d^2. This route
/// is independent of the materialized matrix representation.
inline double exact_unitarity(const KrausChannel& ch) {
  const Index d = ch.dim();
  const auto& kraus = ch.kraus();
  const Index k = static_cast<Index>(kraus.size());
  Eigen::MatrixXcd vecs(d * d, k);
  for (Index i = 0; i < k; ++i) vecs.col(i) = vec(kraus[static_cast<std::size_t>(i)]);
  const Eigen::MatrixXcd gram = vecs.adjoint() * vecs;
  return gram.squaredNorm() / static_cast<double>(d * d);
}

/// E(I) = sum_i E_i E_i^dag.
inline cmat channel_of_identity(const KrausChannel& ch) {
  cmat a = cmat::Zero(ch.dim(), ch.dim());
  for (const cmat& e : ch.kraus()) a += e * e.adjoint();
  return a;
}

/// Trace-preservation index t = tr(E(I/d)).
inline double exact_t_index(const KrausChannel& ch) {
  return channel_of_identity(ch).trace().real() / static_cast<double>(ch.dim());
}

namespace detail {

// beta = tr(E(I)^2)/d is the identity-sector weight of the Haar average of
// M^dag M; alpha fills the traceless sector.
inline void sector_weights(const KrausChannel& ch, double& alpha, double& beta) {
  const double d = static_cast<double>(ch.dim());
  beta = channel_of_identity(ch).squaredNorm() / d;
  const double total = d * d * exact_unitarity(ch);  // tr(M^dag M)
  alpha = (total - beta) / (d * d - 1.0);
}

}  // namespace detail

/// Haar-average output purity on random pure inputs.
inline double exact_pp_index(const KrausChannel& ch) {
  double alpha = 0.0, beta = 0.0;
  detail::sector_weights(ch, alpha, beta);
  const double d = static_cast<double>(ch.dim());
  return (1.0 - 1.0 / d) * alpha + beta / d;
}

/// Haar-average output overlap on random orthogonal input pairs.
inline double exact_op_index(const KrausChannel& ch) {
  double alpha = 0.0, beta = 0.0;
  detail::sector_weights(ch, alpha, beta);
  return (beta - alpha) / static_cast<double>(ch.dim());
}

/// s = t^2/d + sdl2/(d(d+1)), the rotation-averaged self-overlap.
inline double exact_s_index(const KrausChannel& ch) {
  const BlockDecomposition blocks = block_decomposition(ch);
  const double d = static_cast<double>(ch.dim());
  return blocks.t * blocks.t / d + blocks.sdl2 / (d * (d + 1.0));
}

/// Alternative unitarity: Frobenius weight of the unital block over d^2 - 1.
inline double exact_alt_unitarity(const KrausChannel& ch) {
  const double d = static_cast<double>(ch.dim());
  return block_decomposition(ch).u2 / (d * d - 1.0);
}

inline IndexReport oracle_report(const KrausChannel& ch) {
  IndexReport r;
  const double d = static_cast<double>(ch.dim());
  const BlockDecomposition blocks = block_decomposition(ch);
  r.u = exact_unitarity(ch);
  r.t = blocks.t;
  r.s = blocks.t * blocks.t / d + blocks.sdl2 / (d * (d + 1.0));
  r.u_alt = blocks.u2 / (d * d - 1.0);
  detail::sector_weights(ch, r.alpha, r.beta);
  r.p = (1.0 - 1.0 / d) * r.alpha + r.beta / d;
  r.o = (r.beta - r.alpha) / d;
  return r;
}

/// Average gate fidelity F_a(U, E) = (sum_i |tr(U^dag E_i)|^2 + tr(E(I)))
/// / (d(d+1)).
inline double exact_avg_gate_fidelity(const cmat& u, const KrausChannel& ch) {
  const Index d = ch.dim();
  if (u.rows() != d || u.cols() != d) {
    throw DimensionMismatch("exact_avg_gate_fidelity: unitary dim mismatch");
  }
  double overlap = 0.0;
  for (const cmat& e : ch.kraus()) {
    overlap += std::norm((u.adjoint() * e).trace());
  }
  const double tr_ei = channel_of_identity(ch).trace().real();
  const double dd = static_cast<double>(d);
  return (overlap + tr_ei) / (dd * (dd + 1.0));
}

/// Kraus operators orthogonalized through the eigendecomposition of the
/// Jamiolkowski state (tr(F_i^dag F_j) = 0 for i != j), sorted by decreasing
/// weight tr(F_i^dag F_i); ties keep the lower eigen-index first.
inline std::vector<cmat> canonical_kraus(const KrausChannel& ch) {
  const Index d = ch.dim();
  const cmat j = jamiolkowski_state(ch).matrix;
  Eigen::SelfAdjointEigenSolver<cmat> es(j);
  std::vector<cmat> out;
  // Eigenvalues come out ascending; walk them backwards.
  for (Index i = d * d - 1; i >= 0; --i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 0.0) continue;
    const cvec v = es.eigenvectors().col(i) *
                   std::sqrt(lam * static_cast<double>(d));
    out.push_back(unvec(v, d, d));
  }
  if (out.empty()) out.push_back(cmat::Zero(d, d));
  return out;
}

/// Bounds on the best average gate fidelity any unitary can achieve against
/// the channel, plus the explicit candidate unitary from the polar part of
/// the dominant canonical Kraus operator.
struct ApproximabilityBounds {
  double lower = 0.0;
  double upper = 0.0;
  cmat candidate_unitary;
  double candidate_fidelity = 0.0;
  bool degenerate = false;  // all-zero channel; candidate defaulted to I
};

inline ApproximabilityBounds approximability_bounds(const KrausChannel& ch) {
  const Index d = ch.dim();
  const double dd = static_cast<double>(d);
  ApproximabilityBounds out;
  const double u = std::clamp(exact_unitarity(ch), 0.0, 1.0);
  out.lower = (dd * u * u + std::sqrt(u)) / (dd + 1.0);
  out.upper = (dd * std::sqrt(u) + 1.0) / (dd + 1.0);

  const std::vector<cmat> canonical = canonical_kraus(ch);
  const cmat& dominant = canonical.front();
  if (dominant.squaredNorm() < 1e-12) {
    out.degenerate = true;
    out.candidate_unitary = cmat::Identity(d, d);
  } else {
    Eigen::JacobiSVD<cmat> svd(dominant,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.candidate_unitary = svd.matrixU() * svd.matrixV().adjoint();
  }
  out.candidate_fidelity = exact_avg_gate_fidelity(out.candidate_unitary, ch);
  return out;
}

}  // namespace unitarity
