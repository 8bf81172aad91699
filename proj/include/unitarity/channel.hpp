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

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "unitarity/errors.hpp"
#include "unitarity/linalg.hpp"

namespace unitarity {

/// Positive operator with trace <= 1. Outputs of channels that are not
/// trace-preserving have trace below 1; the missing mass is the probability
/// of a failure outcome when the state is measured.
struct PartialDensityOperator {
  cmat matrix;

  Index dim() const { return matrix.rows(); }
  double trace() const { return matrix.trace().real(); }

  /// Checked construction for user-supplied matrices: Hermitian within
  /// tau_herm, eigenvalues >= -tau_psd, trace in [0, 1 + tau_psd].
  static PartialDensityOperator validated(cmat m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw DimensionMismatch("partial density operator must be square");
    }
    if (!is_hermitian(m, kHermTol)) {
      throw ValidationError("partial density operator is not Hermitian");
    }
    const rvec lam = hermitian_eigenvalues(0.5 * (m + cmat(m.adjoint())));
    if (lam.minCoeff() < -kPsdTol) {
      throw ValidationError("partial density operator has eigenvalue " +
                            std::to_string(lam.minCoeff()));
    }
    const double tr = m.trace().real();
    if (tr < -static_cast<double>(m.rows()) * kPsdTol || tr > 1.0 + kPsdTol) {
      throw ValidationError("partial density operator has trace " +
                            std::to_string(tr));
    }
    return PartialDensityOperator{std::move(m)};
  }
};

/// Matrix representation of a channel: the d^2 x d^2 matrix
/// sum_i E_i (x) conj(E_i) acting on row-major vectorized operators.
struct ChannelMatrixRep {
  Index dim = 0;
  cmat matrix;
};

/// Frobenius weights of the channel's matrix representation split against the
/// rank-1 projector onto the normalized identity |I/sqrt(d)>>:
///   t    — trace-preservation index  <<I/sqrt(d)| M |I/sqrt(d)>>
///   sdl2 — squared norm of the state-dependent-leakage block P0 M P1
///   n2   — squared norm of the nonunital block P1 M P0
///   u2   — squared norm of the unital block P1 M P1
struct BlockDecomposition {
  double t = 0.0;
  double sdl2 = 0.0;
  double n2 = 0.0;
  double u2 = 0.0;
};

/// A completely positive, trace-nonincreasing map given by Kraus operators,
/// rho -> sum_i E_i rho E_i^dag with sum_i E_i^dag E_i <= I.
///
/// Immutable after construction; safe to share across concurrent workers.
class KrausChannel {
 public:
  /// Validates shapes and the trace-nonincreasing condition. Throws
  /// DimensionMismatch or NotTraceNonincreasing. The all-zero channel is
  /// accepted (0 <= I); downstream code must tolerate t = 0.
  KrausChannel(std::vector<cmat> kraus, Index dim)
      : dim_(dim), kraus_(std::move(kraus)), cache_(std::make_shared<RepCache>()) {
    if (dim_ < 2) {
      throw DimensionTooSmall("channel dimension must be at least 2");
    }
    if (kraus_.empty()) {
      throw ValidationError("channel needs at least one Kraus operator");
    }
    cmat overlap = cmat::Zero(dim_, dim_);
    for (const cmat& e : kraus_) {
      if (e.rows() != dim_ || e.cols() != dim_) {
        throw DimensionMismatch("Kraus operator is not " + std::to_string(dim_) +
                                "x" + std::to_string(dim_));
      }
      if (!e.allFinite()) {
        throw ValidationError("Kraus operator has non-finite entries");
      }
      overlap += e.adjoint() * e;
    }
    max_overlap_eigenvalue_ = hermitian_eigenvalues(overlap).maxCoeff();
    if (max_overlap_eigenvalue_ > 1.0 + kPsdTol) {
      throw NotTraceNonincreasing(
          "sum E_i^dag E_i has eigenvalue " +
              std::to_string(max_overlap_eigenvalue_) +
              " (exceeds 1 by " + std::to_string(max_overlap_eigenvalue_ - 1.0) +
              "); channel is not trace-nonincreasing",
          max_overlap_eigenvalue_);
    }
  }

  Index dim() const { return dim_; }
  const std::vector<cmat>& kraus() const { return kraus_; }

  /// Largest eigenvalue of sum_i E_i^dag E_i recorded at validation.
  double max_overlap_eigenvalue() const { return max_overlap_eigenvalue_; }

  /// Cached d^2 x d^2 matrix representation; built on first use (thread-safe).
  const cmat& matrix_rep() const {
    std::call_once(cache_->built, [this] {
      cmat rep = cmat::Zero(dim_ * dim_, dim_ * dim_);
      for (const cmat& e : kraus_) {
        rep += kron(e, e.conjugate());
      }
      cache_->rep = std::move(rep);
    });
    return cache_->rep;
  }

 private:
  struct RepCache {
    std::once_flag built;
    cmat rep;
  };

  Index dim_;
  std::vector<cmat> kraus_;
  double max_overlap_eigenvalue_ = 0.0;
  std::shared_ptr<RepCache> cache_;
};

inline KrausChannel validate_channel(std::vector<cmat> kraus, Index dim) {
  return KrausChannel(std::move(kraus), dim);
}

/// rho -> sum_i E_i rho E_i^dag.
inline PartialDensityOperator apply_channel(const KrausChannel& ch,
                                            const PartialDensityOperator& rho) {
  if (rho.dim() != ch.dim()) {
    throw DimensionMismatch("state dimension does not match channel");
  }
  cmat out = cmat::Zero(ch.dim(), ch.dim());
  for (const cmat& e : ch.kraus()) {
    out += e * rho.matrix * e.adjoint();
  }
  return PartialDensityOperator{std::move(out)};
}

inline ChannelMatrixRep matrix_representation(const KrausChannel& ch) {
  return ChannelMatrixRep{ch.dim(), ch.matrix_rep()};
}

/// (E (x) I) applied to the maximally entangled state; equals
/// (1/d) sum_i |E_i>><<E_i| in vectorized form. Its trace is the
/// trace-preservation index of the channel.
inline PartialDensityOperator jamiolkowski_state(const KrausChannel& ch) {
  const Index d = ch.dim();
  cmat j = cmat::Zero(d * d, d * d);
  for (const cmat& e : ch.kraus()) {
    const cvec v = vec(e);
    j.noalias() += v * v.adjoint();
  }
  j /= static_cast<double>(d);
  return PartialDensityOperator{std::move(j)};
}

/// Splits the matrix representation against P0 = |I/sqrt(d)>><<I/sqrt(d)| and
/// P1 = I - P0, without constructing a traceless operator basis.
inline BlockDecomposition block_decomposition(const KrausChannel& ch) {
  const Index d = ch.dim();
  const cmat& rep = ch.matrix_rep();
  cvec v0 = vec(cmat(cmat::Identity(d, d)));
  v0 /= std::sqrt(static_cast<double>(d));

  const cvec rep_v0 = rep * v0;        // M |I0>>
  const cvec rep_dag_v0 = rep.adjoint() * v0;  // M^dag |I0>>

  BlockDecomposition blocks;
  blocks.t = (v0.adjoint() * rep_v0)(0).real();
  blocks.n2 = std::max(0.0, rep_v0.squaredNorm() - blocks.t * blocks.t);
  blocks.sdl2 = std::max(0.0, rep_dag_v0.squaredNorm() - blocks.t * blocks.t);

  // Materialize P1 M P1 so its Frobenius weight is measured directly rather
  // than inferred by subtraction.
  cmat unital = rep;
  unital.noalias() -= v0 * rep_dag_v0.adjoint();
  unital.noalias() -= rep_v0 * v0.adjoint();
  unital.noalias() += blocks.t * (v0 * v0.adjoint());
  blocks.u2 = unital.squaredNorm();
  return blocks;
}

/// Uhlmann fidelity of the Jamiolkowski states of two channels.
inline double jamiolkowski_fidelity(const KrausChannel& ch1,
                                    const KrausChannel& ch2) {
  if (ch1.dim() != ch2.dim()) {
    throw DimensionMismatch("jamiolkowski_fidelity: channel dims differ");
  }
  return state_fidelity(jamiolkowski_state(ch1).matrix,
                        jamiolkowski_state(ch2).matrix);
}

}  // namespace unitarity
