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

// Internal representation of channel outputs that keeps analytic measurement
// sampling cheap. A state rho = F F^dag with r factor columns needs only the
// Haar image of its r-dimensional frame to reproduce the exact joint law of
// rotated-basis outcomes, so a basis setting costs O(d r^2) instead of a full
// d x d Haar sample. Scalar states (rho proportional to I) are
// rotation-invariant and need no basis sample at all.

#include <algorithm>
#include <cmath>
#include <vector>

#include "unitarity/channel.hpp"
#include "unitarity/sampling.hpp"

namespace unitarity {
namespace detail {

struct OutputEnsemble {
  Index dim = 0;
  double trace = 0.0;
  bool scalar = false;        // rho = scalar_value * I
  double scalar_value = 0.0;
  Eigen::MatrixXcd factors;   // rho = factors factors^dag; empty when scalar

  bool is_zero() const { return !scalar && factors.cols() == 0; }
};

inline void haar_isometry_into(Eigen::MatrixXcd& s, RngStream& rng) {
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < s.rows(); ++i) s(i, j) = rng.complex_normal();
  }
  mgs_orthonormalize(s);
}

/// Orthonormal basis of the column space, dropping (near-)dependent columns.
/// Kraus images can be linearly dependent (amplitude damping sends every
/// excited level onto |0>), so plain Gram-Schmidt without dropping would
/// divide by zero.
inline Eigen::MatrixXcd orthonormal_frame(const Eigen::MatrixXcd& cols) {
  const Index d = cols.rows();
  const Index n = cols.cols();
  Eigen::MatrixXcd frame(d, std::min(n, d));
  Index r = 0;
  for (Index j = 0; j < n && r < d; ++j) {
    Eigen::VectorXcd col = cols.col(j);
    const double orig = col.norm();
    if (orig <= 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < r; ++i) {
        col -= frame.col(i) * frame.col(i).dot(col);
      }
    }
    const double resid = col.norm();
    if (resid > 1e-12 * orig) {
      frame.col(r++) = col / resid;
    }
  }
  frame.conservativeResize(d, r);
  return frame;
}

/// Factored form of a dense partial density operator: scalar detection first,
/// then an eigendecomposition keeping strictly positive modes.
inline OutputEnsemble ensemble_from_density(const cmat& rho) {
  const Index d = rho.rows();
  OutputEnsemble out;
  out.dim = d;
  out.trace = rho.trace().real();
  const double scale = std::max(1.0, std::abs(out.trace));
  cmat residual = rho;
  residual.diagonal().array() -= out.trace / static_cast<double>(d);
  if (residual.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    out.scalar = true;
    out.scalar_value = std::max(0.0, out.trace / static_cast<double>(d));
    out.trace = out.scalar_value * static_cast<double>(d);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (rho + cmat(rho.adjoint())));
  const rvec lam = es.eigenvalues();
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  Index r = 0;
  for (Index i = 0; i < d; ++i) {
    if (lam(i) > 1e-14 * std::max(lam_max, 1e-300)) ++r;
  }
  out.factors.resize(d, r);
  Index c = 0;
  for (Index i = 0; i < d; ++i) {
    if (lam(i) > 1e-14 * std::max(lam_max, 1e-300)) {
      out.factors.col(c++) = es.eigenvectors().col(i) * std::sqrt(lam(i));
    }
  }
  out.trace = out.factors.squaredNorm();
  return out;
}

/// Channel output on a pure input |psi>. Channels with at most d Kraus
/// operators keep the factor columns E_i |psi> directly; larger Kraus sets go
/// through the cached matrix representation and are re-factored.
inline OutputEnsemble prepare_output(const KrausChannel& ch,
                                     const Eigen::VectorXcd& psi) {
  const Index d = ch.dim();
  const auto& kraus = ch.kraus();
  if (static_cast<Index>(kraus.size()) <= d) {
    OutputEnsemble out;
    out.dim = d;
    Eigen::MatrixXcd f(d, static_cast<Index>(kraus.size()));
    Index cols = 0;
    double tr = 0.0;
    for (const cmat& e : kraus) {
      Eigen::VectorXcd w = e * psi;
      const double n2 = w.squaredNorm();
      if (n2 > 0.0) {
        f.col(cols++) = w;
        tr += n2;
      }
    }
    out.factors = f.leftCols(cols);
    out.trace = tr;
    return out;
  }
  const cmat& rep = ch.matrix_rep();
  cvec v(d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) v(i * d + j) = psi(i) * std::conj(psi(j));
  }
  return ensemble_from_density(unvec(rep * v, d, d));
}

/// tr(rho sigma) from ensemble forms.
inline double inner_product_trace(const OutputEnsemble& a,
                                  const OutputEnsemble& b) {
  if (a.scalar && b.scalar) {
    return a.scalar_value * b.scalar_value * static_cast<double>(a.dim);
  }
  if (a.scalar) return a.scalar_value * b.trace;
  if (b.scalar) return b.scalar_value * a.trace;
  return (a.factors.adjoint() * b.factors).squaredNorm();
}

/// The state U rho U^dag for a fresh Haar U, marginalized exactly: the frame
/// of rho is replaced by a Haar-random frame of the same rank carrying the
/// same coefficients.
inline OutputEnsemble rotate_haar(const OutputEnsemble& state, RngStream& rng) {
  if (state.scalar || state.is_zero()) return state;
  const Eigen::MatrixXcd frame = orthonormal_frame(state.factors);
  const Eigen::MatrixXcd coeff = frame.adjoint() * state.factors;
  Eigen::MatrixXcd s(state.dim, frame.cols());
  haar_isometry_into(s, rng);
  OutputEnsemble out = state;
  out.factors = s * coeff;
  return out;
}

/// Joint sampler for the rotated-basis outcome distributions of two states
/// measured in the same Haar-random basis. Builds the combined orthonormal
/// frame of both factor sets once; each basis setting then samples the Haar
/// image of that frame only.
class JointRotatedSampler {
 public:
  JointRotatedSampler(const OutputEnsemble& a, const OutputEnsemble& b)
      : dim_(a.dim), a_(&a), b_(&b) {
    Eigen::MatrixXcd pool(dim_, (a.scalar ? 0 : a.factors.cols()) +
                                    (b.scalar ? 0 : b.factors.cols()));
    Index n = 0;
    if (!a.scalar) {
      pool.middleCols(n, a.factors.cols()) = a.factors;
      n += a.factors.cols();
    }
    if (!b.scalar) {
      pool.middleCols(n, b.factors.cols()) = b.factors;
      n += b.factors.cols();
    }
    frame_ = orthonormal_frame(pool);
    if (!a.scalar && a.factors.cols() > 0) {
      coeff_a_ = frame_.adjoint() * a.factors;
      rotated_a_.resize(dim_, coeff_a_.cols());
    }
    if (!b.scalar && b.factors.cols() > 0) {
      coeff_b_ = frame_.adjoint() * b.factors;
      rotated_b_.resize(dim_, coeff_b_.cols());
    }
    image_.resize(dim_, frame_.cols());
  }

  /// Fills the unnormalized outcome weights of both states for one shared
  /// basis setting. Weights sum to the state traces; the deficit from 1 is
  /// the failure probability.
  void sample_setting(RngStream& rng, std::vector<double>& p,
                      std::vector<double>& q) {
    p.assign(static_cast<std::size_t>(dim_), 0.0);
    q.assign(static_cast<std::size_t>(dim_), 0.0);
    if (frame_.cols() > 0) {
      haar_isometry_into(image_, rng);
    }
    fill_weights(*a_, coeff_a_, rotated_a_, p);
    fill_weights(*b_, coeff_b_, rotated_b_, q);
  }

  Index frame_rank() const { return frame_.cols(); }

 private:
  void fill_weights(const OutputEnsemble& state, const Eigen::MatrixXcd& coeff,
                    Eigen::MatrixXcd& rotated, std::vector<double>& w) {
    if (state.scalar) {
      std::fill(w.begin(), w.end(), std::clamp(state.scalar_value, 0.0, 1.0));
      return;
    }
    if (coeff.cols() == 0) return;  // zero state: every outcome fails
    rotated.noalias() = image_ * coeff;
    for (Index bidx = 0; bidx < dim_; ++bidx) {
      w[static_cast<std::size_t>(bidx)] =
          std::clamp(rotated.row(bidx).squaredNorm(), 0.0, 1.0);
    }
  }

  Index dim_;
  const OutputEnsemble* a_;
  const OutputEnsemble* b_;
  Eigen::MatrixXcd frame_;
  Eigen::MatrixXcd coeff_a_;
  Eigen::MatrixXcd coeff_b_;
  Eigen::MatrixXcd image_;
  Eigen::MatrixXcd rotated_a_;
  Eigen::MatrixXcd rotated_b_;
};

}  // namespace detail
}  // namespace unitarity
