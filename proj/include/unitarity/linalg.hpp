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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <cstdint>

#include "unitarity/errors.hpp"

namespace unitarity {

using complex_t = std::complex<double>;

// Row-major storage so that vec() below is a plain memory flattening and the
// convention vec(A B C^dag) = (A (x) conj(C)) vec(B) holds.
using cmat =
    Eigen::Matrix<complex_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerances. Exact algebraic identities at desk-scale dimensions get the
// tight tolerance; user-supplied matrices may be rounded and get the loose
// ones.
inline constexpr double kAlgTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kHermTol = 1e-9;

/// Row-major flattening of a matrix into a vector.
inline cvec vec(const cmat& a) {
  return Eigen::Map<const cvec>(a.data(), a.size());
}

/// Inverse of vec(): reshape a length rows*cols vector into a matrix.
inline cmat unvec(const cvec& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionMismatch("unvec: size mismatch");
  }
  return Eigen::Map<const cmat>(v.data(), rows, cols);
}

/// Kronecker product a (x) b.
inline cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline cmat dagger(const cmat& a) { return a.adjoint(); }

inline double frobenius_norm2(const cmat& a) { return a.squaredNorm(); }

inline bool is_hermitian(const cmat& a, double tol = kHermTol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Real eigenvalues of a (numerically) Hermitian matrix, ascending.
inline rvec hermitian_eigenvalues(const cmat& a) {
  Eigen::SelfAdjointEigenSolver<cmat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// PSD square root with eigenvalue clamping at zero, so that numerical
/// negatives of order 1e-14 do not produce NaN.
inline cmat psd_sqrt(const cmat& a) {
  Eigen::SelfAdjointEigenSolver<cmat> es(a);
  rvec lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Uhlmann fidelity F(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)),
/// clamping small negative eigenvalues to zero.
///
/// Evaluated on the support of rho: the nonzero spectrum of
/// sqrt(rho) sigma sqrt(rho) equals that of W^dag sigma W with
/// W = V sqrt(Lambda) over the retained eigenpairs of rho. Dropping the
/// null modes before the square root keeps their rounding noise from being
/// amplified by it.
inline double state_fidelity(const cmat& rho, const cmat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionMismatch("state_fidelity: dimension mismatch");
  }
  const Index d = rho.rows();
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (rho + cmat(rho.adjoint())));
  const rvec lam = es.eigenvalues();
  const double lam_max = lam.maxCoeff();
  if (lam_max <= 0.0) return 0.0;
  const double cutoff = lam_max * 1e-12;
  Index r = 0;
  for (Index i = 0; i < d; ++i) {
    if (lam(i) > cutoff) ++r;
  }
  cmat w(d, r);
  Index c = 0;
  for (Index i = 0; i < d; ++i) {
    if (lam(i) > cutoff) w.col(c++) = es.eigenvectors().col(i) * std::sqrt(lam(i));
  }
  cmat core = w.adjoint() * sigma * w;
  core = 0.5 * (core + cmat(core.adjoint()));
  const rvec mu = hermitian_eigenvalues(core).cwiseMax(0.0);
  return mu.cwiseSqrt().sum();
}

}  // namespace unitarity
