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
#include <cmath>

#include "unitarity/channel.hpp"
#include "unitarity/channels.hpp"
#include "unitarity/sampling.hpp"

using namespace unitarity;

namespace {

PartialDensityOperator pure_state(const cvec& psi) {
  return PartialDensityOperator{cmat(psi * psi.adjoint())};
}

cvec basis_vector(Index d, Index i) {
  cvec v = cvec::Zero(d);
  v(i) = 1.0;
  return v;
}

// Independent evaluation of the Jamiolkowski state straight from its
// definition (E (x) I)(|Phi><Phi|) = (1/d) sum_ij E(|i><j|) (x) |i><j|.
cmat jamiolkowski_by_definition(const KrausChannel& ch) {
  const Index d = ch.dim();
  cmat j = cmat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index jj = 0; jj < d; ++jj) {
      cmat eij = cmat::Zero(d, d);
      for (const cmat& e : ch.kraus()) {
        eij += e.col(i) * e.col(jj).adjoint();  // E |i><j| E^dag
      }
      for (Index a = 0; a < d; ++a) {
        for (Index c = 0; c < d; ++c) {
          j(a * d + i, c * d + jj) += eij(a, c) / static_cast<double>(d);
        }
      }
    }
  }
  return j;
}

}  // namespace

TEST_CASE("validate_channel accepts and rejects per the overlap bound") {
  REQUIRE_NOTHROW(identity_channel(2));

  // Trace-halving channel is fine: sum E^dag E = 0.5 I.
  const KrausChannel half = scaled_identity_channel(0.5, 2);
  REQUIRE(half.max_overlap_eigenvalue() == Catch::Approx(0.5).margin(1e-12));

  // 1.1 I gives sum E^dag E = 1.21 I, not trace-nonincreasing.
  try {
    KrausChannel bad({cmat(1.1 * cmat::Identity(2, 2))}, 2);
    FAIL("expected NotTraceNonincreasing");
  } catch (const NotTraceNonincreasing& e) {
    REQUIRE(e.max_eigenvalue() == Catch::Approx(1.21).margin(1e-9));
  }

  // Wrong operator shape.
  REQUIRE_THROWS_AS(KrausChannel({cmat(cmat::Identity(3, 3))}, 2),
                    DimensionMismatch);

  // The all-zero channel is a valid (fully trace-annihilating) channel.
  REQUIRE_NOTHROW(zero_channel(2));
}

TEST_CASE("apply_channel matches definitions") {
  const auto rho0 = pure_state(basis_vector(2, 0));

  SECTION("identity fixes every state") {
    const auto out = apply_channel(identity_channel(2), rho0);
    REQUIRE((out.matrix - rho0.matrix).cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("completely depolarizing maps any state to tr(rho) I/d") {
    RngStream rng(7, 0);
    for (Index d : {2, 3, 4}) {
      const KrausChannel dep = depolarizing_channel(1.0, d);
      const auto rho = random_partial_state(d, rng);
      const auto out = apply_channel(dep, rho);
      const cmat expected =
          rho.trace() / static_cast<double>(d) * cmat::Identity(d, d);
      REQUIRE((out.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  SECTION("trace-halving channel halves the state") {
    const auto out = apply_channel(scaled_identity_channel(0.5, 2), rho0);
    REQUIRE((out.matrix - 0.5 * rho0.matrix).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE(out.trace() == Catch::Approx(0.5).margin(1e-14));
  }

  SECTION("outputs satisfy partial-density-operator invariants") {
    RngStream rng(8, 0);
    for (int rep = 0; rep < 20; ++rep) {
      const KrausChannel ch = random_channel(3, rng);
      const auto out = apply_channel(ch, random_partial_state(3, rng));
      REQUIRE_NOTHROW(PartialDensityOperator::validated(out.matrix));
    }
  }

  REQUIRE_THROWS_AS(
      apply_channel(identity_channel(2), pure_state(basis_vector(3, 0))),
      DimensionMismatch);
}

TEST_CASE("matrix representation known values and flattening identity") {
  SECTION("identity channel is the d^2 identity") {
    const cmat rep = matrix_representation(identity_channel(2)).matrix;
    REQUIRE((rep - cmat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("unitary channel is U (x) conj(U)") {
    RngStream rng(9, 0);
    const cmat u = haar_unitary(3, rng);
    const cmat rep = matrix_representation(unitary_channel(u)).matrix;
    REQUIRE((rep - kron(u, u.conjugate())).cwiseAbs().maxCoeff() < 1e-13);
  }

  SECTION("depolarizing d=2 collapses to the rank-1 projector on vec(I)") {
    const cmat rep = matrix_representation(depolarizing_channel(1.0, 2)).matrix;
    const cvec vi = vec(cmat(cmat::Identity(2, 2)));
    const cmat expected = 0.5 * (vi * vi.adjoint());
    REQUIRE((rep - expected).cwiseAbs().maxCoeff() < 1e-13);
  }

  SECTION("M(E) vec(rho) = vec(E(rho)) on random inputs") {
    RngStream rng(10, 0);
    for (int rep = 0; rep < 100; ++rep) {
      const Index d = 2 + rep % 3;
      const KrausChannel ch = random_channel(d, rng);
      const auto rho = random_partial_state(d, rng);
      const cvec lhs = ch.matrix_rep() * vec(rho.matrix);
      const cvec rhs = vec(apply_channel(ch, rho).matrix);
      REQUIRE((lhs - rhs).norm() < kAlgTol);
    }
  }
}

TEST_CASE("kraus representation freedom leaves the matrix rep unchanged") {
  RngStream rng(11, 0);
  for (Index d : {2, 3, 4}) {
    const KrausChannel ch = random_channel(d, rng);
    const Index k = static_cast<Index>(ch.kraus().size());
    // Mix the operators with a Haar isometry into a larger list.
    const Index k2 = k + 2;
    Eigen::MatrixXcd mix = haar_isometry(k2, k, rng);
    std::vector<cmat> mixed;
    for (Index a = 0; a < k2; ++a) {
      cmat f = cmat::Zero(d, d);
      for (Index b = 0; b < k; ++b) {
        f += mix(a, b) * ch.kraus()[static_cast<std::size_t>(b)];
      }
      mixed.push_back(std::move(f));
    }
    const KrausChannel ch2(std::move(mixed), d);
    REQUIRE((ch.matrix_rep() - ch2.matrix_rep()).cwiseAbs().maxCoeff() <
            kAlgTol);
  }
}

TEST_CASE("jamiolkowski state known values and consistency") {
  SECTION("identity channel gives the maximally entangled state") {
    const cmat j = jamiolkowski_state(identity_channel(2)).matrix;
    cvec phi = cvec::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    REQUIRE((j - cmat(phi * phi.adjoint())).cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("unitary channels give pure states") {
    RngStream rng(12, 0);
    const KrausChannel ch = unitary_channel(haar_unitary(3, rng));
    const cmat j = jamiolkowski_state(ch).matrix;
    REQUIRE((j * j - j).cwiseAbs().maxCoeff() < 1e-12);  // purity 1
    REQUIRE(j.trace().real() == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("depolarizing d=2 gives the maximally mixed 4x4 state") {
    const cmat j = jamiolkowski_state(depolarizing_channel(1.0, 2)).matrix;
    REQUIRE((j - 0.25 * cmat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
  }

  SECTION("matches the direct definition on random channels") {
    RngStream rng(13, 0);
    for (int rep = 0; rep < 10; ++rep) {
      const Index d = 2 + rep % 3;
      const KrausChannel ch = random_channel(d, rng);
      const cmat a = jamiolkowski_state(ch).matrix;
      const cmat b = jamiolkowski_by_definition(ch);
      REQUIRE((a - b).cwiseAbs().maxCoeff() < kAlgTol);
    }
  }

  SECTION("trace equals the trace-preservation index") {
    RngStream rng(14, 0);
    for (int rep = 0; rep < 20; ++rep) {
      const KrausChannel ch = random_channel(3, rng);
      cmat e_of_i = cmat::Zero(3, 3);
      for (const cmat& e : ch.kraus()) e_of_i += e * e.adjoint();
      const double t = e_of_i.trace().real() / 3.0;
      REQUIRE(jamiolkowski_state(ch).trace() == Catch::Approx(t).margin(kAlgTol));
    }
  }
}

TEST_CASE("block decomposition splits the matrix representation") {
  SECTION("trace-preserving channels have t = 1 and no leakage block") {
    RngStream rng(15, 0);
    for (Index d : {2, 3}) {
      // Random TP channel from a Haar isometry's d x d blocks.
      const Index k = 3;
      Eigen::MatrixXcd iso = haar_isometry(k * d, d, rng);
      std::vector<cmat> kraus;
      for (Index b = 0; b < k; ++b) {
        kraus.push_back(cmat(iso.middleRows(b * d, d)));
      }
      const KrausChannel ch(std::move(kraus), d);
      const BlockDecomposition blocks = block_decomposition(ch);
      REQUIRE(blocks.t == Catch::Approx(1.0).margin(kAlgTol));
      REQUIRE(blocks.sdl2 < kAlgTol);
    }
  }

  SECTION("unitary channel: t=1, sdl2=n2=0, u2=d^2-1") {
    RngStream rng(16, 0);
    const Index d = 4;
    const BlockDecomposition blocks =
        block_decomposition(unitary_channel(haar_unitary(d, rng)));
    REQUIRE(blocks.t == Catch::Approx(1.0).margin(kAlgTol));
    REQUIRE(blocks.sdl2 < kAlgTol);
    REQUIRE(blocks.n2 < kAlgTol);
    REQUIRE(blocks.u2 == Catch::Approx(15.0).margin(kAlgTol));
  }

  SECTION("trace-halving channel: t=0.5, u2=(d^2-1)/4") {
    const BlockDecomposition blocks =
        block_decomposition(scaled_identity_channel(0.5, 2));
    REQUIRE(blocks.t == Catch::Approx(0.5).margin(kAlgTol));
    REQUIRE(blocks.sdl2 < kAlgTol);
    REQUIRE(blocks.n2 < kAlgTol);
    REQUIRE(blocks.u2 == Catch::Approx(0.75).margin(kAlgTol));
  }

  SECTION("block weights add up to the squared Frobenius norm") {
    RngStream rng(17, 0);
    for (int rep = 0; rep < 30; ++rep) {
      const Index d = 2 + rep % 3;
      const KrausChannel ch = random_channel(d, rng);
      const BlockDecomposition b = block_decomposition(ch);
      const double total = ch.matrix_rep().squaredNorm();
      REQUIRE(b.t * b.t + b.sdl2 + b.n2 + b.u2 ==
              Catch::Approx(total).margin(kAlgTol));
      REQUIRE(b.u2 <= static_cast<double>(d * d - 1) + kAlgTol);
    }
  }
}

TEST_CASE("jamiolkowski fidelity") {
  SECTION("identical trace-preserving channels have fidelity 1") {
    const KrausChannel ch = shift_mixture_channel(0.5, 0.5, 3);
    REQUIRE(jamiolkowski_fidelity(ch, ch) == Catch::Approx(1.0).margin(1e-9));
  }

  SECTION("identical trace-decreasing channels have fidelity t") {
    // F(J, J) = tr(J), which is the trace-preservation index.
    RngStream rng(18, 0);
    const KrausChannel ch = random_channel(3, rng);
    const double t = jamiolkowski_state(ch).trace();
    REQUIRE(jamiolkowski_fidelity(ch, ch) == Catch::Approx(t).margin(1e-9));
  }

  SECTION("shift-mixture pair follows the closed form") {
    const double a = 2.0 / 3.0, b = 1.0 / 3.0;
    for (double eps : {0.01, 0.05, 1.0 / 12.0}) {
      for (Index d : {2, 4}) {
        const KrausChannel e1 = shift_mixture_channel(a, b, d);
        const KrausChannel e2 = shift_mixture_channel(a + eps, b - eps, d);
        const double expected =
            std::sqrt(a * (a + eps)) + std::sqrt(b * (b - eps));
        REQUIRE(jamiolkowski_fidelity(e1, e2) ==
                Catch::Approx(expected).margin(1e-10));
      }
    }
  }

  REQUIRE_THROWS_AS(
      jamiolkowski_fidelity(identity_channel(2), identity_channel(3)),
      DimensionMismatch);
}

TEST_CASE("partial density operator validation") {
  cmat ok = cmat::Zero(2, 2);
  ok(0, 0) = 0.6;
  ok(1, 1) = 0.3;
  REQUIRE_NOTHROW(PartialDensityOperator::validated(ok));

  cmat not_herm = ok;
  not_herm(0, 1) = 0.5;
  REQUIRE_THROWS_AS(PartialDensityOperator::validated(not_herm),
                    ValidationError);

  cmat negative = cmat::Zero(2, 2);
  negative(0, 0) = 0.5;
  negative(1, 1) = -0.2;
  REQUIRE_THROWS_AS(PartialDensityOperator::validated(negative),
                    ValidationError);

  cmat heavy = 1.5 * cmat::Identity(2, 2);
  REQUIRE_THROWS_AS(PartialDensityOperator::validated(heavy), ValidationError);
}
