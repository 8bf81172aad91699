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
#include <map>
#include <string>
#include <vector>

#include "unitarity/channel.hpp"
#include "unitarity/sampling.hpp"

namespace unitarity {

inline KrausChannel identity_channel(Index d) {
  return KrausChannel({cmat(cmat::Identity(d, d))}, d);
}

/// rho -> c * rho for c in [0, 1]; trace-decreasing for c < 1.
inline KrausChannel scaled_identity_channel(double c, Index d) {
  if (c < 0.0 || c > 1.0) {
    throw BadParams("scaled_identity: c must lie in [0, 1]");
  }
  return KrausChannel({cmat(std::sqrt(c) * cmat::Identity(d, d))}, d);
}

/// The channel that maps every state to zero. A single zero Kraus operator
/// keeps the operator list nonempty; 0 <= I so validation accepts it.
inline KrausChannel zero_channel(Index d) {
  return KrausChannel({cmat(cmat::Zero(d, d))}, d);
}

/// rho -> (1-q) rho + q tr(rho) I/d. q = 1 is the completely depolarizing
/// channel; its Kraus set is {|i><j| / sqrt(d)}.
inline KrausChannel depolarizing_channel(double q, Index d) {
  if (q < 0.0 || q > 1.0) {
    throw BadParams("depolarizing: q must lie in [0, 1]");
  }
  std::vector<cmat> kraus;
  kraus.reserve(static_cast<std::size_t>(d) * d + 1);
  if (q < 1.0) {
    kraus.push_back(std::sqrt(1.0 - q) * cmat::Identity(d, d));
  }
  const double w = std::sqrt(q / static_cast<double>(d));
  if (q > 0.0) {
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        cmat e = cmat::Zero(d, d);
        e(i, j) = w;
        kraus.push_back(std::move(e));
      }
    }
  }
  return KrausChannel(std::move(kraus), d);
}

/// rho -> (1-q) rho + q diag(rho); kills off-diagonal coherences.
inline KrausChannel dephasing_channel(double q, Index d) {
  if (q < 0.0 || q > 1.0) {
    throw BadParams("dephasing: q must lie in [0, 1]");
  }
  std::vector<cmat> kraus;
  if (q < 1.0) {
    kraus.push_back(std::sqrt(1.0 - q) * cmat::Identity(d, d));
  }
  if (q > 0.0) {
    for (Index i = 0; i < d; ++i) {
      cmat e = cmat::Zero(d, d);
      e(i, i) = std::sqrt(q);
      kraus.push_back(std::move(e));
    }
  }
  return KrausChannel(std::move(kraus), d);
}

/// Decay of every excited level straight to the ground state with rate gamma.
/// For d = 2 this is the standard amplitude damping channel.
inline KrausChannel amplitude_damping_channel(double gamma, Index d) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw BadParams("amplitude_damping: gamma must lie in [0, 1]");
  }
  std::vector<cmat> kraus;
  cmat k0 = cmat::Identity(d, d);
  for (Index i = 1; i < d; ++i) k0(i, i) = std::sqrt(1.0 - gamma);
  kraus.push_back(std::move(k0));
  for (Index i = 1; i < d; ++i) {
    cmat e = cmat::Zero(d, d);
    e(0, i) = std::sqrt(gamma);
    kraus.push_back(std::move(e));
  }
  return KrausChannel(std::move(kraus), d);
}

/// Cyclic shift |i> -> |i+1 mod d>.
inline cmat cyclic_shift(Index d) {
  cmat x = cmat::Zero(d, d);
  for (Index i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

/// rho -> a rho + b X rho X^dag with X the cyclic shift. Requires a, b >= 0
/// and a + b <= 1; a + b < 1 gives a trace-decreasing channel.
inline KrausChannel shift_mixture_channel(double a, double b, Index d) {
  if (a < 0.0 || b < 0.0 || a + b > 1.0 + kPsdTol) {
    throw BadParams("shift_mixture: need a, b >= 0 and a + b <= 1");
  }
  std::vector<cmat> kraus;
  kraus.push_back(std::sqrt(a) * cmat::Identity(d, d));
  kraus.push_back(std::sqrt(b) * cyclic_shift(d));
  return KrausChannel(std::move(kraus), d);
}

inline KrausChannel unitary_channel(cmat u) {
  const Index d = u.rows();
  return KrausChannel({std::move(u)}, d);
}

inline KrausChannel random_unitary_channel(std::uint64_t seed, Index d) {
  RngStream rng(seed, 0x52554e49u);  // fixed builtin stream tag
  return unitary_channel(haar_unitary(d, rng));
}

/// Builds a named channel. Recognized names: identity, depolarizing(q),
/// dephasing(q), amplitude_damping(gamma), shift_mixture(a, b),
/// random_unitary(seed), scaled_identity(c), zero.
inline KrausChannel builtin_channel(const std::string& name,
                                    const std::map<std::string, double>& params,
                                    Index d) {
  auto param = [&](const std::string& key, double fallback,
                   bool required = false) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (required) throw BadParams("builtin '" + name + "' needs param " + key);
      return fallback;
    }
    return it->second;
  };
  auto known = [&](std::initializer_list<const char*> keys) {
    for (const auto& kv : params) {
      bool ok = false;
      for (const char* k : keys) ok = ok || kv.first == k;
      if (!ok) throw BadParams("builtin '" + name + "': unknown param " + kv.first);
    }
  };

  if (name == "identity") {
    known({});
    return identity_channel(d);
  }
  if (name == "depolarizing") {
    known({"q"});
    return depolarizing_channel(param("q", 1.0), d);
  }
  if (name == "dephasing") {
    known({"q"});
    return dephasing_channel(param("q", 1.0), d);
  }
  if (name == "amplitude_damping") {
    known({"gamma"});
    return amplitude_damping_channel(param("gamma", 0.0, true), d);
  }
  if (name == "shift_mixture") {
    known({"a", "b"});
    return shift_mixture_channel(param("a", 2.0 / 3.0), param("b", 1.0 / 3.0), d);
  }
  if (name == "random_unitary") {
    known({"seed"});
    return random_unitary_channel(
        static_cast<std::uint64_t>(param("seed", 0.0)), d);
  }
  if (name == "scaled_identity") {
    known({"c"});
    return scaled_identity_channel(param("c", 1.0, true), d);
  }
  if (name == "zero") {
    known({});
    return zero_channel(d);
  }
  throw UnknownBuiltin("unknown builtin channel '" + name + "'");
}

}  // namespace unitarity
