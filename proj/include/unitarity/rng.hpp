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
#include <complex>
#include <cstdint>
#include <cstdlib>

namespace unitarity {

namespace detail {

// SplitMix64 finalizer; full-period bijective mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Ziggurat tables for the standard normal (256 layers, Marsaglia-Tsang
// construction). Built once at first use.
struct ZigguratTables {
  static constexpr int kLayers = 256;
  // Rightmost abscissa for 256 layers.
  static constexpr double kR = 3.654152885361008772;
  double w[kLayers];
  double f[kLayers];
  std::uint64_t k[kLayers];
  double r;
  double inv_r;

  ZigguratTables() {
    constexpr double m1 = 9007199254740992.0 / 4.0;  // 2^51
    r = kR;
    inv_r = 1.0 / kR;
    const double f_r = std::exp(-0.5 * kR * kR);
    // Area per layer: rectangle at the base plus the unnormalized Gaussian
    // tail, sqrt(pi/2) erfc(r/sqrt(2)).
    const double v =
        kR * f_r + std::sqrt(1.5707963267948966) * std::erfc(kR / std::sqrt(2.0));
    double dn = kR;
    double tn = kR;
    const double q = v / f_r;
    k[0] = static_cast<std::uint64_t>((dn / q) * m1);
    k[1] = 0;
    w[0] = q / m1;
    w[kLayers - 1] = dn / m1;
    f[0] = 1.0;
    f[kLayers - 1] = f_r;
    for (int i = kLayers - 2; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(v / dn + std::exp(-0.5 * dn * dn)));
      k[i + 1] = static_cast<std::uint64_t>((dn / tn) * m1);
      tn = dn;
      f[i] = std::exp(-0.5 * dn * dn);
      w[i] = dn / m1;
    }
    // The construction closes at the top layer; if it does not, the layer
    // constants above are wrong.
    const double x1 = tn;
    const double closure = x1 * (1.0 - std::exp(-0.5 * x1 * x1));
    if (std::abs(closure - v) > 1e-10) std::abort();
  }
};

inline const ZigguratTables& ziggurat() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace detail

/// Counter-based, splittable random stream. The same (seed, stream-id)
/// reproduces the identical outcome sequence regardless of what other streams
/// do, so concurrent estimation rounds stay schedule-independent. Distinct
/// stream-ids give statistically independent sequences.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_(stream_id) {
    key_ = detail::mix64(detail::mix64(seed + detail::kGolden) ^
                         detail::mix64(stream_id + 0xD1B54A32D192ED03ULL));
  }

  /// Child stream keyed by (this stream, substream). Used to give each
  /// estimation round / basis setting its own independent stream.
  RngStream derive(std::uint64_t substream) const {
    return RngStream(seed_, detail::mix64(stream_ ^ (0xA24BAED4963EE407ULL +
                                                     detail::mix64(substream))));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    counter_ += detail::kGolden;
    return detail::mix64(key_ + counter_);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe to feed into log().
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via a 256-layer ziggurat.
  double normal() {
    const auto& zig = detail::ziggurat();
    for (;;) {
      const std::uint64_t u = next_u64();
      const int iz = static_cast<int>(u & 255u);
      const std::int64_t hz =
          static_cast<std::int64_t>(u >> 12) - (std::int64_t{1} << 51);
      const std::uint64_t ahz =
          static_cast<std::uint64_t>(hz < 0 ? -hz : hz);
      if (ahz < zig.k[iz]) return static_cast<double>(hz) * zig.w[iz];
      if (iz == 0) {
        // Tail beyond r: Marsaglia's exponential wedge method.
        double x, y;
        do {
          x = -std::log(uniform_pos()) * zig.inv_r;
          y = -std::log(uniform_pos());
        } while (y + y < x * x);
        return hz > 0 ? zig.r + x : -(zig.r + x);
      }
      const double x = static_cast<double>(hz) * zig.w[iz];
      if (zig.f[iz] + uniform() * (zig.f[iz - 1] - zig.f[iz]) <
          std::exp(-0.5 * x * x)) {
        return x;
      }
    }
  }

  /// Complex Gaussian with independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace unitarity
