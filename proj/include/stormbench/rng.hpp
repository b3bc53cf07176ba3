// Copyright 2026 the StormBench authors
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

#ifndef STORMBENCH_RNG_HPP_
#define STORMBENCH_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace stormbench {

// Standard library distributions are implementation-defined, so every random
// draw in the toolkit goes through this self-contained generator. Outputs are
// bit-stable across platforms, which is what makes golden checksums and
// order-independent parallel fan-out possible.

/// splitmix64 step (Steele, Lea, Flood 2014 finalizer constants).
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// FNV-1a 64-bit string hash, used to fold sequence ids into seeds.
inline std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// The documented 64-bit mix function: folds an extra word into a seed so
/// that per-frame (and per-point) streams are independent of processing
/// order. derive(derive(g, a), b) != derive(derive(g, b), a) in general,
/// so callers must fold words in a fixed documented order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word) noexcept {
  std::uint64_t state = seed ^ (0xA0761D6478BD642FULL + word);
  std::uint64_t mixed = splitmix64(state);
  return mixed ^ word;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view word) noexcept {
  return derive_seed(seed, fnv1a64(word));
}

/// Deterministic PRNG over a splitmix64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept { return splitmix64(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer in [0, n). Unbiased via rejection.
  std::uint64_t uniform_index(std::uint64_t n) noexcept {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Poisson count via Knuth's multiplication method. For a fixed uniform
  /// stream the count is non-decreasing in lambda, which the weather model
  /// relies on for severity monotonicity.
  int poisson(double lambda) noexcept {
    if (lambda <= 0.0) return 0;
    const double threshold = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      p *= uniform();
      ++k;
    } while (p > threshold);
    return k - 1;
  }

  /// Independent child stream; `word` distinguishes siblings.
  Rng fork(std::uint64_t word) const noexcept {
    return Rng(derive_seed(state_, word));
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stormbench

#endif  // STORMBENCH_RNG_HPP_
