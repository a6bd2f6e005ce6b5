// Copyright 2026 The pfg Authors.
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

#ifndef PFG_RANDOM_HPP
#define PFG_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pfg/rational.hpp"

namespace pfg {

/// splitmix64 finalizer; used to derive independent per-cell seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t h = mix_seed(seed);
  h = mix_seed(h ^ a);
  h = mix_seed(h ^ b);
  return mix_seed(h ^ c);
}

/// Seeded source of exact rational draws. mt19937_64 output is fully
/// specified by the standard, so draws are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits53() { return engine_() >> 11; }

  /// Uniform on [0, 1) with denominator 2^53.
  Rational unit() { return Rational(Integer(bits53()), Integer(1) << 53); }

  /// Uniform on [a, b].
  Rational between(const Rational& a, const Rational& b) { return a + (b - a) * unit(); }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return engine_() % den < num; }

  /// Uniform point of the (d-1)-simplex from the spacings of d-1 sorted
  /// uniform draws; the coordinates sum to exactly 1.
  std::vector<Rational> simplex(std::size_t d) {
    std::vector<std::uint64_t> cuts;
    for (std::size_t i = 0; i + 1 < d; ++i) cuts.push_back(bits53());
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> out;
    const Integer scale = Integer(1) << 53;
    std::uint64_t prev = 0;
    for (std::uint64_t c : cuts) {
      out.emplace_back(Integer(c - prev), scale);
      prev = c;
    }
    out.emplace_back(scale - Integer(prev), scale);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pfg

#endif  // PFG_RANDOM_HPP
