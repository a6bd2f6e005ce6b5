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

#ifndef PFG_GENERATORS_HPP
#define PFG_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pfg/errors.hpp"
#include "pfg/game.hpp"
#include "pfg/partitions.hpp"
#include "pfg/random.hpp"
#include "pfg/rational.hpp"

namespace pfg {

inline constexpr int kMaxRandomGameN = 8;

struct CournotParams {
  Rational margin = 1;  // a - c
  Rational slope = 1;   // b
};

/// Linear Cournot oligopoly: each coalition acts as one firm, so a coalition
/// in a partition with m blocks earns margin^2 / (slope (m+1)^2).
inline SymmetricGame cournot_game(const CournotParams& p, int n) {
  if (p.margin <= 0 || p.slope <= 0) throw ArgumentError("Cournot margin and slope must be positive");
  if (n < 1) throw ArgumentError("Cournot game needs n >= 1");
  return SymmetricGame::from_function(n, [&](int, const Shape& out) {
    const int m = 1 + out.size();
    return p.margin * p.margin / (p.slope * (m + 1) * (m + 1));
  });
}

inline GameFamily cournot_family(const CournotParams& p, int n_min, int n_max) {
  std::map<int, SymmetricGame> games;
  for (int n = n_min; n <= n_max; ++n) games.emplace(n, cournot_game(p, n));
  return GameFamily(std::move(games));
}

struct NegFamilyParams {
  Rational epsilon = make_rational(1, 10);
};

/// worth(s, out) = (s/n)^2 (1 + epsilon (m - 1)) with m the total block
/// count. Rejected unless the grand coalition is efficient.
inline SymmetricGame neg_family_game(const NegFamilyParams& p, int n) {
  if (p.epsilon <= 0 || p.epsilon >= 1) throw ArgumentError("epsilon must lie in (0, 1)");
  if (n < 1) throw ArgumentError("negative family needs n >= 1");
  auto g = SymmetricGame::from_function(n, [&](int s, const Shape& out) {
    const int m = 1 + out.size();
    Rational share = Rational(s) / n;
    return share * share * (1 + p.epsilon * (m - 1));
  });
  auto eff = is_efficient(g);
  if (!eff.efficient) {
    throw ArgumentError("epsilon = " + to_string(p.epsilon) + " breaks efficiency at n = " +
                        std::to_string(n) + ": shape " + eff.violating->str() + " totals " +
                        to_string(eff.violating_total));
  }
  return g;
}

inline GameFamily neg_family(const NegFamilyParams& p, int n_min, int n_max) {
  std::map<int, SymmetricGame> games;
  for (int n = n_min; n <= n_max; ++n) games.emplace(n, neg_family_game(p, n));
  return GameFamily(std::move(games));
}

/// Random game whose worths are strictly monotone along the merge order on
/// outsider shapes, in the direction given by `sign`. Shapes are ordered by
/// part count (a linear extension of the merge order, since a merge removes
/// exactly one part) and receive sorted distinct uniform draws. The grand
/// worth is then doubled until the grand coalition is efficient.
inline SymmetricGame random_symmetric_game(int n, Externality sign, std::uint64_t seed,
                                           int cap = kMaxRandomGameN) {
  if (sign != Externality::Positive && sign != Externality::Negative) {
    throw ArgumentError("random games need a positive or negative sign");
  }
  if (n < 3) throw ArgumentError("random games need n >= 3 for the merge order to be non-trivial");
  if (n > cap) throw SizeLimitError("random games are capped at n = " + std::to_string(cap));
  Rng rng(seed);
  std::map<EmbeddedShape, Rational> table;
  for (int s = 1; s < n; ++s) {
    auto shapes = enumerate_shapes(n - s);
    // finest (most parts) first
    std::stable_sort(shapes.begin(), shapes.end(),
                     [](const Shape& a, const Shape& b) { return a.size() > b.size(); });
    std::set<std::uint64_t> draws;
    while (draws.size() < shapes.size()) draws.insert(rng.bits53() | 1U);
    std::vector<std::uint64_t> sorted(draws.begin(), draws.end());
    if (sign == Externality::Negative) std::reverse(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      table.emplace(EmbeddedShape{s, shapes[i]}, Rational(Integer(sorted[i]), Integer(1) << 53));
    }
  }
  Rational grand = rng.unit() + Rational(1, 1 << 20);
  table.emplace(EmbeddedShape{n, Shape{}}, grand);
  for (;;) {
    SymmetricGame g(n, table);
    if (is_efficient(g).efficient) return g;
    table[EmbeddedShape{n, Shape{}}] *= 2;
  }
}

/// Independent random games for n_min..n_max with the grand worth raised
/// where needed so it is weakly increasing in n (raising it keeps efficiency).
inline GameFamily random_family(int n_min, int n_max, Externality sign, std::uint64_t seed) {
  std::map<int, SymmetricGame> games;
  Rational floor = 0;
  for (int n = n_min; n <= n_max; ++n) {
    auto g = random_symmetric_game(n, sign, derive_seed(seed, static_cast<std::uint64_t>(n)));
    if (g.grand() < floor) {
      auto table = g.table();
      table[EmbeddedShape{n, Shape{}}] = floor;
      g = SymmetricGame(n, std::move(table));
    }
    floor = g.grand();
    games.emplace(n, std::move(g));
  }
  return GameFamily(std::move(games));
}

}  // namespace pfg

#endif  // PFG_GENERATORS_HPP
