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

#ifndef PFG_GAME_HPP
#define PFG_GAME_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfg/errors.hpp"
#include "pfg/partitions.hpp"
#include "pfg/rational.hpp"

namespace pfg {

inline constexpr int kMaxExpandN = 10;

/// Symmetric partition function form game: the worth of a coalition depends
/// only on its size and on the shape of the outsiders' partition.
class SymmetricGame {
 public:
  /// Validates that `worths` is a total function over every embedded shape
  /// with `n` players and holds nothing else.
  SymmetricGame(int n, std::map<EmbeddedShape, Rational> worths)
      : n_(n), worths_(std::move(worths)) {
    if (n < 1 || n > kMaxShapeK) {
      throw MalformedGameError("player count out of range: " + std::to_string(n));
    }
    std::size_t expected = 0;
    for (int s = 1; s <= n; ++s) {
      for (const auto& out : enumerate_shapes(n - s)) {
        ++expected;
        if (!worths_.count(EmbeddedShape{s, out})) {
          throw MalformedGameError("missing worth for s=" + std::to_string(s) +
                                   " outsiders " + out.str());
        }
      }
    }
    if (worths_.size() != expected) {
      for (const auto& [key, value] : worths_) {
        if (key.s < 1 || key.n() != n) {
          throw MalformedGameError("entry s=" + std::to_string(key.s) + " outsiders " +
                                   key.outsiders.str() + " does not describe a " +
                                   std::to_string(n) + "-player game");
        }
      }
    }
  }

  template <typename F>
  static SymmetricGame from_function(int n, F&& worth_of) {
    std::map<EmbeddedShape, Rational> table;
    for (int s = 1; s <= n; ++s) {
      for (auto& out : enumerate_shapes(n - s)) {
        Rational w = worth_of(s, static_cast<const Shape&>(out));
        table.emplace(EmbeddedShape{s, std::move(out)}, std::move(w));
      }
    }
    return SymmetricGame(n, std::move(table));
  }

  int n() const { return n_; }

  const Rational& worth(int s, const Shape& outsiders) const {
    auto it = worths_.find(EmbeddedShape{s, outsiders});
    if (it == worths_.end()) {
      throw ArgumentError("no embedded shape s=" + std::to_string(s) + " outsiders " +
                          outsiders.str() + " in a " + std::to_string(n_) + "-player game");
    }
    return it->second;
  }

  /// V(N, {N}).
  const Rational& grand() const { return worth(n_, Shape{}); }

  const std::map<EmbeddedShape, Rational>& table() const { return worths_; }

  /// Multiplies every worth by `factor`.
  SymmetricGame scaled(const Rational& factor) const {
    auto table = worths_;
    for (auto& [key, value] : table) value *= factor;
    return SymmetricGame(n_, std::move(table));
  }

  friend bool operator==(const SymmetricGame&, const SymmetricGame&) = default;

 private:
  int n_;
  std::map<EmbeddedShape, Rational> worths_;
};

/// Unrestricted partition function over labelled coalitions. Only used to
/// cross-check the symmetric representation, so it is capped in size.
class GeneralGame {
 public:
  /// `worths[p][b]` is the worth of block b of `partitions[p]`.
  GeneralGame(int n, std::vector<SetPartition> partitions,
              std::vector<std::vector<Rational>> worths)
      : n_(n), partitions_(std::move(partitions)), worths_(std::move(worths)) {
    if (partitions_.size() != worths_.size()) {
      throw MalformedGameError("one worth row per partition required");
    }
    for (std::size_t p = 0; p < partitions_.size(); ++p) {
      if (partitions_[p].n() != n_) throw MalformedGameError("partition of the wrong player set");
      if (partitions_[p].blocks().size() != worths_[p].size()) {
        throw MalformedGameError("partition " + partitions_[p].str() +
                                 " needs one worth per block");
      }
      index_.emplace(partitions_[p].blocks(), p);
    }
    if (index_.size() != partitions_.size()) throw MalformedGameError("duplicate partition");
  }

  /// Builds the total table from `worth_of(coalition_mask, partition)`.
  template <typename F>
  static GeneralGame from_function(int n, F&& worth_of, int cap = kMaxExpandN) {
    if (n > cap) throw SizeLimitError("general games are capped at n = " + std::to_string(cap));
    auto parts = enumerate_set_partitions(n, cap);
    std::vector<std::vector<Rational>> worths;
    worths.reserve(parts.size());
    for (const auto& p : parts) {
      std::vector<Rational> row;
      for (std::size_t b = 0; b < p.blocks().size(); ++b) row.push_back(worth_of(p.mask(b), p));
      worths.push_back(std::move(row));
    }
    return GeneralGame(n, std::move(parts), std::move(worths));
  }

  int n() const { return n_; }
  const std::vector<SetPartition>& partitions() const { return partitions_; }
  const std::vector<std::vector<Rational>>& worths() const { return worths_; }

  /// V(S, pi) for a block S of pi.
  const Rational& worth(Coalition coalition, const SetPartition& pi) const {
    auto it = index_.find(pi.blocks());
    if (it == index_.end()) throw ArgumentError("unknown partition " + pi.str());
    int b = pi.find_block(coalition);
    if (b < 0) throw ArgumentError("coalition is not a block of " + pi.str());
    return worths_[it->second][b];
  }

  std::size_t entry_count() const {
    std::size_t c = 0;
    for (const auto& row : worths_) c += row.size();
    return c;
  }

 private:
  int n_;
  std::vector<SetPartition> partitions_;
  std::vector<std::vector<Rational>> worths_;
  std::map<std::vector<std::vector<int>>, std::size_t> index_;
};

/// Symmetric games for a contiguous range of player counts.
class GameFamily {
 public:
  explicit GameFamily(std::map<int, SymmetricGame> games) : games_(std::move(games)) {
    if (games_.empty()) throw ArgumentError("empty game family");
    int expect = games_.begin()->first;
    for (const auto& [n, g] : games_) {
      if (n != expect) throw ArgumentError("game family has a gap at n = " + std::to_string(expect));
      if (g.n() != n) throw ArgumentError("game keyed by n = " + std::to_string(n) + " has " +
                                          std::to_string(g.n()) + " players");
      ++expect;
    }
  }

  int n_min() const { return games_.begin()->first; }
  int n_max() const { return games_.rbegin()->first; }
  const SymmetricGame& at(int n) const {
    auto it = games_.find(n);
    if (it == games_.end()) throw ArgumentError("no game with n = " + std::to_string(n));
    return it->second;
  }
  const std::map<int, SymmetricGame>& games() const { return games_; }

  /// First n with grand(n) > grand(n+1), if any.
  std::optional<int> grand_monotonicity_violation() const {
    for (int n = n_min(); n < n_max(); ++n) {
      if (at(n).grand() > at(n + 1).grand()) return n;
    }
    return std::nullopt;
  }

 private:
  std::map<int, SymmetricGame> games_;
};

// ---------------------------------------------------------------------------
// Structural checks.

struct EfficiencyReport {
  bool efficient = true;
  std::optional<Shape> violating;  // full shape of n whose total is not below grand
  Rational violating_total;
  bool tie = false;  // violating total equals the grand worth exactly
};

/// Total worth of the blocks of a full partition shape.
inline Rational total_worth(const SymmetricGame& g, const Shape& full) {
  Rational total = 0;
  for (int a : full.parts()) total += g.worth(a, full.without(a));
  return total;
}

/// The grand coalition is the efficient partition iff its worth strictly
/// exceeds the total worth of every other partition.
inline EfficiencyReport is_efficient(const SymmetricGame& g) {
  EfficiencyReport rep;
  for (const auto& full : enumerate_shapes(g.n())) {
    if (full.size() < 2) continue;
    Rational total = total_worth(g, full);
    if (total >= g.grand()) {
      rep.efficient = false;
      rep.violating = full;
      rep.tie = total == g.grand();
      rep.violating_total = total;
      return rep;
    }
  }
  return rep;
}

enum class Externality { Positive, Negative, Mixed, None };

inline std::string to_string(Externality e) {
  switch (e) {
    case Externality::Positive: return "positive";
    case Externality::Negative: return "negative";
    case Externality::Mixed: return "mixed";
    case Externality::None: return "none";
  }
  return "?";
}

/// One application of the merge test: two outsider blocks fuse.
struct MergeWitness {
  int s = 0;
  Shape before;
  Shape after;
  Rational worth_before;
  Rational worth_after;
};

struct ExternalityReport {
  Externality sign = Externality::None;
  std::optional<MergeWitness> increase;
  std::optional<MergeWitness> decrease;
  std::optional<MergeWitness> unchanged;
};

/// Merge test over every embedded shape and every pair of outsider blocks.
inline ExternalityReport classify_externalities(const SymmetricGame& g) {
  ExternalityReport rep;
  for (const auto& [key, w] : g.table()) {
    const auto& parts = key.outsiders.parts();
    for (int i = 0; i < key.outsiders.size(); ++i) {
      for (int j = i + 1; j < key.outsiders.size(); ++j) {
        // equal (a, b) pairs give identical merges
        if (j > i + 1 && parts[j] == parts[j - 1]) continue;
        Shape after = key.outsiders.merged(i, j);
        const Rational& w2 = g.worth(key.s, after);
        auto& slot = w2 > w ? rep.increase : (w2 < w ? rep.decrease : rep.unchanged);
        if (!slot) slot = MergeWitness{key.s, key.outsiders, after, w, w2};
      }
    }
  }
  const bool up = rep.increase.has_value();
  const bool down = rep.decrease.has_value();
  const bool flat = rep.unchanged.has_value();
  if (up && !down && !flat) {
    rep.sign = Externality::Positive;
  } else if (down && !up && !flat) {
    rep.sign = Externality::Negative;
  } else if (!up && !down) {
    rep.sign = Externality::None;
  } else {
    rep.sign = Externality::Mixed;
  }
  return rep;
}

struct YiWitness {
  Shape full;
  int smaller = 0;
  int larger = 0;
  Rational smaller_per_member;
  Rational larger_per_member;
};

struct YiReport {
  bool holds = true;
  std::optional<YiWitness> witness;
};

/// In every partition, a smaller coalition earns strictly more per member
/// than a larger one.
inline YiReport check_yi_p2(const SymmetricGame& g) {
  YiReport rep;
  for (const auto& full : enumerate_shapes(g.n())) {
    std::vector<int> sizes = full.parts();
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    // sizes is descending; compare every larger/smaller pair
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      for (std::size_t j = i + 1; j < sizes.size(); ++j) {
        const int big = sizes[i];
        const int small = sizes[j];
        Rational pc_small = g.worth(small, full.without(small)) / small;
        Rational pc_big = g.worth(big, full.without(big)) / big;
        if (!(pc_small > pc_big)) {
          rep.holds = false;
          rep.witness = YiWitness{full, small, big, pc_small, pc_big};
          return rep;
        }
      }
    }
  }
  return rep;
}

/// Lifts a symmetric game to its labelled form.
inline GeneralGame expand(const SymmetricGame& g, int cap = kMaxExpandN) {
  return GeneralGame::from_function(
      g.n(),
      [&](Coalition c, const SetPartition& pi) -> Rational {
        const int b = pi.find_block(c);
        const int s = static_cast<int>(pi.blocks()[b].size());
        return g.worth(s, shape_of(pi).without(s));
      },
      cap);
}

/// Collapses a labelled game to its shape table; throws SymmetryViolation
/// naming two disagreeing entries when the game is not symmetric.
inline SymmetricGame compress(const GeneralGame& g) {
  struct Seen {
    Rational worth;
    std::string where;
  };
  std::map<EmbeddedShape, Seen> seen;
  for (std::size_t p = 0; p < g.partitions().size(); ++p) {
    const auto& pi = g.partitions()[p];
    const Shape full = shape_of(pi);
    for (std::size_t b = 0; b < pi.blocks().size(); ++b) {
      const int s = static_cast<int>(pi.blocks()[b].size());
      EmbeddedShape key{s, full.without(s)};
      const Rational& w = g.worths()[p][b];
      std::string where = "block " + std::to_string(b + 1) + " of " + pi.str();
      auto [it, fresh] = seen.emplace(key, Seen{w, where});
      if (!fresh && it->second.worth != w) {
        throw SymmetryViolation("asymmetric worths for s=" + std::to_string(s) + " outsiders " +
                                key.outsiders.str() + ": " + it->second.where + " = " +
                                to_string(it->second.worth) + " but " + where + " = " +
                                to_string(w));
      }
    }
  }
  std::map<EmbeddedShape, Rational> table;
  for (auto& [key, entry] : seen) table.emplace(key, std::move(entry.worth));
  return SymmetricGame(g.n(), std::move(table));
}

}  // namespace pfg

#endif  // PFG_GAME_HPP
