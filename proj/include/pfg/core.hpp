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

#ifndef PFG_CORE_HPP
#define PFG_CORE_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfg/beliefs.hpp"
#include "pfg/errors.hpp"
#include "pfg/game.hpp"
#include "pfg/lp.hpp"
#include "pfg/partitions.hpp"
#include "pfg/rational.hpp"

namespace pfg {

inline constexpr int kMaxLpN = 10;

/// Payoff vector z_1..z_n.
struct Allocation {
  std::vector<Rational> payoffs;

  int n() const { return static_cast<int>(payoffs.size()); }
  Rational total() const {
    Rational t = 0;
    for (const auto& z : payoffs) t += z;
    return t;
  }
  Rational coalition_sum(Coalition c) const {
    Rational t = 0;
    for (int i = 0; i < n(); ++i) {
      if (c >> i & 1U) t += payoffs[i];
    }
    return t;
  }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Characteristic-function game (N, V^h) induced by beliefs.
class InducedGame {
 public:
  /// `vh[s-1]` is V^h of a size-s coalition for s = 1..n-1.
  InducedGame(int n, std::vector<Rational> vh, Rational grand)
      : n_(n), vh_(std::move(vh)), grand_(std::move(grand)) {
    if (n < 1) throw ArgumentError("induced game needs n >= 1");
    if (static_cast<int>(vh_.size()) != n - 1) {
      throw ArgumentError("induced game needs one worth per size 1..n-1");
    }
  }

  int n() const { return n_; }
  const Rational& grand() const { return grand_; }
  const Rational& worth(int s) const {
    if (s < 1 || s >= n_) throw ArgumentError("coalition size " + std::to_string(s) + " out of range");
    return vh_[s - 1];
  }
  const std::vector<Rational>& worths() const { return vh_; }

  InducedGame scaled(const Rational& factor) const {
    auto vh = vh_;
    for (auto& v : vh) v *= factor;
    return InducedGame(n_, std::move(vh), grand_ * factor);
  }

 private:
  int n_;
  std::vector<Rational> vh_;
  Rational grand_;
};

/// V^h(s) = expected_worth(g, beliefs[s]) for every proper size.
inline InducedGame induce(const SymmetricGame& g, const std::map<int, Belief>& beliefs) {
  std::vector<Rational> vh;
  for (int s = 1; s < g.n(); ++s) {
    auto it = beliefs.find(s);
    if (it == beliefs.end()) throw ArgumentError("no belief for coalition size " + std::to_string(s));
    if (it->second.s() != s) throw ArgumentError("belief keyed by s = " + std::to_string(s) + " is for s = " + std::to_string(it->second.s()));
    vh.push_back(expected_worth(g, it->second));
  }
  return InducedGame(g.n(), std::move(vh), g.grand());
}

inline Allocation equal_split(const InducedGame& ig) {
  return Allocation{std::vector<Rational>(ig.n(), ig.grand() / ig.n())};
}

inline void require_feasible(const InducedGame& ig, const Allocation& z) {
  if (z.n() != ig.n()) throw FeasibilityError("allocation has the wrong number of players");
  if (z.total() != ig.grand()) {
    throw FeasibilityError("allocation distributes " + to_string(z.total()) + " instead of " +
                           to_string(ig.grand()));
  }
}

/// Whether some size-s coalition blocks z: V^h(s) strictly above the s
/// smallest payoffs.
inline bool blocks(const InducedGame& ig, int s, const Allocation& z) {
  require_feasible(ig, z);
  auto sorted = z.payoffs;
  std::sort(sorted.begin(), sorted.end());
  Rational weakest = 0;
  for (int i = 0; i < s; ++i) weakest += sorted.at(i);
  return ig.worth(s) > weakest;
}

struct EqualSplitCheck {
  bool in_core = true;
  std::optional<int> witness;   // size with the largest excess, when blocked
  std::vector<Rational> margins;  // s * grand / n - V^h(s), index s-1
};

inline EqualSplitCheck equal_split_in_core(const InducedGame& ig) {
  EqualSplitCheck c;
  std::optional<Rational> worst;
  for (int s = 1; s < ig.n(); ++s) {
    Rational m = s * ig.grand() / ig.n() - ig.worth(s);
    if (!worst || m < *worst) {
      worst = m;
      if (m < 0) c.witness = s;
    }
    c.margins.push_back(std::move(m));
  }
  c.in_core = !c.witness.has_value();
  return c;
}

/// Coalition whose constraint z(S) >= V^h(|S|) fails, if any.
inline std::optional<Coalition> violated_coalition(const InducedGame& ig, const Allocation& z) {
  const Coalition full = (Coalition{1} << ig.n()) - 1;
  for (Coalition c = 1; c < full; ++c) {
    if (z.coalition_sum(c) < ig.worth(std::popcount(c))) return c;
  }
  return std::nullopt;
}

struct CoreVerdict {
  bool nonempty = false;
  /// Equal split when it passes every constraint, else the LP point.
  std::optional<Allocation> certificate;
  std::optional<Allocation> lp_point;
  /// Infeasibility certificate: coalitions with positive weight w_S, and the
  /// weight mu of the efficiency row, with sum_S w_S 1_S = mu 1 and
  /// sum_S w_S V^h(|S|) > mu V(N).
  std::vector<std::pair<Coalition, Rational>> blocking_family;
  Rational balance;
  std::size_t pivots = 0;
};

/// Decides core non-emptiness by exact feasibility of
/// { sum z = V(N); z(S) >= V^h(|S|) for all proper S }.
inline CoreVerdict core_nonempty_lp(const InducedGame& ig, int cap = kMaxLpN) {
  const int n = ig.n();
  if (n > cap) throw SizeLimitError("core LP is capped at n = " + std::to_string(cap));
  lp::Problem p;
  p.num_vars = n;
  p.free.assign(n, true);
  p.constraints.push_back({std::vector<Rational>(n, Rational(1)), lp::Sense::Equal, ig.grand()});
  const Coalition full = (Coalition{1} << n) - 1;
  for (Coalition c = 1; c < full; ++c) {
    std::vector<Rational> row(n);
    for (int i = 0; i < n; ++i) row[i] = (c >> i & 1U) ? 1 : 0;
    p.constraints.push_back({std::move(row), lp::Sense::GreaterEqual, ig.worth(std::popcount(c))});
  }
  auto res = lp::find_feasible_point(p);
  CoreVerdict v;
  v.pivots = res.pivots;
  v.nonempty = res.feasible;
  if (res.feasible) {
    v.lp_point = Allocation{std::move(res.x)};
    auto es = equal_split(ig);
    v.certificate = violated_coalition(ig, es) ? *v.lp_point : std::move(es);
  } else {
    v.balance = -res.farkas[0];
    for (Coalition c = 1; c < full; ++c) {
      if (boost::multiprecision::sign(res.farkas[c]) > 0) v.blocking_family.emplace_back(c, res.farkas[c]);
    }
  }
  return v;
}

/// Core of a symmetric game is non-empty iff equal split is in it, i.e.
/// max_s V^h(s)/s <= V(N)/n.
inline bool symmetric_core_criterion(const InducedGame& ig) {
  const Rational share = ig.grand() / ig.n();
  for (int s = 1; s < ig.n(); ++s) {
    if (ig.worth(s) / s > share) return false;
  }
  return true;
}

}  // namespace pfg

#endif  // PFG_CORE_HPP
