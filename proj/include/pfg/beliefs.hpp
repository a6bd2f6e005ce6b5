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

#ifndef PFG_BELIEFS_HPP
#define PFG_BELIEFS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfg/errors.hpp"
#include "pfg/game.hpp"
#include "pfg/partitions.hpp"
#include "pfg/random.hpp"
#include "pfg/rational.hpp"

namespace pfg {

/// Probability distribution of a size-s coalition over the shapes its
/// n - s outsiders can form. Zero-probability shapes are not stored.
class Belief {
 public:
  Belief(int n, int s, std::map<Shape, Rational> probs) : n_(n), s_(s) {
    if (s < 1 || s > n) {
      throw ArgumentError("belief needs 1 <= s <= n (n = " + std::to_string(n) +
                          ", s = " + std::to_string(s) + ")");
    }
    Rational total = 0;
    for (auto& [shape, p] : probs) {
      if (shape.k() != n - s) {
        throw ArgumentError("shape " + shape.str() + " does not partition the " +
                            std::to_string(n - s) + " outsiders");
      }
      if (p < 0) throw ArgumentError("negative probability for " + shape.str());
      total += p;
      if (p != 0) probs_.emplace(shape, std::move(p));
    }
    if (total != 1) {
      throw ArgumentError("belief probabilities sum to " + to_string(total) + ", not 1");
    }
  }

  static Belief point_mass(int n, int s, Shape shape) {
    return Belief(n, s, {{std::move(shape), Rational(1)}});
  }

  /// lambda * a + (1 - lambda) * b.
  static Belief mixture(const Rational& lambda, const Belief& a, const Belief& b) {
    if (a.n() != b.n() || a.s() != b.s()) throw ArgumentError("mixing beliefs of different (n, s)");
    if (lambda < 0 || lambda > 1) throw ArgumentError("mixture weight outside [0, 1]");
    std::map<Shape, Rational> out;
    for (const auto& [sh, p] : a.probs()) out[sh] += lambda * p;
    for (const auto& [sh, p] : b.probs()) out[sh] += (1 - lambda) * p;
    return Belief(a.n(), a.s(), std::move(out));
  }

  int n() const { return n_; }
  int s() const { return s_; }
  const std::map<Shape, Rational>& probs() const { return probs_; }

  Rational prob(const Shape& shape) const {
    auto it = probs_.find(shape);
    return it == probs_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  int n_;
  int s_;
  std::map<Shape, Rational> probs_;
};

/// Beliefs of one coalition size over a contiguous range of player counts.
class BeliefFamily {
 public:
  BeliefFamily(int s, std::map<int, Belief> entries) : s_(s), entries_(std::move(entries)) {
    if (entries_.empty()) throw ArgumentError("empty belief family");
    int expect = entries_.begin()->first;
    for (const auto& [n, b] : entries_) {
      if (n != expect) {
        throw ArgumentError("belief family has a gap at n = " + std::to_string(expect));
      }
      if (b.n() != n || b.s() != s) {
        throw ArgumentError("belief keyed by n = " + std::to_string(n) + " has (n, s) = (" +
                            std::to_string(b.n()) + ", " + std::to_string(b.s()) + ")");
      }
      if (s >= n) throw ArgumentError("family entries need s < n");
      ++expect;
    }
  }

  int s() const { return s_; }
  int n_min() const { return entries_.begin()->first; }
  int n_max() const { return entries_.rbegin()->first; }
  const Belief& at(int n) const {
    auto it = entries_.find(n);
    if (it == entries_.end()) throw ArgumentError("no belief for n = " + std::to_string(n));
    return it->second;
  }
  const std::map<int, Belief>& entries() const { return entries_; }

 private:
  int s_;
  std::map<int, Belief> entries_;
};

inline Shape all_singletons(int k) { return Shape(std::vector<int>(k, 1)); }
inline Shape one_block(int k) { return k == 0 ? Shape{} : Shape{k}; }

/// Outsiders stay singletons.
inline Belief gamma_belief(int n, int s) { return Belief::point_mass(n, s, all_singletons(n - s)); }

/// Outsiders form one coalition.
inline Belief delta_belief(int n, int s) { return Belief::point_mass(n, s, one_block(n - s)); }

/// V^h(S): the belief-weighted worth of a size-s coalition.
inline Rational expected_worth(const SymmetricGame& g, const Belief& h) {
  if (g.n() != h.n()) {
    throw ArgumentError("belief for n = " + std::to_string(h.n()) + " used with a " +
                        std::to_string(g.n()) + "-player game");
  }
  Rational v = 0;
  for (const auto& [shape, p] : h.probs()) v += p * g.worth(h.s(), shape);
  return v;
}

inline Rational gamma_value(const SymmetricGame& g, int s) {
  return g.worth(s, all_singletons(g.n() - s));
}
inline Rational delta_value(const SymmetricGame& g, int s) {
  return g.worth(s, one_block(g.n() - s));
}

struct Interval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// The range of V^h(S) over all beliefs: spanned by the gamma and delta
/// point masses, oriented by the externality sign.
inline Interval achievable_interval(const SymmetricGame& g, int n, int s, Externality sign) {
  if (g.n() != n) throw ArgumentError("game has " + std::to_string(g.n()) + " players, not " + std::to_string(n));
  if (s < 1 || s > n) throw ArgumentError("coalition size out of range");
  switch (sign) {
    case Externality::Positive: return {gamma_value(g, s), delta_value(g, s)};
    case Externality::Negative: return {delta_value(g, s), gamma_value(g, s)};
    default:
      throw UnsupportedSignError("achievable interval needs positive or negative externalities, got " +
                                 to_string(sign));
  }
}

inline Interval achievable_interval(const SymmetricGame& g, int n, int s) {
  return achievable_interval(g, n, s, classify_externalities(g).sign);
}

// ---------------------------------------------------------------------------
// The n -> n+1 step.

struct TildeResult {
  enum class Kind { Mixture, Automatic, Infeasible };
  Kind kind = Kind::Infeasible;
  Rational target;            // n/(n+1) * V^{h_n}(S)
  Interval interval;          // achievable at n+1
  Rational lambda;            // weight on the favorable extreme (Mixture only)
  std::optional<Belief> belief;  // canonical mixture (Mixture only)
};

inline std::string to_string(TildeResult::Kind k) {
  switch (k) {
    case TildeResult::Kind::Mixture: return "mixture";
    case TildeResult::Kind::Automatic: return "automatic";
    case TildeResult::Kind::Infeasible: return "infeasible";
  }
  return "?";
}

/// Target belief at n+1 whose expected worth is n/(n+1) of the level-n value,
/// realized as the two-point mixture of the favorable and unfavorable
/// extremes.
inline TildeResult construct_tilde(const SymmetricGame& g_next, const Rational& h_n_value, int n,
                                   int s, Externality sign) {
  if (g_next.n() != n + 1) throw ArgumentError("construct_tilde needs the (n+1)-player game");
  TildeResult r;
  r.target = Rational(n) / (n + 1) * h_n_value;
  r.interval = achievable_interval(g_next, n + 1, s, sign);
  if (r.target > r.interval.hi) {
    r.kind = TildeResult::Kind::Automatic;
    return r;
  }
  if (r.target < r.interval.lo) {
    r.kind = TildeResult::Kind::Infeasible;
    return r;
  }
  const bool positive = sign == Externality::Positive;
  Belief favorable = positive ? delta_belief(n + 1, s) : gamma_belief(n + 1, s);
  Belief unfavorable = positive ? gamma_belief(n + 1, s) : delta_belief(n + 1, s);
  const Rational& fav = r.interval.hi;
  const Rational& unfav = r.interval.lo;
  r.kind = TildeResult::Kind::Mixture;
  // a single outsider makes both extremes the same point mass
  r.lambda = fav == unfav ? Rational(1) : (r.target - unfav) / (fav - unfav);
  r.belief = Belief::mixture(r.lambda, favorable, unfavorable);
  return r;
}

inline TildeResult construct_tilde(const SymmetricGame& g_next, const Rational& h_n_value, int n,
                                   int s) {
  return construct_tilde(g_next, h_n_value, n, s, classify_externalities(g_next).sign);
}

struct StepCheck {
  bool ok = false;
  Rational margin;  // n V^{h_n} - (n+1) V^{h_{n+1}}; non-negative iff ok
};

/// (n+1) V^{h_{n+1}}(S) <= n V^{h_n}(S).
inline StepCheck admissible_step_check(const SymmetricGame& g_n, const SymmetricGame& g_next,
                                       const Belief& h_n, const Belief& h_next) {
  if (g_next.n() != g_n.n() + 1) throw ArgumentError("games must have n and n+1 players");
  if (h_n.s() != h_next.s()) throw ArgumentError("beliefs are for different coalition sizes");
  const int n = g_n.n();
  StepCheck c;
  c.margin = n * expected_worth(g_n, h_n) - (n + 1) * expected_worth(g_next, h_next);
  c.ok = c.margin >= 0;
  return c;
}

/// Membership of h_n in R_{n,S}: V^{h_n}(S) >= V^{gamma_{n+1}}(S).
inline bool r_set_check(const SymmetricGame& g_n, const SymmetricGame& g_next, const Belief& h_n) {
  if (g_next.n() != g_n.n() + 1) throw ArgumentError("games must have n and n+1 players");
  return expected_worth(g_n, h_n) >= gamma_value(g_next, h_n.s());
}

// ---------------------------------------------------------------------------
// Regimes and figure cases.

enum class Regime { Prop1, Prop2 };
enum class FigureCase { Fig1, Fig2, Fig3, Fig4, Fig5 };

inline std::string to_string(Regime r) { return r == Regime::Prop1 ? "prop1" : "prop2"; }
inline std::string to_string(FigureCase f) {
  return "fig" + std::to_string(static_cast<int>(f) + 1);
}

struct RegimeBounds {
  Rational gamma_next;     // V^{gamma_{n+1}}(S)
  Rational delta_next;     // V^{delta_{n+1}}(S)
  Rational scaled_gamma;   // n/(n+1) V^{gamma_n}(S)
  Rational scaled_delta;   // n/(n+1) V^{delta_n}(S)
};

struct RegimeReport {
  int n = 0;
  int s = 0;
  Regime regime = Regime::Prop1;
  FigureCase figure = FigureCase::Fig1;
  RegimeBounds bounds;
};

/// Orders the four bounds. Ties fall into the case whose step inequality
/// still holds weakly: Fig1 takes delta_next == scaled_gamma, Fig2 and Fig4
/// take delta_next == scaled_delta.
inline std::pair<Regime, FigureCase> classify_bounds(const RegimeBounds& b) {
  if (b.gamma_next <= b.scaled_gamma) {
    if (b.delta_next <= b.scaled_gamma) return {Regime::Prop1, FigureCase::Fig1};
    if (b.delta_next <= b.scaled_delta) return {Regime::Prop1, FigureCase::Fig2};
    return {Regime::Prop1, FigureCase::Fig3};
  }
  if (b.delta_next <= b.scaled_delta) return {Regime::Prop2, FigureCase::Fig4};
  return {Regime::Prop2, FigureCase::Fig5};
}

inline RegimeReport regime_classify(const SymmetricGame& g_n, const SymmetricGame& g_next, int s) {
  if (g_next.n() != g_n.n() + 1) throw ArgumentError("games must have n and n+1 players");
  const int n = g_n.n();
  if (s < 1 || s >= n) throw ArgumentError("regime needs 1 <= s < n");
  for (const auto* g : {&g_n, &g_next}) {
    auto sign = classify_externalities(*g).sign;
    if (sign != Externality::Positive) {
      throw UnsupportedSignError("regime classification needs positive externalities; the " +
                                 std::to_string(g->n()) + "-player game is " + to_string(sign));
    }
  }
  RegimeReport rep;
  rep.n = n;
  rep.s = s;
  const Rational scale = Rational(n) / (n + 1);
  rep.bounds = {gamma_value(g_next, s), delta_value(g_next, s), scale * gamma_value(g_n, s),
                scale * delta_value(g_n, s)};
  std::tie(rep.regime, rep.figure) = classify_bounds(rep.bounds);
  return rep;
}

// ---------------------------------------------------------------------------
// Families.

enum class BeliefMode { Admissible, RAdmissible, NegativeMirror };

inline std::string to_string(BeliefMode m) {
  switch (m) {
    case BeliefMode::Admissible: return "admissible";
    case BeliefMode::RAdmissible: return "r-admissible";
    case BeliefMode::NegativeMirror: return "negative-mirror";
  }
  return "?";
}

struct StepVerdict {
  int n = 0;  // step n -> n+1
  bool ok = false;
  Rational margin;
  std::optional<bool> in_r_set;  // RAdmissible mode only
};

struct FamilyCheckReport {
  bool admissible = true;
  std::vector<StepVerdict> steps;
};

/// The first level is unconstrained; every later level must pass the step
/// inequality against its predecessor (and, for R-admissibility, the
/// predecessor must lie in R_{n,S}).
inline FamilyCheckReport admissible_family_check(const GameFamily& f, const BeliefFamily& b,
                                                 BeliefMode mode) {
  if (b.n_min() < f.n_min() || b.n_max() > f.n_max()) {
    throw ArgumentError("belief family range [" + std::to_string(b.n_min()) + ", " +
                        std::to_string(b.n_max()) + "] is not covered by the game family");
  }
  FamilyCheckReport rep;
  for (int n = b.n_min(); n < b.n_max(); ++n) {
    const auto& g_n = f.at(n);
    const auto& g_next = f.at(n + 1);
    StepVerdict v;
    v.n = n;
    auto step = admissible_step_check(g_n, g_next, b.at(n), b.at(n + 1));
    v.ok = step.ok;
    v.margin = std::move(step.margin);
    if (mode == BeliefMode::RAdmissible) {
      v.in_r_set = r_set_check(g_n, g_next, b.at(n));
      v.ok = v.ok && *v.in_r_set;
    }
    rep.admissible = rep.admissible && v.ok;
    rep.steps.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Base case.

struct ThresholdResult {
  enum class Kind { AnyBelief, AtMost, AtLeast, NoBelief };
  Kind kind = Kind::AnyBelief;
  Rational p;             // bound on h(1), the probability of one outsider coalition
  Rational equal_share;   // V(N)/3
  Rational gamma;
  Rational delta;
};

inline std::string to_string(ThresholdResult::Kind k) {
  switch (k) {
    case ThresholdResult::Kind::AnyBelief: return "any-belief";
    case ThresholdResult::Kind::AtMost: return "at-most";
    case ThresholdResult::Kind::AtLeast: return "at-least";
    case ThresholdResult::Kind::NoBelief: return "no-belief";
  }
  return "?";
}

/// Largest (positive externalities) or smallest (negative) probability a
/// singleton in a 3-player game may put on the outsiders merging while its
/// expected worth stays within the equal split share.
inline ThresholdResult singleton_threshold(const SymmetricGame& g) {
  if (g.n() != 3) throw ArgumentError("singleton threshold needs a 3-player game");
  const auto sign = classify_externalities(g).sign;
  if (sign != Externality::Positive && sign != Externality::Negative) {
    throw UnsupportedSignError("singleton threshold needs positive or negative externalities, got " +
                               to_string(sign));
  }
  ThresholdResult r;
  r.equal_share = g.grand() / 3;
  r.gamma = gamma_value(g, 1);
  r.delta = delta_value(g, 1);
  const bool positive = sign == Externality::Positive;
  const Rational& fav = positive ? r.delta : r.gamma;
  const Rational& unfav = positive ? r.gamma : r.delta;
  if (fav <= r.equal_share) {
    r.kind = ThresholdResult::Kind::AnyBelief;
  } else if (unfav > r.equal_share) {
    r.kind = ThresholdResult::Kind::NoBelief;
  } else if (positive) {
    r.kind = ThresholdResult::Kind::AtMost;
    r.p = (r.equal_share - r.gamma) / (r.delta - r.gamma);
  } else {
    r.kind = ThresholdResult::Kind::AtLeast;
    r.p = (r.gamma - r.equal_share) / (r.gamma - r.delta);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sampling.

struct SamplerOptions {
  /// Upper bound on the first level's expected worth (the base-case share).
  std::optional<Rational> base_cap;
  /// Probability, in eighths, of landing exactly on the level's upper bound.
  int boundary_eighths = 1;
};

namespace detail {

/// Moves `r` along a segment towards an extreme point mass until its
/// expected worth is exactly `v`.
inline Belief steer_to_value(const SymmetricGame& g, const Belief& r, const Rational& v,
                             const Belief& low, const Rational& lo, const Belief& high,
                             const Rational& hi) {
  const Rational x = expected_worth(g, r);
  if (x == v) return r;
  if (x > v) return Belief::mixture((v - lo) / (x - lo), r, low);
  return Belief::mixture((hi - v) / (hi - x), r, high);
}

inline Belief uniform_belief(Rng& rng, int n, int s) {
  auto shapes = outsider_shapes(n, s);
  auto weights = rng.simplex(shapes.size());
  std::map<Shape, Rational> probs;
  for (std::size_t i = 0; i < shapes.size(); ++i) probs.emplace(shapes[i], weights[i]);
  return Belief(n, s, std::move(probs));
}

}  // namespace detail

/// Draws a belief family for coalition size s that passes
/// admissible_family_check in `mode`. The first level is uniform on the
/// simplex (steered under `base_cap` when given); each later level is a
/// random belief whose expected worth is drawn between the construct_tilde
/// target and the least value from which the remaining levels stay reachable.
inline BeliefFamily sample_admissible_family(const GameFamily& f, int s, std::uint64_t seed,
                                             BeliefMode mode, const SamplerOptions& opt = {}) {
  const Externality want =
      mode == BeliefMode::NegativeMirror ? Externality::Negative : Externality::Positive;
  const int n0 = std::max(f.n_min(), s + 1);
  if (s < 1 || n0 > f.n_max()) {
    throw ArgumentError("no level of the game family admits a proper coalition of size " +
                        std::to_string(s));
  }
  // least level-n value from which every later level can still be reached
  std::map<int, Rational> reachable_floor;
  for (int n = f.n_max(); n >= n0; --n) {
    const auto sign = classify_externalities(f.at(n)).sign;
    if (sign != want) {
      throw UnsupportedSignError(to_string(mode) + " sampling needs " + to_string(want) +
                                 " externalities; the " + std::to_string(n) + "-player game is " +
                                 to_string(sign));
    }
    Rational fl = achievable_interval(f.at(n), n, s, want).lo;
    if (n < f.n_max()) {
      fl = std::max(fl, Rational(n + 1) / n * reachable_floor.at(n + 1));
      if (mode == BeliefMode::RAdmissible) fl = std::max(fl, gamma_value(f.at(n + 1), s));
    }
    reachable_floor.emplace(n, std::move(fl));
  }
  Rng rng(seed);
  std::map<int, Belief> entries;
  std::optional<Rational> prev_value;
  for (int n = n0; n <= f.n_max(); ++n) {
    const auto& g = f.at(n);
    const Externality sign = want;
    const Interval iv = achievable_interval(g, n, s, sign);
    const bool positive = sign == Externality::Positive;
    Belief low = positive ? gamma_belief(n, s) : delta_belief(n, s);
    Belief high = positive ? delta_belief(n, s) : gamma_belief(n, s);

    Rational ceil = iv.hi;
    std::optional<Belief> canonical;
    if (!prev_value) {
      if (opt.base_cap && *opt.base_cap < ceil) ceil = *opt.base_cap;
    } else {
      auto tilde = construct_tilde(g, *prev_value, n - 1, s, sign);
      if (tilde.kind == TildeResult::Kind::Infeasible) {
        throw InfeasibleStepError("no belief at n = " + std::to_string(n) + " satisfies the step from n = " +
                                      std::to_string(n - 1) + " for s = " + std::to_string(s),
                                  n, s);
      }
      if (tilde.kind == TildeResult::Kind::Mixture) {
        ceil = tilde.target;
        canonical = tilde.belief;
      }
    }
    const Rational& floor = reachable_floor.at(n);
    if (floor > ceil) {
      throw InfeasibleStepError("empty window [" + to_string(floor) + ", " + to_string(ceil) +
                                    "] for n = " + std::to_string(n) + ", s = " + std::to_string(s),
                                n, s);
    }

    Belief h = detail::uniform_belief(rng, n, s);
    const bool on_boundary = rng.chance(opt.boundary_eighths, 8);
    const Rational v = on_boundary ? ceil : rng.between(floor, ceil);
    const bool first_level_fits = !prev_value && !on_boundary &&
                                  Interval{floor, ceil}.contains(expected_worth(g, h));
    if (on_boundary && canonical) {
      h = *canonical;
    } else if (!first_level_fits) {
      h = detail::steer_to_value(g, h, v, low, iv.lo, high, iv.hi);
    }
    prev_value = expected_worth(g, h);
    entries.emplace(n, std::move(h));
  }
  return BeliefFamily(s, std::move(entries));
}

}  // namespace pfg

#endif  // PFG_BELIEFS_HPP
