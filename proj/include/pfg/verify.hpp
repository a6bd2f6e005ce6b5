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

#ifndef PFG_VERIFY_HPP
#define PFG_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pfg/beliefs.hpp"
#include "pfg/core.hpp"
#include "pfg/errors.hpp"
#include "pfg/game.hpp"
#include "pfg/random.hpp"
#include "pfg/rational.hpp"

namespace pfg {

enum class VerifyMode { Prop1, Prop2, NegativeMirror };
enum class VerifyStatus { Holds, Counterexample, HypothesesNotMet };

inline std::string to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::Prop1: return "prop1";
    case VerifyMode::Prop2: return "prop2";
    case VerifyMode::NegativeMirror: return "mirror";
  }
  return "?";
}

inline std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Holds: return "holds";
    case VerifyStatus::Counterexample: return "counterexample";
    case VerifyStatus::HypothesesNotMet: return "hypotheses-not-met";
  }
  return "?";
}

/// 0 = every asserted conclusion holds, 1 = counterexample, 2 = hypotheses not met.
inline int exit_code(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Holds: return 0;
    case VerifyStatus::Counterexample: return 1;
    case VerifyStatus::HypothesesNotMet: return 2;
  }
  return 1;
}

inline BeliefMode belief_mode(VerifyMode m) {
  switch (m) {
    case VerifyMode::Prop1: return BeliefMode::Admissible;
    case VerifyMode::Prop2: return BeliefMode::RAdmissible;
    case VerifyMode::NegativeMirror: return BeliefMode::NegativeMirror;
  }
  return BeliefMode::Admissible;
}

struct LevelAudit {
  int n = 0;
  EfficiencyReport efficiency;
  Externality sign = Externality::None;
  std::optional<YiReport> yi;  // positive modes only
};

/// Whether some belief at the first level of a size-s family keeps the
/// equal split unblocked.
struct BaseAudit {
  int s = 0;
  int n = 0;
  Rational lowest;  // least achievable V^h(s)
  Rational share;   // s V(N) / n
  bool ok = false;
};

struct HypothesisAudit {
  std::vector<LevelAudit> levels;
  std::optional<int> grand_violation;
  std::vector<RegimeReport> regimes;
  bool mixed_regimes = false;
  std::optional<ThresholdResult> threshold;
  std::vector<BaseAudit> base;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

struct MarginRecord {
  int n = 0;
  int s = 0;
  std::size_t sample = 0;
  Rational margin;  // s V(N)/n - V^h(s)
  bool in_core = false;
};

struct Counterexample {
  std::size_t sample = 0;
  int n = 0;
  std::string kind;
  std::string detail;
  std::map<int, BeliefFamily> beliefs;  // by coalition size
  std::vector<Rational> margins;        // at level n, index s-1
};

struct VerifyOptions {
  int lp_max_n = 7;
  int max_n = kMaxLpN;
  std::size_t max_counterexamples = 20;
  unsigned threads = 1;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::Prop1;
  int n_min = 0;
  int n_max = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  VerifyStatus status = VerifyStatus::Holds;
  HypothesisAudit audit;
  std::size_t families_sampled = 0;
  std::size_t infeasible_samples = 0;
  std::size_t levels_checked = 0;
  std::size_t lp_checks = 0;
  std::size_t lp_agreements = 0;
  std::optional<Rational> min_margin;
  std::vector<MarginRecord> margins;
  std::vector<Counterexample> counterexamples;
};

inline HypothesisAudit audit_hypotheses(const GameFamily& f, VerifyMode mode) {
  HypothesisAudit a;
  const bool positive = mode != VerifyMode::NegativeMirror;
  const Externality want = positive ? Externality::Positive : Externality::Negative;
  for (const auto& [n, g] : f.games()) {
    LevelAudit lv;
    lv.n = n;
    lv.efficiency = is_efficient(g);
    lv.sign = classify_externalities(g).sign;
    if (!lv.efficiency.efficient) {
      a.failures.push_back("n=" + std::to_string(n) + ": grand coalition not efficient (shape " +
                           lv.efficiency.violating->str() + (lv.efficiency.tie ? " ties" : " exceeds") +
                           " V(N))");
    }
    if (lv.sign != want) {
      a.failures.push_back("n=" + std::to_string(n) + ": externalities are " + to_string(lv.sign) +
                           ", need " + to_string(want));
    }
    if (positive) {
      lv.yi = check_yi_p2(g);
      if (!lv.yi->holds) a.failures.push_back("n=" + std::to_string(n) + ": Yi P.2 fails");
    }
    a.levels.push_back(std::move(lv));
  }
  a.grand_violation = f.grand_monotonicity_violation();
  if (a.grand_violation) {
    a.failures.push_back("grand worth decreases from n=" + std::to_string(*a.grand_violation) +
                         " to n=" + std::to_string(*a.grand_violation + 1));
  }
  if (!a.ok()) return a;

  if (positive) {
    const Regime want_regime = mode == VerifyMode::Prop1 ? Regime::Prop1 : Regime::Prop2;
    std::size_t matching = 0;
    for (int n = f.n_min(); n < f.n_max(); ++n) {
      for (int s = 1; s < n; ++s) {
        a.regimes.push_back(regime_classify(f.at(n), f.at(n + 1), s));
        if (a.regimes.back().regime == want_regime) ++matching;
      }
    }
    if (matching != a.regimes.size()) {
      a.mixed_regimes = matching != 0;
      a.failures.push_back(std::to_string(a.regimes.size() - matching) + " of " +
                           std::to_string(a.regimes.size()) + " (n, s) steps are outside the " +
                           to_string(want_regime) + " regime" +
                           (a.mixed_regimes ? " (mixed across sizes)" : ""));
    }
  }
  if (f.n_min() == 3) a.threshold = singleton_threshold(f.at(3));
  for (int s = 1; s < f.n_max(); ++s) {
    const int n0 = std::max(f.n_min(), s + 1);
    const auto& g = f.at(n0);
    BaseAudit b;
    b.s = s;
    b.n = n0;
    b.lowest = achievable_interval(g, n0, s, want).lo;
    b.share = s * g.grand() / n0;
    b.ok = b.lowest <= b.share;
    if (!b.ok) {
      a.failures.push_back("no belief keeps equal split unblocked for s=" + std::to_string(s) +
                           " at n=" + std::to_string(n0));
    }
    a.base.push_back(std::move(b));
  }
  return a;
}

namespace detail {

struct SampleOutcome {
  bool infeasible = false;
  std::size_t families = 0;
  std::size_t levels = 0;
  std::size_t lp_checks = 0;
  std::size_t lp_agreements = 0;
  std::vector<MarginRecord> margins;
  std::vector<Counterexample> counterexamples;
};

inline SampleOutcome run_sample(const GameFamily& f, VerifyMode mode, std::size_t sample,
                                std::uint64_t seed, const VerifyOptions& opt) {
  SampleOutcome out;
  const BeliefMode bm = belief_mode(mode);
  std::map<int, BeliefFamily> families;
  for (int s = 1; s < f.n_max(); ++s) {
    const int n0 = std::max(f.n_min(), s + 1);
    SamplerOptions so;
    so.base_cap = s * f.at(n0).grand() / n0;
    try {
      families.emplace(s, sample_admissible_family(f, s, derive_seed(seed, sample, s), bm, so));
    } catch (const InfeasibleStepError&) {
      out.infeasible = true;
      return out;
    }
    ++out.families;
  }
  auto report = [&](int n, std::string kind, std::string detail, std::vector<Rational> margins) {
    out.counterexamples.push_back(
        Counterexample{sample, n, std::move(kind), std::move(detail), families, std::move(margins)});
  };
  for (const auto& [s, fam] : families) {
    auto check = admissible_family_check(f, fam, bm);
    if (!check.admissible) {
      report(fam.n_min(), "inadmissible-sample",
             "sampled family for s=" + std::to_string(s) + " fails the " + to_string(bm) + " check", {});
    }
  }
  std::map<int, EqualSplitCheck> by_level;
  for (int n = f.n_min(); n <= f.n_max(); ++n) {
    std::map<int, Belief> beliefs;
    for (int s = 1; s < n; ++s) beliefs.emplace(s, families.at(s).at(n));
    const InducedGame ig = induce(f.at(n), beliefs);
    auto es = equal_split_in_core(ig);
    ++out.levels;
    for (int s = 1; s < n; ++s) {
      out.margins.push_back(MarginRecord{n, s, sample, es.margins[s - 1], es.margins[s - 1] >= 0});
    }
    if (!es.in_core) {
      report(n, "blocked", "equal split blocked by s=" + std::to_string(*es.witness), es.margins);
    }
    if (n <= opt.lp_max_n) {
      auto lp = core_nonempty_lp(ig);
      ++out.lp_checks;
      if (lp.nonempty == es.in_core) {
        ++out.lp_agreements;
      } else {
        report(n, "lp-disagreement",
               std::string("LP says core ") + (lp.nonempty ? "non-empty" : "empty") +
                   ", equal split says " + (es.in_core ? "in core" : "blocked"),
               es.margins);
      }
      if (lp.lp_point) {
        if (lp.lp_point->total() != ig.grand()) {
          report(n, "lp-certificate", "LP point distributes " + to_string(lp.lp_point->total()),
                 es.margins);
        } else if (auto c = violated_coalition(ig, *lp.lp_point)) {
          report(n, "lp-certificate", "LP point violates coalition mask " + std::to_string(*c),
                 es.margins);
        }
      }
    }
    by_level.emplace(n, std::move(es));
  }
  // unblocked at n + admissible step + monotone grand => unblocked at n+1
  for (int n = f.n_min(); n < f.n_max(); ++n) {
    for (int s = 1; s < n; ++s) {
      const auto& fam = families.at(s);
      if (n < fam.n_min()) continue;
      const bool base = by_level.at(n).margins[s - 1] >= 0;
      const bool step = admissible_step_check(f.at(n), f.at(n + 1), fam.at(n), fam.at(n + 1)).ok;
      const bool next = by_level.at(n + 1).margins[s - 1] >= 0;
      if (base && step && !next) {
        report(n + 1, "chain", "step inequality did not carry the equal split from n=" +
                                   std::to_string(n) + " for s=" + std::to_string(s),
               by_level.at(n + 1).margins);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Audits the hypotheses of the selected result on the family, then samples
/// belief families of the matching kind and asserts that the equal split is
/// in the core of every induced game, cross-checked by the exact LP.
inline VerificationReport verify_proposition(const GameFamily& f, VerifyMode mode,
                                             std::size_t samples, std::uint64_t seed,
                                             const VerifyOptions& opt = {}) {
  if (f.n_min() != 3) throw ArgumentError("verification families must start at n = 3");
  if (f.n_max() > opt.max_n) {
    throw SizeLimitError("verification is capped at n = " + std::to_string(opt.max_n));
  }
  VerificationReport rep;
  rep.mode = mode;
  rep.n_min = f.n_min();
  rep.n_max = f.n_max();
  rep.samples = samples;
  rep.seed = seed;
  rep.audit = audit_hypotheses(f, mode);
  if (!rep.audit.ok()) {
    rep.status = VerifyStatus::HypothesesNotMet;
    return rep;
  }

  std::vector<detail::SampleOutcome> outcomes(samples);
  const unsigned workers = std::max(1U, std::min<unsigned>(opt.threads, samples ? samples : 1));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < samples; i += workers) {
          outcomes[i] = detail::run_sample(f, mode, i, seed, opt);
        }
      });
    }
  }
  for (auto& o : outcomes) {
    rep.infeasible_samples += o.infeasible ? 1 : 0;
    rep.families_sampled += o.families;
    rep.levels_checked += o.levels;
    rep.lp_checks += o.lp_checks;
    rep.lp_agreements += o.lp_agreements;
    for (auto& m : o.margins) {
      if (!rep.min_margin || m.margin < *rep.min_margin) rep.min_margin = m.margin;
      rep.margins.push_back(std::move(m));
    }
    for (auto& c : o.counterexamples) {
      if (rep.counterexamples.size() < opt.max_counterexamples) rep.counterexamples.push_back(std::move(c));
      rep.status = VerifyStatus::Counterexample;
    }
  }
  return rep;
}

}  // namespace pfg

#endif  // PFG_VERIFY_HPP
