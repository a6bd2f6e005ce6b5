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

#include "pfg/verify.hpp"

#include <gtest/gtest.h>

#include "pfg/generators.hpp"
#include "pfg/report.hpp"

namespace pfg {
namespace {

Rational R(long long p, long long q = 1) { return make_rational(p, q); }

// Positive externalities with gamma values falling slower than n/(n+1).
GameFamily slow_decay_family(int n_max) {
  std::map<int, SymmetricGame> games;
  for (int n = 3; n <= n_max; ++n) {
    games.emplace(n, SymmetricGame::from_function(n, [n](int s, const Shape& out) {
      if (out.parts().empty()) return Rational(n) * n * n;
      const long long merged = out.k() - static_cast<long long>(out.parts().size());
      return Rational(s) * (R(1, n) + R(1, 2)) * (1 + merged);
    }));
  }
  return GameFamily(std::move(games));
}

GameFamily with_grand(const GameFamily& f, int n, const Rational& grand) {
  std::map<int, SymmetricGame> games = f.games();
  auto table = games.at(n).table();
  table[EmbeddedShape{n, Shape{}}] = grand;
  games.erase(n);
  games.emplace(n, SymmetricGame(n, std::move(table)));
  return GameFamily(std::move(games));
}

TEST(Verify, CournotProp1Holds) {
  auto f = cournot_family({}, 3, 6);
  auto rep = verify_proposition(f, VerifyMode::Prop1, 12, 1);
  EXPECT_EQ(rep.status, VerifyStatus::Holds);
  EXPECT_EQ(exit_code(rep.status), 0);
  EXPECT_TRUE(rep.audit.ok());
  EXPECT_EQ(rep.infeasible_samples, 0u);
  EXPECT_EQ(rep.families_sampled, 12u * 5);
  EXPECT_EQ(rep.levels_checked, 12u * 4);
  EXPECT_EQ(rep.lp_checks, rep.levels_checked);
  EXPECT_EQ(rep.lp_agreements, rep.lp_checks);
  EXPECT_TRUE(rep.counterexamples.empty());
  // (n - 1) margins per level
  EXPECT_EQ(rep.margins.size(), 12u * (2 + 3 + 4 + 5));
  ASSERT_TRUE(rep.min_margin);
  EXPECT_GE(*rep.min_margin, 0);
  ASSERT_TRUE(rep.audit.threshold);
  EXPECT_EQ(rep.audit.threshold->p, R(3, 7));
  for (const auto& r : rep.audit.regimes) EXPECT_EQ(r.regime, Regime::Prop1);
}

TEST(Verify, ThreadCountDoesNotChangeTheReport) {
  auto f = cournot_family({}, 3, 6);
  VerifyOptions one, four;
  four.threads = 4;
  auto a = verify_proposition(f, VerifyMode::Prop1, 9, 77, one);
  auto b = verify_proposition(f, VerifyMode::Prop1, 9, 77, four);
  EXPECT_EQ(report::to_json(a, f).dump(), report::to_json(b, f).dump());
  EXPECT_EQ(report::to_csv(a), report::to_csv(b));
}

TEST(Verify, NegativeMirrorHolds) {
  auto f = neg_family({}, 3, 6);
  auto rep = verify_proposition(f, VerifyMode::NegativeMirror, 10, 3);
  EXPECT_EQ(rep.status, VerifyStatus::Holds);
  for (const auto& lv : rep.audit.levels) {
    EXPECT_EQ(lv.sign, Externality::Negative);
    EXPECT_TRUE(lv.efficiency.efficient);
    EXPECT_FALSE(lv.yi);
  }
  EXPECT_TRUE(rep.audit.regimes.empty());
}

TEST(Verify, Prop2FamilyIsVacuousForLargeCoalitions) {
  auto f = slow_decay_family(6);
  auto rep = verify_proposition(f, VerifyMode::Prop2, 20, 5);
  ASSERT_TRUE(rep.audit.ok()) << rep.audit.failures.front();
  for (const auto& r : rep.audit.regimes) EXPECT_EQ(r.regime, Regime::Prop2);
  // a size-(n0-1) coalition has one outsider at its first level, so its worth
  // is fixed at the gamma value and the next step is out of reach
  EXPECT_EQ(rep.status, VerifyStatus::Holds);
  EXPECT_EQ(rep.infeasible_samples, 20u);
  EXPECT_EQ(rep.levels_checked, 0u);
  EXPECT_EQ(report::to_json(rep, f)["summary"]["feasible_samples"], 0);
  try {
    sample_admissible_family(f, 2, 5, BeliefMode::RAdmissible);
    FAIL() << "expected InfeasibleStepError";
  } catch (const InfeasibleStepError& e) {
    EXPECT_EQ(e.n(), 3);
    EXPECT_EQ(e.s(), 2);
  }
}

TEST(Verify, Prop2SingletonFamiliesAreRAdmissible) {
  auto f = slow_decay_family(6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto b = sample_admissible_family(f, 1, seed, BeliefMode::RAdmissible);
    auto rep = admissible_family_check(f, b, BeliefMode::RAdmissible);
    EXPECT_TRUE(rep.admissible);
    for (const auto& st : rep.steps) EXPECT_TRUE(st.in_r_set.value_or(false));
  }
}

TEST(Verify, HypothesisFailures) {
  auto cournot = cournot_family({}, 3, 5);
  auto rep = verify_proposition(cournot, VerifyMode::Prop2, 5, 1);
  EXPECT_EQ(rep.status, VerifyStatus::HypothesesNotMet);
  EXPECT_EQ(exit_code(rep.status), 2);
  EXPECT_FALSE(rep.audit.mixed_regimes);
  EXPECT_EQ(rep.families_sampled, 0u);

  rep = verify_proposition(neg_family({}, 3, 5), VerifyMode::Prop1, 5, 1);
  EXPECT_EQ(rep.status, VerifyStatus::HypothesesNotMet);
  EXPECT_NE(rep.audit.failures.front().find("negative"), std::string::npos);

  rep = verify_proposition(with_grand(cournot, 4, R(1, 5)), VerifyMode::Prop1, 5, 1);
  EXPECT_EQ(rep.status, VerifyStatus::HypothesesNotMet);
  ASSERT_FALSE(rep.audit.failures.empty());
  EXPECT_NE(rep.audit.failures.front().find("not efficient"), std::string::npos);
}

TEST(Verify, AuditOnlyWithZeroSamples) {
  auto rep = verify_proposition(cournot_family({}, 3, 5), VerifyMode::Prop1, 0, 1);
  EXPECT_EQ(rep.status, VerifyStatus::Holds);
  EXPECT_EQ(rep.levels_checked, 0u);
  EXPECT_FALSE(rep.audit.regimes.empty());
}

TEST(Verify, RangeErrors) {
  EXPECT_THROW(verify_proposition(cournot_family({}, 4, 6), VerifyMode::Prop1, 1, 1), ArgumentError);
  VerifyOptions opt;
  opt.max_n = 5;
  EXPECT_THROW(verify_proposition(cournot_family({}, 3, 6), VerifyMode::Prop1, 1, 1, opt), SizeLimitError);
}

TEST(Verify, SamplesDetectBlockingWhenGrandWorthDrops) {
  // efficient at every n, but the grand worth at n = 4 falls below n = 3
  auto f = with_grand(cournot_family({}, 3, 5), 4, R(2, 9) + R(1, 1000));
  auto audit = audit_hypotheses(f, VerifyMode::Prop1);
  ASSERT_TRUE(audit.grand_violation);
  EXPECT_EQ(*audit.grand_violation, 3);
  std::size_t blocked = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    auto out = detail::run_sample(f, VerifyMode::Prop1, i, 9, {});
    for (const auto& c : out.counterexamples) {
      EXPECT_EQ(c.n, 4);
      EXPECT_TRUE(c.kind == "blocked" || c.kind == "chain") << c.kind;
      blocked += c.kind == "blocked";
    }
  }
  EXPECT_GT(blocked, 0u);
}

TEST(Report, CsvAndTextShapes) {
  auto f = cournot_family({}, 3, 4);
  auto rep = verify_proposition(f, VerifyMode::Prop1, 2, 42);
  auto csv = report::to_csv(rep);
  EXPECT_EQ(csv.rfind("n,s,sample,margin_num,margin_den,verdict\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * (2 + 3));
  auto j = report::to_json(rep, f);
  EXPECT_EQ(j["status"], "holds");
  EXPECT_EQ(j["seed"], 42);
  auto text = report::to_text(rep, f);
  EXPECT_NE(text.find("holds"), std::string::npos);
}

}  // namespace
}  // namespace pfg
