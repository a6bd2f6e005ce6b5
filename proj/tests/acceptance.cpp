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

// Acceptance suite: one PASS/FAIL line per criterion; exits non-zero when
// any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pfg/pfg.hpp"

namespace {

using pfg::Rational;

Rational R(long long p, long long q = 1) { return pfg::make_rational(p, q); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Independent oracles.

std::vector<std::uint64_t> bell_triangle(int n_max) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n_max; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;
}

std::uint64_t partition_count(int k) {
  // p(k) by the "largest part at most m" table
  std::vector<std::vector<std::uint64_t>> t(k + 1, std::vector<std::uint64_t>(k + 1, 0));
  for (int m = 0; m <= k; ++m) t[0][m] = 1;
  for (int i = 1; i <= k; ++i) {
    for (int m = 1; m <= k; ++m) t[i][m] = t[i][m - 1] + (i >= m ? t[i - m][m] : 0);
  }
  return t[k][k];
}

// Unit Cournot worth with m coalitions in the market.
Rational cournot_worth(long long m) { return R(1, (m + 1) * (m + 1)); }

// V^h(S) for unit Cournot: outsider shapes only matter through their part count.
Rational cournot_expected(const pfg::Belief& h) {
  Rational v = 0;
  for (const auto& [sh, p] : h.probs()) v += p * cournot_worth(1 + static_cast<long long>(sh.parts().size()));
  return v;
}

bool satisfies_core(const pfg::InducedGame& ig, const pfg::Allocation& z) {
  Rational total = 0;
  for (const auto& x : z.payoffs) total += x;
  if (total != ig.grand()) return false;
  const int n = ig.n();
  for (std::uint32_t c = 1; c + 1 < (std::uint32_t{1} << n); ++c) {
    Rational sum = 0;
    int size = 0;
    for (int i = 0; i < n; ++i) {
      if (c >> i & 1U) {
        sum += z.payoffs[i];
        ++size;
      }
    }
    if (sum < ig.worth(size)) return false;
  }
  return true;
}

int run_cli(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string(PFG_CLI) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir && *dir ? dir : "/tmp") + "/pfg_acceptance_" + name;
}

// ---------------------------------------------------------------------------
// Criteria.

Outcome enumeration_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::uint64_t> listed{1, 2, 5, 15, 52, 203, 877, 4140};
  const auto bell = bell_triangle(8);
  for (int n = 1; n <= 8; ++n) {
    const auto got = pfg::enumerate_set_partitions(n).size();
    if (got != listed[n - 1] || got != bell[n]) {
      return {false, "n=" + std::to_string(n) + " gave " + std::to_string(got) + " set partitions"};
    }
  }
  for (int k = 0; k <= 12; ++k) {
    const auto got = pfg::enumerate_shapes(k).size();
    if (got != partition_count(k)) {
      return {false, "k=" + std::to_string(k) + " gave " + std::to_string(got) + " shapes"};
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 1.0) return {false, "took " + std::to_string(secs) + " s"};
  return {true, "Bell(1..8) and p(0..12) exact"};
}

Outcome multiplicity_identity() {
  const auto bell = bell_triangle(8);
  for (int k = 1; k <= 8; ++k) {
    pfg::Integer total = 0;
    for (const auto& sh : pfg::enumerate_shapes(k)) total += pfg::shape_multiplicity(sh);
    if (total != bell[k]) return {false, "k=" + std::to_string(k) + " sums to " + total.str()};
  }
  return {true, "sum of multiplicities = Bell(k), k <= 8"};
}

Outcome oracle_equivalence() {
  pfg::Rng rng(20260101);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 5;
    const auto sign = trial % 2 ? pfg::Externality::Negative : pfg::Externality::Positive;
    const auto g = pfg::random_symmetric_game(n, sign, pfg::derive_seed(7, trial));
    const auto gen = pfg::expand(g);
    for (int s = 1; s < n; ++s) {
      const pfg::Belief h = pfg::detail::uniform_belief(rng, n, s);
      const pfg::Coalition S = (pfg::Coalition{1} << s) - 1;
      Rational lifted = 0, mass = 0;
      for (const auto& pi : gen.partitions()) {
        if (pi.find_block(S) < 0) continue;
        const pfg::Shape out = pfg::shape_of(pi).without(s);
        const Rational w = h.prob(out) / Rational(pfg::shape_multiplicity(out));
        mass += w;
        lifted += w * gen.worth(S, pi);
      }
      if (mass != 1 || lifted != pfg::expected_worth(g, h)) {
        return {false, "trial " + std::to_string(trial) + " s=" + std::to_string(s) + ": lifted " +
                           pfg::to_string(lifted) + " vs " + pfg::to_string(pfg::expected_worth(g, h))};
      }
    }
  }
  return {true, "50 random games, every size, exact agreement"};
}

Outcome cournot_properties() {
  for (long long n = 3; n <= 8; ++n) {
    const auto g = pfg::cournot_game({}, static_cast<int>(n));
    if (!pfg::is_efficient(g).efficient) return {false, "n=" + std::to_string(n) + " not efficient"};
    if (pfg::classify_externalities(g).sign != pfg::Externality::Positive) {
      return {false, "n=" + std::to_string(n) + " not positive"};
    }
    if (!pfg::check_yi_p2(g).holds) return {false, "n=" + std::to_string(n) + " fails Yi P.2"};
    if (n * (n + 2) * (n + 2) < (n + 1) * (n + 1) * (n + 1)) {
      return {false, "n(n+2)^2 < (n+1)^3 at n=" + std::to_string(n)};
    }
    if (n < 8) {
      const auto step = pfg::admissible_step_check(g, pfg::cournot_game({}, static_cast<int>(n + 1)),
                                                   pfg::gamma_belief(static_cast<int>(n), 1),
                                                   pfg::gamma_belief(static_cast<int>(n + 1), 1));
      if (!step.ok || step.margin != R(n, (n + 1) * (n + 1)) - R(n + 1, (n + 2) * (n + 2))) {
        return {false, "gamma step fails at n=" + std::to_string(n)};
      }
    }
  }
  return {true, "n = 3..8 efficient, positive, Yi P.2, gamma steps exact"};
}

Outcome base_case_threshold() {
  const auto g = pfg::cournot_game({}, 3);
  const auto t = pfg::singleton_threshold(g);
  if (t.kind != pfg::ThresholdResult::Kind::AtMost || t.p != R(3, 7)) {
    return {false, "threshold " + pfg::to_string(t.p)};
  }
  auto induced = [&](const Rational& merged) {
    std::map<int, pfg::Belief> b;
    b.emplace(1, pfg::Belief(3, 1, {{pfg::Shape{2}, merged}, {pfg::Shape{1, 1}, 1 - merged}}));
    b.emplace(2, pfg::gamma_belief(3, 2));
    return pfg::induce(g, b);
  };
  const auto at = induced(R(3, 7));
  const auto es = pfg::equal_split(at);
  if (pfg::blocks(at, 1, es) || pfg::blocks(at, 2, es) || !pfg::core_nonempty_lp(at).nonempty) {
    return {false, "h(1) = 3/7 is blocked"};
  }
  const auto above = induced(R(3, 7) + R(1, 1000));
  if (!pfg::blocks(above, 1, pfg::equal_split(above)) || pfg::core_nonempty_lp(above).nonempty) {
    return {false, "h(1) = 3/7 + 1/1000 is not blocked by s=1"};
  }
  return {true, "p* = 3/7; boundary unblocked, 3/7 + 1/1000 blocked by s=1"};
}

Outcome tilde_construction() {
  const auto g3 = pfg::cournot_game({}, 3);
  const auto g4 = pfg::cournot_game({}, 4);
  const auto t = pfg::construct_tilde(g4, pfg::expected_worth(g3, pfg::gamma_belief(3, 1)), 3, 1);
  if (t.kind != pfg::TildeResult::Kind::Mixture || t.lambda != R(99, 1024)) {
    return {false, "lambda " + pfg::to_string(t.lambda)};
  }
  if (pfg::expected_worth(g4, *t.belief) != R(3, 64) || cournot_expected(*t.belief) != R(3, 64)) {
    return {false, "expected worth is not 3/64"};
  }
  const auto step = pfg::admissible_step_check(g3, g4, pfg::gamma_belief(3, 1), *t.belief);
  if (!step.ok || step.margin != 0) return {false, "margin " + pfg::to_string(step.margin)};
  return {true, "lambda = 99/1024, V = 3/64, margin 0"};
}

const std::string kProp1Args = "verify --family cournot --mode prop1 --n-max 8 --samples 100 --seed 42";

Outcome prop1_harness() {
  const std::string json = tmp_path("prop1_a.json");
  const auto start = std::chrono::steady_clock::now();
  const int rc = run_cli(kProp1Args + " --json " + json, tmp_path("prop1_a.log"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (rc != 0) return {false, "exit code " + std::to_string(rc)};
  const auto j = pfg::io::Json::parse(slurp(json));
  const auto& sum = j["summary"];
  if (sum["counterexamples"] != 0 || sum["lp_checks"] != sum["lp_agreements"] || sum["lp_checks"] == 0 ||
      sum["feasible_samples"] != 100) {
    return {false, "summary " + sum.dump()};
  }
  if (secs >= 60.0) return {false, "took " + std::to_string(secs) + " s"};
  std::ostringstream d;
  d.precision(3);
  d << "exit 0, " << sum["levels_checked"].get<int>() << " levels, LP agrees on "
    << sum["lp_agreements"].get<int>() << ", " << secs << " s";
  return {true, d.str()};
}

Outcome mirror_harness() {
  const std::string json = tmp_path("mirror.json");
  const int rc = run_cli(
      "verify --family negfam --eps 1/10 --mode mirror --n-max 8 --samples 100 --seed 42 --json " + json,
      tmp_path("mirror.log"));
  if (rc != 0) return {false, "exit code " + std::to_string(rc)};
  const auto j = pfg::io::Json::parse(slurp(json));
  const auto& levels = j["audit"]["levels"];
  if (levels.size() != 6) return {false, "audited " + std::to_string(levels.size()) + " levels"};
  for (const auto& lv : levels) {
    if (lv["externalities"] != "negative" || lv["efficient"] != true) return {false, "level " + lv.dump()};
  }
  return {true, "exit 0, n = 3..8 negative and efficient"};
}

Outcome lp_criterion_equivalence() {
  pfg::Rng rng(909);
  int empty = 0, nonempty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<Rational> vh;
    if (trial % 2 == 0 && n >= 3) {
      const auto g = pfg::random_symmetric_game(n, trial % 4 ? pfg::Externality::Positive
                                                             : pfg::Externality::Negative,
                                                pfg::derive_seed(909, trial));
      for (int s = 1; s < n; ++s) vh.push_back(pfg::expected_worth(g, pfg::detail::uniform_belief(rng, n, s)));
      vh.push_back(g.grand());
    } else {
      for (int s = 1; s < n; ++s) vh.push_back(Rational(s) / n * (R(4, 5) + rng.unit() / 4));
      vh.push_back(1);
    }
    const Rational grand = vh.back();
    vh.pop_back();
    const pfg::InducedGame ig(n, vh, grand);
    const auto v = pfg::core_nonempty_lp(ig);
    if (v.nonempty != pfg::symmetric_core_criterion(ig)) return {false, "trial " + std::to_string(trial)};
    if (v.nonempty) {
      ++nonempty;
      if (!satisfies_core(ig, *v.lp_point) || !satisfies_core(ig, *v.certificate)) {
        return {false, "certificate fails at trial " + std::to_string(trial)};
      }
    } else {
      ++empty;
    }
  }
  return {true, "200 games agree (" + std::to_string(nonempty) + " non-empty, " + std::to_string(empty) +
                    " empty); certificates valid"};
}

Outcome admissibility_soundness() {
  pfg::Rng rng(1000);
  int accepted = 0, rejected = 0;
  for (int attempt = 0; attempt < 100000 && (accepted < 500 || rejected < 500); ++attempt) {
    const int n = 3 + attempt % 5;
    const int s = 1 + static_cast<int>(rng.bits53() % static_cast<std::uint64_t>(n - 1));
    const auto h_n = pfg::detail::uniform_belief(rng, n, s);
    const auto h_next = pfg::detail::uniform_belief(rng, n + 1, s);
    const auto c = pfg::admissible_step_check(pfg::cournot_game({}, n), pfg::cournot_game({}, n + 1), h_n, h_next);
    const bool holds = (n + 1) * cournot_expected(h_next) <= n * cournot_expected(h_n);
    if (c.ok != holds) return {false, "verdict differs from the oracle at attempt " + std::to_string(attempt)};
    if (c.ok && accepted < 500) ++accepted;
    if (!c.ok && rejected < 500) ++rejected;
  }
  if (accepted < 500 || rejected < 500) {
    return {false, "only " + std::to_string(accepted) + " accepted / " + std::to_string(rejected) + " rejected"};
  }
  return {true, "500 accepted hold, 500 rejected fail"};
}

Outcome determinism() {
  const std::string a = tmp_path("prop1_a.json");
  const std::string b = tmp_path("prop1_b.json");
  if (run_cli(kProp1Args + " --json " + b, tmp_path("prop1_b.log")) != 0) return {false, "second run failed"};
  const std::string first = slurp(a), second = slurp(b);
  if (first.empty() || first != second) return {false, "reports differ"};
  return {true, "byte-identical JSON (" + std::to_string(first.size()) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"enumeration exactness", enumeration_exactness},
      {"shape-multiplicity identity", multiplicity_identity},
      {"oracle equivalence", oracle_equivalence},
      {"Cournot properties", cournot_properties},
      {"base-case threshold", base_case_threshold},
      {"h-tilde construction", tilde_construction},
      {"prop1 harness", prop1_harness},
      {"negative mirror harness", mirror_harness},
      {"LP/criterion equivalence", lp_criterion_equivalence},
      {"admissibility soundness", admissibility_soundness},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
