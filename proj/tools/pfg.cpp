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

// Command-line front end: pfg <check|core|verify|threshold|partitions|generate>.
//
// Exit status: 0 success / conclusion holds, 1 counterexample or failed
// property, 2 hypotheses not met, 64 usage error, 65 data error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pfg/pfg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

using pfg::io::Json;

/// Module cap, lowered (never raised) by PFG_MAX_N.
int cap(int builtin) {
  const char* env = std::getenv("PFG_MAX_N");
  if (!env || !*env) return builtin;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) return builtin;
  return static_cast<int>(std::min<long>(builtin, v));
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

pfg::Rational rational_arg(const std::string& text, const std::string& flag) {
  try {
    return pfg::parse_rational(text);
  } catch (const pfg::ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pfg::Error(path + ": cannot write file");
  out << body;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

struct FamilyArgs {
  std::string family = "cournot";
  std::string margin = "1/1";
  std::string slope = "1/1";
  std::string eps = "1/10";
  std::string sign = "positive";
  std::vector<std::string> games;
};

void add_family_options(CLI::App* cmd, FamilyArgs& a) {
  cmd->add_option("--family", a.family, "cournot | negfam | random | files")
      ->check(CLI::IsMember({"cournot", "negfam", "random", "files"}));
  cmd->add_option("--margin", a.margin, "Cournot demand intercept minus cost, as p/q");
  cmd->add_option("--slope", a.slope, "Cournot inverse-demand slope, as p/q");
  cmd->add_option("--eps", a.eps, "negative family epsilon in (0, 1), as p/q");
  cmd->add_option("--sign", a.sign, "random family externality sign")
      ->check(CLI::IsMember({"positive", "negative"}));
  cmd->add_option("--games", a.games, "game files for --family files");
}

pfg::Externality sign_arg(const std::string& s) {
  return s == "negative" ? pfg::Externality::Negative : pfg::Externality::Positive;
}

pfg::SymmetricGame make_game(const FamilyArgs& a, int n, std::uint64_t seed) {
  if (a.family == "cournot") {
    return pfg::cournot_game({rational_arg(a.margin, "--margin"), rational_arg(a.slope, "--slope")}, n);
  }
  if (a.family == "negfam") return pfg::neg_family_game({rational_arg(a.eps, "--eps")}, n);
  if (a.family == "random") {
    return pfg::random_symmetric_game(n, sign_arg(a.sign), seed, cap(pfg::kMaxRandomGameN));
  }
  throw UsageError("generate needs --family cournot, negfam or random");
}

pfg::GameFamily make_family(const FamilyArgs& a, int n_max, std::uint64_t seed) {
  if (a.family == "files") {
    if (a.games.empty()) throw UsageError("--family files needs --games");
    std::map<int, pfg::SymmetricGame> games;
    for (const auto& path : a.games) {
      auto g = pfg::io::load_game(path);
      const int n = g.n();
      if (!games.emplace(n, std::move(g)).second) {
        throw pfg::ParseError(path + ": a game with n = " + std::to_string(n) + " was already given");
      }
    }
    return pfg::GameFamily(std::move(games));
  }
  if (a.family == "cournot") {
    return pfg::cournot_family({rational_arg(a.margin, "--margin"), rational_arg(a.slope, "--slope")}, 3,
                               n_max);
  }
  if (a.family == "negfam") return pfg::neg_family({rational_arg(a.eps, "--eps")}, 3, n_max);
  if (n_max > cap(pfg::kMaxRandomGameN)) {
    throw pfg::SizeLimitError("random games are capped at n = " + std::to_string(cap(pfg::kMaxRandomGameN)));
  }
  return pfg::random_family(3, n_max, sign_arg(a.sign), pfg::derive_seed(seed, 0x67616d65));
}

// ---------------------------------------------------------------------------

int cmd_partitions(int n, bool shapes, const std::string& format) {
  Json listing = Json::array();
  std::vector<std::string> lines;
  if (shapes) {
    for (const auto& sh : pfg::enumerate_shapes(n)) {
      lines.push_back(sh.str());
      listing.push_back(pfg::io::shape_to_json(sh));
    }
  } else {
    for (const auto& p : pfg::enumerate_set_partitions(n, cap(pfg::kMaxSetPartitionN))) {
      lines.push_back(p.str());
      listing.push_back(p.blocks());
    }
  }
  if (format == "json") {
    std::cout << Json{{"n", n}, {"kind", shapes ? "shapes" : "set_partitions"},
                      {"count", listing.size()}, {"items", listing}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
    std::cerr << lines.size() << (shapes ? " shapes\n" : " set partitions\n");
  }
  return kExitOk;
}

int cmd_generate(const FamilyArgs& a, int n, std::uint64_t seed, const std::string& belief,
                 int s, const std::string& out) {
  std::string body;
  if (!belief.empty()) {
    if (s < 1) throw UsageError("--belief needs --s");
    auto h = belief == "gamma" ? pfg::gamma_belief(n, s) : pfg::delta_belief(n, s);
    body = pfg::io::belief_to_json(h).dump(2) + "\n";
  } else {
    body = pfg::io::game_to_json(make_game(a, n, seed)).dump(2) + "\n";
  }
  if (out.empty()) {
    std::cout << body;
  } else {
    write_text(out, body);
  }
  return kExitOk;
}

int cmd_check(const std::string& path, const std::string& format, bool require_yi) {
  const auto g = pfg::io::load_game(path);
  const auto eff = pfg::is_efficient(g);
  const auto ext = pfg::classify_externalities(g);
  const auto yi = pfg::check_yi_p2(g);
  std::optional<bool> symmetric;
  if (g.n() <= cap(pfg::kMaxExpandN)) {
    symmetric = pfg::compress(pfg::expand(g, cap(pfg::kMaxExpandN))) == g;
  }
  const bool monotone = ext.sign == pfg::Externality::Positive || ext.sign == pfg::Externality::Negative;
  const bool ok = eff.efficient && monotone && symmetric.value_or(true) && (!require_yi || yi.holds);

  auto merge_json = [](const std::optional<pfg::MergeWitness>& w) -> Json {
    if (!w) return nullptr;
    return Json{{"s", w->s},
                {"before", pfg::io::shape_to_json(w->before)},
                {"after", pfg::io::shape_to_json(w->after)},
                {"worth_before", pfg::to_string(w->worth_before)},
                {"worth_after", pfg::to_string(w->worth_after)}};
  };
  if (format == "json") {
    Json j{{"n", g.n()},
           {"efficient",
            Json{{"holds", eff.efficient},
                 {"violating_shape", eff.violating ? pfg::io::shape_to_json(*eff.violating) : Json(nullptr)},
                 {"tie", eff.tie}}},
           {"externalities",
            Json{{"sign", pfg::to_string(ext.sign)},
                 {"increase", merge_json(ext.increase)},
                 {"decrease", merge_json(ext.decrease)},
                 {"unchanged", merge_json(ext.unchanged)}}},
           {"yi_p2", Json{{"holds", yi.holds}}},
           {"symmetric_round_trip", symmetric ? Json(*symmetric) : Json(nullptr)},
           {"ok", ok}};
    if (yi.witness) {
      j["yi_p2"]["witness"] = Json{{"shape", pfg::io::shape_to_json(yi.witness->full)},
                                   {"smaller", yi.witness->smaller},
                                   {"larger", yi.witness->larger}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "game " << path << " (n = " << g.n() << ", grand " << pfg::to_string(g.grand()) << ")\n";
    std::cout << "  efficient       " << yes_no(eff.efficient);
    if (eff.violating) {
      std::cout << "  (shape " << eff.violating->str() << " totals " << pfg::to_string(eff.violating_total)
                << (eff.tie ? ", a tie" : "") << ")";
    }
    std::cout << "\n  externalities   " << pfg::to_string(ext.sign);
    for (const auto* w : {&ext.increase, &ext.decrease, &ext.unchanged}) {
      if (*w) {
        std::cout << "  [s=" << (*w)->s << " " << (*w)->before.str() << "->" << (*w)->after.str() << ": "
                  << pfg::to_string((*w)->worth_before) << " -> " << pfg::to_string((*w)->worth_after) << "]";
      }
    }
    std::cout << "\n  yi p.2          " << yes_no(yi.holds);
    if (yi.witness) {
      std::cout << "  (shape " << yi.witness->full.str() << ": size " << yi.witness->smaller << " earns "
                << pfg::to_string(yi.witness->smaller_per_member) << " per member, size " << yi.witness->larger
                << " earns " << pfg::to_string(yi.witness->larger_per_member) << ")";
    }
    std::cout << "\n  symmetric       " << (symmetric ? yes_no(*symmetric) : std::string("skipped"))
              << "\n";
  }
  return ok ? kExitOk : kExitFail;
}

int cmd_threshold(const std::string& path, const std::string& format) {
  const auto g = pfg::io::load_game(path);
  if (g.n() != 3) throw UsageError("threshold needs a 3-player game, got n = " + std::to_string(g.n()));
  const auto t = pfg::singleton_threshold(g);
  if (format == "json") {
    std::cout << pfg::report::threshold_to_json(t).dump(2) << "\n";
  } else if (t.kind == pfg::ThresholdResult::Kind::AtMost || t.kind == pfg::ThresholdResult::Kind::AtLeast) {
    std::cout << pfg::to_string(t.p) << "\n";
    std::cerr << "h(1) must be " << (t.kind == pfg::ThresholdResult::Kind::AtMost ? "<= " : ">= ")
              << pfg::to_string(t.p) << "\n";
  } else if (t.kind == pfg::ThresholdResult::Kind::AnyBelief) {
    std::cout << "AnyBelief\n";
  } else {
    std::cout << "NoBelief\n";
  }
  return kExitOk;
}

int cmd_core(const std::string& path, const std::vector<std::string>& belief_files, bool use_lp,
             const std::string& format) {
  const auto g = pfg::io::load_game(path);
  std::map<int, pfg::Belief> beliefs;
  for (const auto& file : belief_files) {
    for (auto& h : pfg::io::load_beliefs(file)) {
      if (h.n() != g.n()) continue;
      const int s = h.s();
      if (!beliefs.emplace(s, std::move(h)).second) {
        throw pfg::ParseError(file + ": second belief for s = " + std::to_string(s));
      }
    }
  }
  for (int s = 1; s < g.n(); ++s) {
    if (!beliefs.count(s)) throw UsageError("no belief for coalition size s = " + std::to_string(s));
  }
  const auto ig = pfg::induce(g, beliefs);
  const auto es = pfg::equal_split_in_core(ig);
  std::optional<pfg::CoreVerdict> lp;
  if (use_lp) lp = pfg::core_nonempty_lp(ig, cap(pfg::kMaxLpN));

  if (format == "json") {
    Json vh = Json::array();
    for (const auto& v : ig.worths()) vh.push_back(pfg::to_string(v));
    Json margins = Json::array();
    for (const auto& m : es.margins) margins.push_back(pfg::to_string(m));
    Json split = Json::array();
    for (const auto& z : pfg::equal_split(ig).payoffs) split.push_back(pfg::to_string(z));
    Json j{{"n", g.n()},
           {"grand", pfg::to_string(ig.grand())},
           {"vh", std::move(vh)},
           {"equal_split", std::move(split)},
           {"equal_split_in_core", es.in_core},
           {"blocking_size", es.witness ? Json(*es.witness) : Json(nullptr)},
           {"margins", std::move(margins)}};
    if (lp) {
      Json cert = nullptr;
      if (lp->certificate) {
        cert = Json::array();
        for (const auto& z : lp->certificate->payoffs) cert.push_back(pfg::to_string(z));
      }
      Json fam = Json::array();
      for (const auto& [c, w] : lp->blocking_family) fam.push_back(Json{{"coalition", c}, {"weight", pfg::to_string(w)}});
      j["lp"] = Json{{"nonempty", lp->nonempty}, {"certificate", cert}, {"blocking_family", fam}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "induced game n = " << g.n() << ", V(N) = " << pfg::to_string(ig.grand()) << "\n";
    for (int s = 1; s < g.n(); ++s) {
      std::cout << "  V^h(" << s << ") = " << pfg::to_string(ig.worth(s)) << "   margin "
                << pfg::to_string(es.margins[s - 1]) << "\n";
    }
    std::cout << "equal split " << pfg::to_string(ig.grand() / g.n()) << " each: "
              << (es.in_core ? "in core" : "blocked by s=" + std::to_string(*es.witness)) << "\n";
    if (lp) {
      std::cout << "lp: core " << (lp->nonempty ? "non-empty" : "empty");
      if (lp->certificate) {
        std::cout << ", certificate (";
        for (int i = 0; i < lp->certificate->n(); ++i) {
          std::cout << (i ? ", " : "") << pfg::to_string(lp->certificate->payoffs[i]);
        }
        std::cout << ")";
      }
      std::cout << "\n";
    }
  }
  const bool nonempty = lp ? lp->nonempty : es.in_core;
  return nonempty ? kExitOk : kExitFail;
}

struct VerifyArgs {
  FamilyArgs family;
  std::string mode = "prop1";
  int n_max = 8;
  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
  std::string json_path;
  std::string csv_path;
  std::string format = "text";
  bool approx = false;
  unsigned threads = 0;
  int lp_max_n = 7;
};

int cmd_verify(const VerifyArgs& a) {
  if (!a.seed && (a.samples > 0 || a.family.family == "random")) {
    throw UsageError("verify needs --seed whenever sampling is involved");
  }
  const std::uint64_t seed = a.seed.value_or(0);
  if (a.n_max < 3) throw UsageError("--n-max must be at least 3");
  if (a.n_max > cap(pfg::kMaxLpN)) {
    throw pfg::SizeLimitError("--n-max is capped at " + std::to_string(cap(pfg::kMaxLpN)));
  }
  auto family = make_family(a.family, a.n_max, seed);
  pfg::VerifyMode mode = a.mode == "prop2"    ? pfg::VerifyMode::Prop2
                         : a.mode == "mirror" ? pfg::VerifyMode::NegativeMirror
                                              : pfg::VerifyMode::Prop1;
  pfg::VerifyOptions opt;
  opt.max_n = cap(pfg::kMaxLpN);
  opt.lp_max_n = std::min(a.lp_max_n, cap(pfg::kMaxLpN));
  opt.threads = a.threads ? a.threads : std::max(1U, std::thread::hardware_concurrency());
  const auto rep = pfg::verify_proposition(family, mode, a.samples, seed, opt);

  const std::string json = pfg::report::to_json(rep, family).dump(2) + "\n";
  if (!a.json_path.empty()) write_text(a.json_path, json);
  if (!a.csv_path.empty()) write_text(a.csv_path, pfg::report::to_csv(rep));
  if (a.format == "json") {
    std::cout << json;
  } else if (a.format == "csv") {
    std::cout << pfg::report::to_csv(rep);
  } else {
    std::cout << pfg::report::to_text(rep, family, a.approx);
  }
  return pfg::exit_code(rep.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition function form games with probabilistic coalitional beliefs"};
  app.require_subcommand(1);
  std::string format = "text";

  auto* partitions = app.add_subcommand("partitions", "list set partitions or shapes");
  int part_n = 0;
  bool part_shapes = false;
  partitions->add_option("--n", part_n, "number of players")->required()->check(CLI::Range(1, 40));
  partitions->add_flag("--shapes", part_shapes, "list integer partitions instead");
  partitions->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* generate = app.add_subcommand("generate", "emit a game (or a gamma/delta belief) as JSON");
  FamilyArgs gen_family;
  int gen_n = 3;
  std::uint64_t gen_seed = 0;
  std::string gen_belief, gen_out;
  int gen_s = 0;
  add_family_options(generate, gen_family);
  generate->add_option("--n", gen_n, "number of players")->required()->check(CLI::Range(1, 40));
  auto* gen_seed_opt = generate->add_option("--seed", gen_seed, "seed for --family random");
  generate->add_option("--belief", gen_belief, "emit a belief instead: gamma | delta")
      ->check(CLI::IsMember({"gamma", "delta"}));
  generate->add_option("--s", gen_s, "coalition size for --belief");
  generate->add_option("-o,--output", gen_out, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "efficiency, externality sign, Yi P.2, symmetry");
  std::string check_path;
  bool require_yi = false;
  check->add_option("game", check_path, "game JSON file")->required();
  check->add_flag("--require-yi", require_yi, "fail unless Yi's P.2 condition holds");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* threshold = app.add_subcommand("threshold", "base-case bound on h(1) for a 3-player game");
  std::string thr_path;
  threshold->add_option("game", thr_path, "game JSON file")->required();
  threshold->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* core = app.add_subcommand("core", "induced game, equal split and core verdict");
  std::string core_path;
  std::vector<std::string> core_beliefs;
  bool core_lp = false;
  core->add_option("game", core_path, "game JSON file")->required();
  core->add_option("--beliefs", core_beliefs, "belief files (objects or arrays)")->required();
  core->add_flag("--lp", core_lp, "also decide non-emptiness by exact LP");
  core->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify", "audit hypotheses and sample admissible beliefs");
  VerifyArgs va;
  add_family_options(verify, va.family);
  verify->add_option("--mode", va.mode, "prop1 | prop2 | mirror")
      ->check(CLI::IsMember({"prop1", "prop2", "mirror"}));
  verify->add_option("--n-max", va.n_max, "largest player count");
  verify->add_option("--samples", va.samples, "belief families per coalition size");
  verify->add_option("--seed", va.seed, "seed for every random draw");
  verify->add_option("--json", va.json_path, "write the JSON report here");
  verify->add_option("--csv", va.csv_path, "write per-(n, s, sample) margins here");
  verify->add_option("--format", va.format, "stdout format")->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_flag("--approx", va.approx, "add display-only decimal approximations");
  verify->add_option("--threads", va.threads, "worker threads (0 = all cores)");
  verify->add_option("--lp-max-n", va.lp_max_n, "cross-check with the LP up to this n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*partitions) return cmd_partitions(part_n, part_shapes, format);
    if (*generate) {
      if (gen_family.family == "random" && gen_belief.empty() && gen_seed_opt->count() == 0) {
        throw UsageError("--family random needs --seed");
      }
      return cmd_generate(gen_family, gen_n, gen_seed, gen_belief, gen_s, gen_out);
    }
    if (*check) return cmd_check(check_path, format, require_yi);
    if (*threshold) return cmd_threshold(thr_path, format);
    if (*core) return cmd_core(core_path, core_beliefs, core_lp, format);
    if (*verify) return cmd_verify(va);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pfg::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pfg::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pfg::Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
