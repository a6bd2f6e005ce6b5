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

#ifndef PFG_REPORT_HPP
#define PFG_REPORT_HPP

#include <cstdio>
#include <sstream>
#include <string>

#include "pfg/io.hpp"
#include "pfg/verify.hpp"

namespace pfg::report {

using io::Json;

inline Json rational_or_null(const std::optional<Rational>& r) {
  return r ? Json(to_string(*r)) : Json(nullptr);
}

inline Json threshold_to_json(const ThresholdResult& t) {
  Json j{{"kind", to_string(t.kind)}};
  j["p"] = (t.kind == ThresholdResult::Kind::AtMost || t.kind == ThresholdResult::Kind::AtLeast)
               ? Json(to_string(t.p))
               : Json(nullptr);
  j["equal_share"] = to_string(t.equal_share);
  j["gamma"] = to_string(t.gamma);
  j["delta"] = to_string(t.delta);
  return j;
}

inline Json regime_to_json(const RegimeReport& r) {
  return Json{{"n", r.n},
              {"s", r.s},
              {"regime", to_string(r.regime)},
              {"figure", to_string(r.figure)},
              {"bounds",
               Json{{"gamma_next", to_string(r.bounds.gamma_next)},
                    {"delta_next", to_string(r.bounds.delta_next)},
                    {"scaled_gamma", to_string(r.bounds.scaled_gamma)},
                    {"scaled_delta", to_string(r.bounds.scaled_delta)}}}};
}

inline Json audit_to_json(const HypothesisAudit& a, const GameFamily& f) {
  Json levels = Json::array();
  for (const auto& lv : a.levels) {
    Json j{{"n", lv.n},
           {"grand", to_string(f.at(lv.n).grand())},
           {"efficient", lv.efficiency.efficient},
           {"efficiency_violation",
            lv.efficiency.violating ? io::shape_to_json(*lv.efficiency.violating) : Json(nullptr)},
           {"efficiency_tie", lv.efficiency.tie},
           {"externalities", to_string(lv.sign)}};
    j["yi_p2"] = lv.yi ? Json(lv.yi->holds) : Json(nullptr);
    levels.push_back(std::move(j));
  }
  Json regimes = Json::array();
  for (const auto& r : a.regimes) regimes.push_back(regime_to_json(r));
  Json base = Json::array();
  for (const auto& b : a.base) {
    base.push_back(Json{{"s", b.s},
                        {"n", b.n},
                        {"lowest", to_string(b.lowest)},
                        {"share", to_string(b.share)},
                        {"ok", b.ok}});
  }
  return Json{{"ok", a.ok()},
              {"failures", a.failures},
              {"levels", std::move(levels)},
              {"grand_monotone", !a.grand_violation.has_value()},
              {"regimes", std::move(regimes)},
              {"mixed_regimes", a.mixed_regimes},
              {"threshold", a.threshold ? threshold_to_json(*a.threshold) : Json(nullptr)},
              {"base", std::move(base)}};
}

inline Json to_json(const VerificationReport& r, const GameFamily& f) {
  Json cex = Json::array();
  for (const auto& c : r.counterexamples) {
    Json beliefs = Json::object();
    for (const auto& [s, fam] : c.beliefs) beliefs[std::to_string(s)] = io::family_to_json(fam);
    Json margins = Json::array();
    for (const auto& m : c.margins) margins.push_back(to_string(m));
    cex.push_back(Json{{"sample", c.sample},
                       {"n", c.n},
                       {"kind", c.kind},
                       {"detail", c.detail},
                       {"game", io::game_to_json(f.at(c.n))},
                       {"beliefs", std::move(beliefs)},
                       {"margins", std::move(margins)}});
  }
  // lowest equal-split margin per (n, s)
  std::map<std::pair<int, int>, Rational> lowest;
  for (const auto& m : r.margins) {
    auto key = std::make_pair(m.n, m.s);
    auto it = lowest.find(key);
    if (it == lowest.end() || m.margin < it->second) lowest[key] = m.margin;
  }
  Json per_cell = Json::array();
  for (const auto& [key, m] : lowest) {
    per_cell.push_back(Json{{"n", key.first}, {"s", key.second}, {"min_margin", to_string(m)}});
  }
  return Json{{"mode", to_string(r.mode)},
              {"n_min", r.n_min},
              {"n_max", r.n_max},
              {"samples", r.samples},
              {"seed", r.seed},
              {"status", to_string(r.status)},
              {"exit_code", exit_code(r.status)},
              {"audit", audit_to_json(r.audit, f)},
              {"summary",
               Json{{"feasible_samples", r.samples - r.infeasible_samples},
                    {"families_sampled", r.families_sampled},
                    {"infeasible_samples", r.infeasible_samples},
                    {"levels_checked", r.levels_checked},
                    {"lp_checks", r.lp_checks},
                    {"lp_agreements", r.lp_agreements},
                    {"min_margin", rational_or_null(r.min_margin)},
                    {"counterexamples", r.counterexamples.size()}}},
              {"min_margins", std::move(per_cell)},
              {"counterexamples", std::move(cex)}};
}

/// n,s,sample,margin_num,margin_den,verdict
inline std::string to_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << "n,s,sample,margin_num,margin_den,verdict\n";
  for (const auto& m : r.margins) {
    out << m.n << ',' << m.s << ',' << m.sample << ',' << boost::multiprecision::numerator(m.margin)
        << ',' << boost::multiprecision::denominator(m.margin) << ','
        << (m.in_core ? "in_core" : "blocked") << '\n';
  }
  return out.str();
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string approx(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", to_double(r));
  return buf;
}

inline std::string to_text(const VerificationReport& r, const GameFamily& f, bool show_approx = false) {
  std::ostringstream out;
  out << "mode " << to_string(r.mode) << "  n " << r.n_min << ".." << r.n_max << "  samples "
      << r.samples << "  seed " << r.seed << "\n\n";
  out << "hypothesis audit\n";
  out << "  " << pad("n", 4) << pad("grand", 14) << pad("efficient", 11) << pad("externalities", 15)
      << "yi_p2\n";
  for (const auto& lv : r.audit.levels) {
    out << "  " << pad(std::to_string(lv.n), 4) << pad(to_string(f.at(lv.n).grand()), 14)
        << pad(lv.efficiency.efficient ? "yes" : "no", 11) << pad(to_string(lv.sign), 15)
        << (lv.yi ? (lv.yi->holds ? "yes" : "no") : "-") << "\n";
  }
  if (!r.audit.regimes.empty()) {
    out << "\n  " << pad("n", 4) << pad("s", 4) << pad("regime", 8) << pad("case", 6)
        << "gamma_next  delta_next  scaled_gamma  scaled_delta\n";
    for (const auto& g : r.audit.regimes) {
      out << "  " << pad(std::to_string(g.n), 4) << pad(std::to_string(g.s), 4)
          << pad(to_string(g.regime), 8) << pad(to_string(g.figure), 6)
          << pad(to_string(g.bounds.gamma_next), 12) << pad(to_string(g.bounds.delta_next), 12)
          << pad(to_string(g.bounds.scaled_gamma), 14) << to_string(g.bounds.scaled_delta) << "\n";
    }
  }
  if (r.audit.threshold) {
    const auto& t = *r.audit.threshold;
    out << "\n  base case n=3, s=1: " << to_string(t.kind);
    if (t.kind == ThresholdResult::Kind::AtMost || t.kind == ThresholdResult::Kind::AtLeast) {
      out << " " << to_string(t.p);
      if (show_approx) out << "  (approx " << approx(t.p) << ")";
    }
    out << "\n";
  }
  for (const auto& msg : r.audit.failures) out << "  FAIL " << msg << "\n";
  out << "\nsampling\n"
      << "  families sampled    " << r.families_sampled << "\n"
      << "  feasible samples    " << r.samples - r.infeasible_samples << "/" << r.samples << "\n"
      << "  infeasible samples  " << r.infeasible_samples << "\n"
      << "  levels checked      " << r.levels_checked << "\n"
      << "  lp agreements       " << r.lp_agreements << "/" << r.lp_checks << "\n";
  if (r.min_margin) {
    out << "  min margin          " << to_string(*r.min_margin);
    if (show_approx) out << "  (approx " << approx(*r.min_margin) << ")";
    out << "\n";
  }
  for (const auto& c : r.counterexamples) {
    out << "  COUNTEREXAMPLE sample " << c.sample << " n=" << c.n << " [" << c.kind << "] "
        << c.detail << "\n";
  }
  out << "\nstatus " << to_string(r.status) << "\n";
  return out.str();
}

}  // namespace pfg::report

#endif  // PFG_REPORT_HPP
