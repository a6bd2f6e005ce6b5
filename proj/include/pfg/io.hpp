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

#ifndef PFG_IO_HPP
#define PFG_IO_HPP

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfg/beliefs.hpp"
#include "pfg/errors.hpp"
#include "pfg/game.hpp"
#include "pfg/partitions.hpp"
#include "pfg/rational.hpp"

namespace pfg::io {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON text; syntax errors carry "source:line:column".
inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------------------
// Scalars.

inline Json shape_to_json(const Shape& sh) { return Json(sh.parts()); }

inline Shape shape_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an integer array");
  std::vector<int> parts;
  for (const auto& p : j) {
    if (!p.is_number_integer() || p.get<long long>() < 1 || p.get<long long>() > kMaxShapeK) {
      throw ParseError(where + ": shape parts must be positive integers");
    }
    parts.push_back(p.get<int>());
  }
  if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>())) {
    throw ParseError(where + ": shape parts must be sorted descending");
  }
  return Shape(std::move(parts));
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline int int_from_json(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(where + ": missing integer field \"" + key + "\"");
  }
  const auto v = j.at(key).get<long long>();
  if (v < 0 || v > 1000) throw ParseError(where + "." + key + ": out of range");
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// Games.

inline Json game_to_json(const SymmetricGame& g) {
  Json worths = Json::array();
  for (int s = 1; s <= g.n(); ++s) {
    for (const auto& out : enumerate_shapes(g.n() - s)) {
      worths.push_back(Json{{"s", s}, {"outsiders", shape_to_json(out)},
                            {"value", to_string(g.worth(s, out))}});
    }
  }
  return Json{{"n", g.n()}, {"worths", std::move(worths)}};
}

inline SymmetricGame game_from_json(const Json& j, const std::string& source = "game") {
  const int n = int_from_json(j, "n", source);
  if (!j.contains("worths") || !j.at("worths").is_array()) {
    throw ParseError(source + ": missing array field \"worths\"");
  }
  std::map<EmbeddedShape, Rational> table;
  const auto& arr = j.at("worths");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = source + ": worths[" + std::to_string(i) + "]";
    const auto& e = arr[i];
    const int s = int_from_json(e, "s", where);
    if (!e.contains("outsiders")) throw ParseError(where + ": missing field \"outsiders\"");
    if (!e.contains("value")) throw ParseError(where + ": missing field \"value\"");
    EmbeddedShape key{s, shape_from_json(e.at("outsiders"), where + ".outsiders")};
    if (key.s < 1 || key.n() != n) {
      throw ParseError(where + ": s=" + std::to_string(s) + " outsiders " + key.outsiders.str() +
                       " does not describe a " + std::to_string(n) + "-player game");
    }
    auto value = rational_from_json(e.at("value"), where + ".value");
    if (!table.emplace(key, std::move(value)).second) {
      throw ParseError(where + ": s=" + std::to_string(s) + " outsiders " + key.outsiders.str() +
                       " appears more than once");
    }
  }
  try {
    return SymmetricGame(n, std::move(table));
  } catch (const MalformedGameError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

inline SymmetricGame load_game(const std::string& path) {
  return game_from_json(parse_json(read_file(path), path), path);
}

// ---------------------------------------------------------------------------
// Beliefs.

inline Json belief_to_json(const Belief& h) {
  Json probs = Json::array();
  for (const auto& out : outsider_shapes(h.n(), h.s())) {
    auto p = h.prob(out);
    if (p != 0) probs.push_back(Json{{"outsiders", shape_to_json(out)}, {"p", to_string(p)}});
  }
  return Json{{"n", h.n()}, {"s", h.s()}, {"probs", std::move(probs)}};
}

inline Belief belief_from_json(const Json& j, const std::string& where) {
  const int n = int_from_json(j, "n", where);
  const int s = int_from_json(j, "s", where);
  if (!j.contains("probs") || !j.at("probs").is_array()) {
    throw ParseError(where + ": missing array field \"probs\"");
  }
  std::map<Shape, Rational> probs;
  const auto& arr = j.at("probs");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + ".probs[" + std::to_string(i) + "]";
    const auto& e = arr[i];
    if (!e.is_object() || !e.contains("outsiders") || !e.contains("p")) {
      throw ParseError(at + ": expected {\"outsiders\": [...], \"p\": \"p/q\"}");
    }
    Shape sh = shape_from_json(e.at("outsiders"), at + ".outsiders");
    if (!probs.emplace(sh, rational_from_json(e.at("p"), at + ".p")).second) {
      throw ParseError(at + ": shape " + sh.str() + " listed twice");
    }
  }
  try {
    return Belief(n, s, std::move(probs));
  } catch (const ArgumentError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Json family_to_json(const BeliefFamily& f) {
  Json arr = Json::array();
  for (const auto& [n, h] : f.entries()) arr.push_back(belief_to_json(h));
  return arr;
}

inline BeliefFamily family_from_json(const Json& j, const std::string& source) {
  if (!j.is_array() || j.empty()) throw ParseError(source + ": expected a non-empty array of beliefs");
  std::map<int, Belief> entries;
  std::optional<int> s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = source + "[" + std::to_string(i) + "]";
    Belief h = belief_from_json(j[i], where);
    if (s && *s != h.s()) throw ParseError(where + ": beliefs in one family must share s");
    s = h.s();
    const int n = h.n();
    if (!entries.emplace(n, std::move(h)).second) {
      throw ParseError(where + ": two beliefs for n = " + std::to_string(n));
    }
  }
  try {
    return BeliefFamily(*s, std::move(entries));
  } catch (const ArgumentError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

/// A file holding either one Belief object or an array of them.
inline std::vector<Belief> load_beliefs(const std::string& path) {
  Json j = parse_json(read_file(path), path);
  std::vector<Belief> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(belief_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(belief_from_json(j, path));
  }
  return out;
}

}  // namespace pfg::io

#endif  // PFG_IO_HPP
