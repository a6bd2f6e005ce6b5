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

#ifndef PFG_RATIONAL_HPP
#define PFG_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "pfg/errors.hpp"

namespace pfg {

/// Exact rational in lowest terms with a positive denominator.
// Expression templates are off so `auto` never binds to a dangling expression.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw ArgumentError("zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Renders `r` as "p/q", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Parses "p/q" or "p" where p is an optionally signed decimal integer and
/// q a positive decimal integer. No whitespace is accepted.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const std::string quoted = "\"" + std::string(text) + "\"";
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos
                             ? std::string_view("1")
                             : text.substr(slash + 1);
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+')) {
    num_digits.remove_prefix(1);
  }
  if (!digits(num_digits) || !digits(den)) {
    throw ParseError("bad rational syntax " + quoted + " (expected \"p/q\")");
  }
  Integer p{std::string(num_digits)};
  Integer q{std::string(den)};
  if (q == 0) throw ParseError("zero denominator in " + quoted);
  if (num[0] == '-') p = -p;
  return Rational(p, q);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace pfg

#endif  // PFG_RATIONAL_HPP
