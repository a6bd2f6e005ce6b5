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

#ifndef PFG_LP_HPP
#define PFG_LP_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "pfg/errors.hpp"
#include "pfg/rational.hpp"

namespace pfg::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<Rational> coeffs;  // one per variable
  Sense sense = Sense::GreaterEqual;
  Rational rhs;
};

struct Problem {
  std::size_t num_vars = 0;
  std::vector<bool> free;  // empty means every variable is non-negative
  std::vector<Constraint> constraints;
};

/// Outcome of phase one. When infeasible, `farkas` holds one multiplier per
/// constraint (>= 0 on GreaterEqual rows, <= 0 on LessEqual rows) whose
/// combination has coefficients <= 0 on non-negative variables, == 0 on
/// free variables, and a strictly positive right-hand side.
struct Result {
  bool feasible = false;
  std::vector<Rational> x;
  std::vector<Rational> farkas;
  Rational infeasibility;  // optimal phase-one objective
  std::size_t pivots = 0;
};

namespace detail {

inline bool is_zero(const Rational& r) { return boost::multiprecision::sign(r) == 0; }

/// Dense tableau for min sum(artificials) s.t. A x = b, x >= 0, b >= 0.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : a_(rows, std::vector<Rational>(cols + 1)), cost_(cols + 1), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rational& rhs(std::size_t r) { return a_[r].back(); }
  std::vector<Rational>& cost() { return cost_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cost_.size() - 1; }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = a_[pr];
    const Rational inv = 1 / prow[pc];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (!is_zero(prow[j])) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (is_zero(row[pc])) return;
      const Rational factor = row[pc];
      for (std::size_t j : nz) row[j] -= factor * prow[j];
    };
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (r != pr) eliminate(a_[r]);
    }
    eliminate(cost_);
    basis_[pr] = pc;
  }

  /// Bland's rule: lowest-index improving column, ties in the ratio test to
  /// the lowest-index basic variable. Returns false at optimum.
  bool step() {
    std::size_t enter = cols();
    for (std::size_t j = 0; j < cols(); ++j) {
      if (boost::multiprecision::sign(cost_[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols()) return false;
    std::size_t leave = rows();
    Rational best;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (boost::multiprecision::sign(a_[r][enter]) <= 0) continue;
      Rational ratio = a_[r].back() / a_[r][enter];
      if (leave == rows() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
        leave = r;
        best = std::move(ratio);
      }
    }
    // phase one is bounded below by zero, so an improving column always has a row
    if (leave == rows()) throw Error("unbounded phase-one simplex");
    pivot(leave, enter);
    return true;
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> cost_;  // reduced costs; back() holds -objective
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact feasibility test by phase-one simplex over the rationals.
inline Result find_feasible_point(const Problem& p) {
  const std::size_t m = p.constraints.size();
  const std::size_t n = p.num_vars;
  std::vector<bool> is_free = p.free;
  is_free.resize(n, false);

  // structural columns: x_j (or x_j+ then x_j- when free)
  std::vector<std::size_t> pos_col(n), neg_col(n, std::numeric_limits<std::size_t>::max());
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (is_free[j]) neg_col[j] = cols++;
  }
  std::vector<int> flip(m, 1);
  std::vector<Sense> sense(m);
  std::size_t num_slack = 0, num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    if (c.coeffs.size() != n) throw ArgumentError("constraint width does not match variable count");
    sense[i] = c.sense;
    if (boost::multiprecision::sign(c.rhs) < 0) {
      flip[i] = -1;
      if (c.sense == Sense::LessEqual) sense[i] = Sense::GreaterEqual;
      else if (c.sense == Sense::GreaterEqual) sense[i] = Sense::LessEqual;
    }
    if (sense[i] != Sense::Equal) ++num_slack;
    if (sense[i] != Sense::LessEqual) ++num_art;
  }
  const std::size_t slack0 = cols;
  const std::size_t art0 = slack0 + num_slack;
  detail::Tableau t(m, art0 + num_art);

  // column initially basic in each row and its phase-one cost
  std::vector<std::size_t> init_col(m);
  std::vector<int> init_cost(m);
  std::size_t next_slack = slack0, next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (detail::is_zero(c.coeffs[j])) continue;
      t.at(i, pos_col[j]) = flip[i] * c.coeffs[j];
      if (is_free[j]) t.at(i, neg_col[j]) = -flip[i] * c.coeffs[j];
    }
    t.rhs(i) = flip[i] * c.rhs;
    if (sense[i] == Sense::LessEqual) {
      t.at(i, next_slack) = 1;
      init_col[i] = next_slack++;
      init_cost[i] = 0;
    } else {
      if (sense[i] == Sense::GreaterEqual) t.at(i, next_slack++) = -1;
      t.at(i, next_art) = 1;
      init_col[i] = next_art++;
      init_cost[i] = 1;
    }
    t.basis()[i] = init_col[i];
  }
  // reduced costs of min sum(artificials) with the initial basis priced out
  auto& cost = t.cost();
  for (std::size_t j = art0; j < art0 + num_art; ++j) cost[j] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (init_cost[i] == 0) continue;
    for (std::size_t j = 0; j <= t.cols(); ++j) {
      if (!detail::is_zero(t.at(i, j))) cost[j] -= t.at(i, j);
    }
  }

  Result res;
  while (t.step()) ++res.pivots;

  res.infeasibility = -cost.back();
  res.feasible = detail::is_zero(res.infeasibility);
  if (res.feasible) {
    std::vector<Rational> col_value(t.cols());
    for (std::size_t i = 0; i < m; ++i) col_value[t.basis()[i]] = t.rhs(i);
    res.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      res.x[j] = col_value[pos_col[j]];
      if (is_free[j]) res.x[j] -= col_value[neg_col[j]];
    }
  } else {
    // simplex multipliers y_i = c_init - reduced cost of the initial column
    res.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational y = init_cost[i] - cost[init_col[i]];
      res.farkas[i] = flip[i] * y;
    }
  }
  return res;
}

}  // namespace pfg::lp

#endif  // PFG_LP_HPP
