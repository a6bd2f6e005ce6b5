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

#ifndef PFG_PARTITIONS_HPP
#define PFG_PARTITIONS_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pfg/errors.hpp"
#include "pfg/rational.hpp"

namespace pfg {

inline constexpr int kMaxSetPartitionN = 12;
inline constexpr int kMaxShapeK = 40;

/// Bitmask over players 1..n; bit i-1 is player i.
using Coalition = std::uint32_t;

/// Multiset of positive block sizes, kept sorted descending.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
      if (p < 1) throw ArgumentError("shape parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }
  Shape(std::initializer_list<int> parts) : Shape(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int k() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int size() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// Removes one occurrence of `part`.
  Shape without(int part) const {
    auto v = parts_;
    auto it = std::find(v.begin(), v.end(), part);
    if (it == v.end()) throw ArgumentError("shape has no part " + std::to_string(part));
    v.erase(it);
    return Shape(std::move(v));
  }

  Shape with(int part) const {
    auto v = parts_;
    v.push_back(part);
    return Shape(std::move(v));
  }

  /// Replaces the parts at positions i != j by their sum.
  Shape merged(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= size() || j >= size()) {
      throw ArgumentError("bad merge indices");
    }
    std::vector<int> v;
    v.reserve(parts_.size() - 1);
    for (int t = 0; t < size(); ++t) {
      if (t != i && t != j) v.push_back(parts_[t]);
    }
    v.push_back(parts_[i] + parts_[j]);
    return Shape(std::move(v));
  }

  /// "[2,1]"
  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(parts_[i]);
    }
    return out + "]";
  }

  friend auto operator<=>(const Shape&, const Shape&) = default;
  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> parts_;
};

/// A coalition of size `s` together with the shape of the outsiders'
/// partition. Houses the pair (S, pi) up to symmetry.
struct EmbeddedShape {
  int s = 1;
  Shape outsiders;

  int n() const { return s + outsiders.k(); }
  friend auto operator<=>(const EmbeddedShape&, const EmbeddedShape&) = default;
  friend bool operator==(const EmbeddedShape&, const EmbeddedShape&) = default;
};

/// Partition of {1..n} into non-empty blocks, canonically ordered: every
/// block sorted ascending, blocks sorted by least element.
class SetPartition {
 public:
  SetPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n < 0 || n > 32) throw ArgumentError("set partition size out of range");
    std::vector<int> seen(n + 1, 0);
    for (auto& b : blocks_) {
      if (b.empty()) throw ArgumentError("empty block in set partition");
      std::sort(b.begin(), b.end());
      for (int x : b) {
        if (x < 1 || x > n) throw ArgumentError("player out of range");
        if (seen[x]++) throw ArgumentError("blocks are not disjoint");
      }
    }
    for (int x = 1; x <= n; ++x) {
      if (!seen[x]) throw ArgumentError("blocks do not cover every player");
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  Coalition mask(std::size_t block) const {
    Coalition m = 0;
    for (int x : blocks_.at(block)) m |= Coalition{1} << (x - 1);
    return m;
  }

  /// Index of the block equal to `c`, or -1 when `c` is not a block.
  int find_block(Coalition c) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (mask(i) == c) return static_cast<int>(i);
    }
    return -1;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      out += i ? ",{" : "{";
      for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
        if (j) out += ",";
        out += std::to_string(blocks_[i][j]);
      }
      out += "}";
    }
    return out + "}";
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
};

/// All set partitions of {1..n} in restricted-growth-string order.
inline std::vector<SetPartition> enumerate_set_partitions(int n,
                                                         int cap = kMaxSetPartitionN) {
  if (n < 1) throw ArgumentError("enumerate_set_partitions needs n >= 1");
  if (n > cap) {
    throw SizeLimitError("set partition enumeration capped at n = " + std::to_string(cap) +
                         ", got n = " + std::to_string(n));
  }
  std::vector<SetPartition> out;
  // rgs[i] is the block of player i+1; top[i] = max(rgs[0..i]).
  std::vector<int> rgs(n, 0), top(n, 0);
  for (;;) {
    std::vector<std::vector<int>> blocks(top[n - 1] + 1);
    for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
    out.emplace_back(n, std::move(blocks));

    int i = n - 1;
    while (i > 0 && rgs[i] == top[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    top[i] = std::max(top[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      top[j] = top[i];
    }
  }
  return out;
}

namespace detail {
inline void shapes_rec(int remaining, int max_part, std::vector<int>& cur,
                       std::vector<Shape>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    shapes_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// Integer partitions of k in descending lexicographic order.
inline std::vector<Shape> enumerate_shapes(int k) {
  if (k < 0 || k > kMaxShapeK) {
    throw SizeLimitError("shape enumeration needs 0 <= k <= " + std::to_string(kMaxShapeK));
  }
  std::vector<Shape> out;
  std::vector<int> cur;
  detail::shapes_rec(k, k, cur, out);
  return out;
}

inline Shape shape_of(const SetPartition& p) {
  std::vector<int> sizes;
  for (const auto& b : p.blocks()) sizes.push_back(static_cast<int>(b.size()));
  return Shape(std::move(sizes));
}

/// Number of set partitions of a k-set whose block sizes form `sh`.
inline Integer shape_multiplicity(const Shape& sh) {
  auto factorial = [](int m) {
    Integer f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  Integer den = 1;
  std::map<int, int> mult;
  for (int p : sh.parts()) {
    den *= factorial(p);
    ++mult[p];
  }
  for (const auto& [part, count] : mult) den *= factorial(count);
  return factorial(sh.k()) / den;
}

/// Shapes the n - s outsiders of a size-s coalition can form.
inline std::vector<Shape> outsider_shapes(int n, int s) {
  if (s < 1 || s > n) {
    throw ArgumentError("outsider_shapes needs 1 <= s <= n (n = " + std::to_string(n) +
                        ", s = " + std::to_string(s) + ")");
  }
  return enumerate_shapes(n - s);
}

}  // namespace pfg

#endif  // PFG_PARTITIONS_HPP
