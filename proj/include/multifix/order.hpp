// Copyright 2026 The multifix Authors
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

#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "multifix/errors.hpp"

namespace multifix {

template <class O, class P>
concept PartialOrder = requires(const O& order, const P& a) {
  { order.leq(a, a) } -> std::convertible_to<bool>;
};

/**
 * Partial order on {0, ..., n-1} stored as a dense relation table.
 * Construction validates reflexivity, antisymmetry and transitivity.
 */
class FiniteOrder {
 public:
  /// `relation[i * n + j]` is true iff i <= j.
  FiniteOrder(std::size_t n, std::vector<bool> relation)
      : n_(n), leq_(std::move(relation)) {
    if (leq_.size() != n_ * n_)
      throw ArgumentError("order table size does not match carrier size");
    validate();
  }

  /// Reflexive-transitive closure of the listed pairs (i <= j).
  static FiniteOrder from_pairs(
      std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = true;
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) throw DomainError("order pair references unknown point");
      rel[a * n + b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (rel[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (rel[k * n + j]) rel[i * n + j] = true;
    return FiniteOrder(n, std::move(rel));
  }

  /// Equality only; no two distinct points are comparable.
  static FiniteOrder discrete(std::size_t n) { return from_pairs(n, {}); }

  /// 0 < 1 < ... < n-1.
  static FiniteOrder chain(std::size_t n) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) rel[i * n + j] = true;
    return FiniteOrder(n, std::move(rel));
  }

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b]; }
  bool comparable(std::size_t a, std::size_t b) const {
    return leq(a, b) || leq(b, a);
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!leq(i, i))
        throw PreconditionError("order is not reflexive at point " + std::to_string(i));
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && leq(i, j) && leq(j, i))
          throw PreconditionError("order is not antisymmetric: points " +
                                  std::to_string(i) + " and " + std::to_string(j));
        if (!leq(i, j)) continue;
        for (std::size_t k = 0; k < n_; ++k)
          if (leq(j, k) && !leq(i, k))
            throw PreconditionError("order is not transitive");
      }
    }
  }

  std::size_t n_;
  std::vector<bool> leq_;
};

/// Componentwise numeric order on R^k.
struct ComponentwiseOrder {
  bool leq(const std::vector<double>& a, const std::vector<double>& b) const {
    if (a.size() != b.size()) throw ArgumentError("dimension mismatch in order");
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i] <= b[i])) return false;
    return true;
  }
};

}  // namespace multifix
