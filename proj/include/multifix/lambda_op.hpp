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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multifix/distance_space.hpp"
#include "multifix/errors.hpp"
#include "multifix/product.hpp"

namespace multifix {

/**
 * m index maps lambda_1..lambda_m : {1..m} -> {1..m}. Row i tells which
 * argument of x feeds each slot of F when computing the i-th output
 * coordinate. Stored 0-based; printed 1-based.
 */
class LambdaFamily {
 public:
  explicit LambdaFamily(std::vector<std::vector<std::size_t>> rows)
      : rows_(std::move(rows)) {
    const std::size_t m = rows_.size();
    if (m == 0) throw ArgumentError("lambda family needs at least one row");
    for (const auto& row : rows_) {
      if (row.size() != m)
        throw ArgumentError("lambda row has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(m));
      for (std::size_t v : row)
        if (v >= m) throw ArgumentError("lambda entry out of range");
    }
  }

  static LambdaFamily from_one_based(const std::vector<std::vector<std::size_t>>& rows) {
    std::vector<std::vector<std::size_t>> zero(rows);
    for (auto& row : zero)
      for (auto& v : row) {
        if (v == 0) throw ArgumentError("lambda entries are 1-based");
        --v;
      }
    return LambdaFamily(std::move(zero));
  }

  /// lambda_i = identity for every i.
  static LambdaFamily identity(std::size_t m) {
    std::vector<std::size_t> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = j;
    return LambdaFamily(std::vector<std::vector<std::size_t>>(m, row));
  }

  std::size_t arity() const noexcept { return rows_.size(); }
  const std::vector<std::size_t>& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<std::vector<std::size_t>>& rows() const noexcept { return rows_; }

  /// 1-based rows, e.g. `[[1,2],[2,1]]`.
  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) out += ',';
      out += '[';
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (j) out += ',';
        out += std::to_string(rows_[i][j] + 1);
      }
      out += ']';
    }
    return out + "]";
  }

  friend bool operator==(const LambdaFamily&, const LambdaFamily&) = default;

 private:
  std::vector<std::vector<std::size_t>> rows_;
};

/// lambda F (x, y) = (F(x,y), F(y,x)).
inline LambdaFamily coupled_preset() {
  return LambdaFamily::from_one_based({{1, 2}, {2, 1}});
}

/// lambda F (x, y, z) = (F(x,y,z), F(y,x,y), F(z,y,x)).
inline LambdaFamily tripled_preset() {
  return LambdaFamily::from_one_based({{1, 2, 3}, {2, 1, 2}, {3, 2, 1}});
}

/// An operator F : X^m -> X.
template <class P>
class MultiOperator {
 public:
  using Fn = std::function<P(std::span<const P>)>;

  MultiOperator(std::size_t arity, Fn fn) : arity_(arity), fn_(std::move(fn)) {
    if (arity == 0) throw ArgumentError("operator arity must be at least 1");
  }

  std::size_t arity() const noexcept { return arity_; }

  P operator()(std::span<const P> args) const {
    if (args.size() != arity_)
      throw ArgumentError("operator of arity " + std::to_string(arity_) + " applied to " +
                          std::to_string(args.size()) + " arguments");
    return fn_(args);
  }

 private:
  std::size_t arity_;
  Fn fn_;
};

/**
 * Finite operator given as a lookup table indexed by the canonical tuple
 * number (see TupleIndexer). Missing entries raise EvaluationError naming
 * the tuple.
 */
inline MultiOperator<std::size_t> table_operator(const FiniteSpace& space, std::size_t arity,
                                                 std::vector<std::optional<std::size_t>> table) {
  const TupleIndexer indexer(space.size(), arity);
  if (table.size() != indexer.count())
    throw ArgumentError("operator table has " + std::to_string(table.size()) +
                        " slots, expected " + std::to_string(indexer.count()));
  for (const auto& v : table)
    if (v && !space.contains(*v)) throw DomainError("operator table value outside the carrier");
  return MultiOperator<std::size_t>(
      arity, [space, indexer, table = std::move(table)](std::span<const std::size_t> args) {
        for (std::size_t a : args)
          if (!space.contains(a)) throw DomainError("operator argument outside the carrier");
        const auto& v = table[indexer.encode(args)];
        if (!v) {
          throw EvaluationError(
              "operator table has no entry for " +
              format_point(space, ProductPoint<std::size_t>(args.begin(), args.end())));
        }
        return *v;
      });
}

/// F with the same value everywhere.
template <class P>
MultiOperator<P> constant_operator(std::size_t arity, P value) {
  return MultiOperator<P>(arity, [value = std::move(value)](std::span<const P>) { return value; });
}

/// Lifts a scalar formula to an operator on one-dimensional box points.
inline MultiOperator<std::vector<double>> scalar_operator(
    std::size_t arity, std::function<double(std::span<const double>)> fn) {
  return MultiOperator<std::vector<double>>(
      arity, [arity, fn = std::move(fn)](std::span<const std::vector<double>> args) {
        std::vector<double> scalars(arity);
        for (std::size_t i = 0; i < arity; ++i) {
          if (args[i].size() != 1) throw ArgumentError("scalar operator needs 1-d points");
          scalars[i] = args[i][0];
        }
        return std::vector<double>{fn(scalars)};
      });
}

/// Applies a scalar formula to each component of k-dimensional points.
inline MultiOperator<std::vector<double>> componentwise_operator(
    std::size_t arity, std::function<double(std::span<const double>)> fn) {
  return MultiOperator<std::vector<double>>(
      arity, [arity, fn = std::move(fn)](std::span<const std::vector<double>> args) {
        const std::size_t k = args[0].size();
        std::vector<double> out(k), scalars(arity);
        for (std::size_t c = 0; c < k; ++c) {
          for (std::size_t i = 0; i < arity; ++i) {
            if (args[i].size() != k) throw ArgumentError("dimension mismatch in operator");
            scalars[i] = args[i][c];
          }
          out[c] = fn(scalars);
        }
        return out;
      });
}

/// (lambda F)(x)_i = F(x_{lambda_i(1)}, ..., x_{lambda_i(m)}).
template <class P>
ProductPoint<P> apply_lambda_f(const MultiOperator<P>& F, const LambdaFamily& lambda,
                               const ProductPoint<P>& x) {
  const std::size_t m = lambda.arity();
  if (F.arity() != m || x.size() != m)
    throw ArgumentError("arity mismatch: F has " + std::to_string(F.arity()) + ", lambda has " +
                        std::to_string(m) + ", point has " + std::to_string(x.size()));
  ProductPoint<P> y;
  y.reserve(m);
  std::vector<P> args(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lambda.row(i);
    for (std::size_t j = 0; j < m; ++j) args[j] = x[row[j]];
    y.push_back(F(std::span<const P>(args)));
  }
  return y;
}

/// lambda F evaluated once on every tuple of a finite carrier, canonical order.
class LambdaImageTable {
 public:
  LambdaImageTable(const FiniteSpace& space, const MultiOperator<std::size_t>& F,
                   const LambdaFamily& lambda, std::size_t cap = kDefaultCap)
      : indexer_(space.size(), lambda.arity(), cap) {
    const std::size_t m = lambda.arity();
    tuples_.resize(indexer_.count() * m);
    images_.resize(indexer_.count());
    ProductPoint<std::size_t> x(m);
    for (std::size_t i = 0; i < indexer_.count(); ++i) {
      indexer_.decode(i, std::span<std::size_t>(tuples_).subspan(i * m, m));
      x.assign(tuples_.begin() + i * m, tuples_.begin() + (i + 1) * m);
      images_[i] = indexer_.encode(apply_lambda_f(F, lambda, x));
    }
  }

  std::size_t count() const noexcept { return indexer_.count(); }
  std::size_t arity() const noexcept { return indexer_.arity(); }
  const TupleIndexer& indexer() const noexcept { return indexer_; }

  std::span<const std::size_t> tuple(std::size_t i) const {
    return std::span<const std::size_t>(tuples_).subspan(i * arity(), arity());
  }
  ProductPoint<std::size_t> point(std::size_t i) const {
    auto t = tuple(i);
    return {t.begin(), t.end()};
  }
  std::size_t image(std::size_t i) const { return images_[i]; }

 private:
  TupleIndexer indexer_;
  std::vector<std::size_t> tuples_;
  std::vector<std::size_t> images_;
};

template <class P>
struct FixedPointCertificate {
  ProductPoint<P> point;
  /// d-bar^m(a, lambda F(a)).
  double residual = 0.0;
  bool exact = false;
  /// residual <= tol.
  bool accepted = false;
};

template <DistanceSpace S>
FixedPointCertificate<typename S::point_type> is_multiple_fixed_point(
    const S& space, const MultiOperator<typename S::point_type>& F, const LambdaFamily& lambda,
    const ProductPoint<typename S::point_type>& a, double tol) {
  if (!(tol >= 0.0)) throw ArgumentError("tolerance must be nonnegative");
  const auto image = apply_lambda_f(F, lambda, a);
  FixedPointCertificate<typename S::point_type> cert;
  cert.point = a;
  cert.residual = sum_distance(space, a, image);
  cert.exact = cert.residual == 0.0;
  cert.accepted = cert.residual <= tol;
  return cert;
}

/**
 * Three readings of the "each lambda_i is onto" hypothesis. The literal
 * union of preimages over all targets always has m elements for a total
 * map, so checkers use per-row surjectivity or the union of images instead.
 */
struct SurjectivityReport {
  std::vector<bool> row_surjective;
  /// |union_j lambda_i^{-1}(j)| per row; always m.
  std::vector<std::size_t> preimage_union_size;
  bool literal_vacuous = true;
  /// Union over rows of the images equals {1..m}.
  bool union_of_images_full = false;

  bool all_rows_surjective() const {
    for (bool b : row_surjective)
      if (!b) return false;
    return true;
  }
};

inline SurjectivityReport surjectivity_report(const LambdaFamily& lambda) {
  const std::size_t m = lambda.arity();
  SurjectivityReport r;
  std::vector<bool> hit_any(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<bool> hit(m, false);
    for (std::size_t v : lambda.row(i)) hit[v] = hit_any[v] = true;
    bool onto = true;
    for (bool b : hit) onto = onto && b;
    r.row_surjective.push_back(onto);

    std::vector<bool> in_union(m, false);
    for (std::size_t target = 0; target < m; ++target)
      for (std::size_t s = 0; s < m; ++s)
        if (lambda.row(i)[s] == target) in_union[s] = true;
    std::size_t size = 0;
    for (bool b : in_union) size += b;
    r.preimage_union_size.push_back(size);
    r.literal_vacuous = r.literal_vacuous && size == m;
  }
  r.union_of_images_full = true;
  for (bool b : hit_any) r.union_of_images_full = r.union_of_images_full && b;
  return r;
}

}  // namespace multifix
