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

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multifix/distance_space.hpp"
#include "multifix/errors.hpp"
#include "multifix/order.hpp"

namespace multifix {

/// Default bound on |X|^m for anything that enumerates a product carrier.
inline constexpr std::size_t kDefaultCap = 1'000'000;

/// The cap from the MULTIFIX_CAP environment variable, or kDefaultCap.
inline std::size_t cap_from_env() {
  if (const char* v = std::getenv("MULTIFIX_CAP")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  return kDefaultCap;
}

template <class P>
using ProductPoint = std::vector<P>;

/// sup realizes d^m, sum realizes the summed distance d-bar^m.
enum class ProductKind { sup, sum };

inline const char* to_string(ProductKind kind) {
  return kind == ProductKind::sup ? "sup" : "sum";
}

/// (a,b,c)
template <DistanceSpace S>
std::string format_point(const S& space, const ProductPoint<typename S::point_type>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += space.format(x[i]);
  }
  out += ')';
  return out;
}

namespace detail {

template <DistanceSpace S>
double product_distance_span(const S& space, ProductKind kind,
                             std::span<const typename S::point_type> x,
                             std::span<const typename S::point_type> y) {
  if (x.size() != y.size() || x.empty())
    throw ArgumentError("product points have arities " + std::to_string(x.size()) +
                        " and " + std::to_string(y.size()));
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = space.distance(x[i], y[i]);
    r = kind == ProductKind::sup ? std::max(r, d) : r + d;
  }
  return r;
}

}  // namespace detail

template <DistanceSpace S>
double sup_distance(const S& space, const ProductPoint<typename S::point_type>& x,
                    const ProductPoint<typename S::point_type>& y) {
  return detail::product_distance_span<S>(space, ProductKind::sup, x, y);
}

template <DistanceSpace S>
double sum_distance(const S& space, const ProductPoint<typename S::point_type>& x,
                    const ProductPoint<typename S::point_type>& y) {
  return detail::product_distance_span<S>(space, ProductKind::sum, x, y);
}

template <DistanceSpace S>
double product_distance(const S& space, ProductKind kind,
                        const ProductPoint<typename S::point_type>& x,
                        const ProductPoint<typename S::point_type>& y) {
  return detail::product_distance_span<S>(space, kind, x, y);
}

/// n^m, or CapacityError when it exceeds `cap`.
inline std::size_t checked_power(std::size_t n, std::size_t m, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (n != 0 && count > cap / n) {
      throw CapacityError("|X|^m = " + std::to_string(n) + "^" + std::to_string(m) +
                              " exceeds the materialization cap " + std::to_string(cap),
                          cap);
    }
    count *= n;
  }
  if (count > cap) {
    throw CapacityError("|X|^m = " + std::to_string(n) + "^" + std::to_string(m) +
                            " exceeds the materialization cap " + std::to_string(cap),
                        cap);
  }
  return count;
}

/**
 * Canonical (lexicographic, first coordinate most significant) numbering of
 * the tuples of {0..n-1}^m.
 */
class TupleIndexer {
 public:
  TupleIndexer(std::size_t n, std::size_t m, std::size_t cap = kDefaultCap)
      : n_(n), m_(m), count_(checked_power(n, m, cap)) {
    if (m == 0) throw ArgumentError("arity must be at least 1");
  }

  std::size_t base() const noexcept { return n_; }
  std::size_t arity() const noexcept { return m_; }
  std::size_t count() const noexcept { return count_; }

  std::size_t encode(std::span<const std::size_t> tuple) const {
    std::size_t idx = 0;
    for (std::size_t v : tuple) idx = idx * n_ + v;
    return idx;
  }

  void decode(std::size_t index, std::span<std::size_t> out) const {
    for (std::size_t i = m_; i-- > 0;) {
      out[i] = index % n_;
      index /= n_;
    }
  }

  ProductPoint<std::size_t> decode(std::size_t index) const {
    ProductPoint<std::size_t> out(m_);
    decode(index, out);
    return out;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t count_;
};

/**
 * Lazy view of (X^m, d^m) or (X^m, d-bar^m): points are m-tuples and every
 * distance is evaluated on demand from the base space.
 */
template <DistanceSpace S>
class ProductSpace {
 public:
  using base_point = typename S::point_type;
  using point_type = ProductPoint<base_point>;

  ProductSpace(S base, std::size_t m, ProductKind kind)
      : base_(std::move(base)), m_(m), kind_(kind) {
    if (m == 0) throw ArgumentError("arity must be at least 1");
  }

  const S& base() const noexcept { return base_; }
  std::size_t arity() const noexcept { return m_; }
  ProductKind kind() const noexcept { return kind_; }

  double tolerance() const noexcept {
    return kind_ == ProductKind::sum ? std::max(base_.tolerance(), kComputedTolerance)
                                     : base_.tolerance();
  }

  bool contains(const point_type& p) const {
    if (p.size() != m_) return false;
    return std::all_of(p.begin(), p.end(), [&](const base_point& q) { return base_.contains(q); });
  }

  double distance(const point_type& x, const point_type& y) const {
    return product_distance(base_, kind_, x, y);
  }

  std::string format(const point_type& p) const { return format_point(base_, p); }

 private:
  S base_;
  std::size_t m_;
  ProductKind kind_;
};

/// Tables up to this many entries are filled eagerly when materializing.
inline constexpr std::size_t kEagerTableEntries = std::size_t{1} << 24;

/**
 * Enumerates the product carrier as a FiniteSpace labelled `(a,b,...)` in
 * canonical order. The distance table is filled eagerly when small enough and
 * otherwise evaluated per pair.
 */
inline FiniteSpace materialize(const ProductSpace<FiniteSpace>& product,
                               std::size_t cap = kDefaultCap) {
  const FiniteSpace& base = product.base();
  const TupleIndexer indexer(base.size(), product.arity(), cap);
  std::vector<std::string> labels;
  labels.reserve(indexer.count());
  for (std::size_t i = 0; i < indexer.count(); ++i)
    labels.push_back(format_point(base, indexer.decode(i)));

  const std::size_t n = base.size();
  const std::size_t m = product.arity();
  const ProductKind kind = product.kind();
  // place[k] is the weight of coordinate k, first coordinate most significant.
  std::vector<std::size_t> place(m, 1);
  for (std::size_t k = m - 1; k-- > 0;) place[k] = place[k + 1] * n;
  auto fn = [base, n, place, kind](std::size_t a, std::size_t b) {
    double r = 0.0;
    for (std::size_t w : place) {
      const double d = base.distance((a / w) % n, (b / w) % n);
      r = kind == ProductKind::sup ? std::max(r, d) : r + d;
    }
    return r;
  };
  const bool eager = indexer.count() <= kEagerTableEntries / indexer.count();
  return FiniteSpace::from_function(std::move(labels), fn, product.tolerance(), eager);
}

/// (X^m, d^m) or (X^m, d-bar^m) as a finite space; CapacityError above `cap`.
inline FiniteSpace product_space(const FiniteSpace& space, std::size_t m, ProductKind kind,
                                 std::size_t cap = kDefaultCap) {
  return materialize(ProductSpace<FiniteSpace>(space, m, kind), cap);
}

/// A box in R^k lifted to R^(k m); blocks of k coordinates are the factors.
inline BoxSpace product_space(const BoxSpace& space, std::size_t m, ProductKind kind) {
  if (m == 0) throw ArgumentError("arity must be at least 1");
  const std::size_t k = space.dimension();
  std::vector<double> lo, hi;
  for (std::size_t i = 0; i < m; ++i) {
    lo.insert(lo.end(), space.lower().begin(), space.lower().end());
    hi.insert(hi.end(), space.upper().begin(), space.upper().end());
  }
  auto fn = [space, k, m, kind](std::span<const double> a, std::span<const double> b) {
    double r = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::vector<double> x(a.begin() + i * k, a.begin() + (i + 1) * k);
      const std::vector<double> y(b.begin() + i * k, b.begin() + (i + 1) * k);
      const double d = space.distance(x, y);
      r = kind == ProductKind::sup ? std::max(r, d) : r + d;
    }
    return r;
  };
  return BoxSpace(std::move(lo), std::move(hi), fn, space.completeness_assumed(),
                  space.open_bounds());
}

/**
 * Subset L of {1..m}; coordinates in L compare forward under the induced
 * order on X^m and the remaining ones compare backward. Stored 0-based.
 */
class LSet {
 public:
  explicit LSet(std::size_t m) : in_(m, false) {
    if (m == 0) throw ArgumentError("arity must be at least 1");
  }

  /// From 1-based members, as written in problem files and reports.
  static LSet from_one_based(std::size_t m, const std::vector<std::size_t>& members) {
    LSet l(m);
    for (std::size_t v : members) {
      if (v < 1 || v > m)
        throw ArgumentError("L member " + std::to_string(v) + " outside 1.." + std::to_string(m));
      l.in_[v - 1] = true;
    }
    return l;
  }

  static LSet all(std::size_t m) {
    LSet l(m);
    l.in_.assign(m, true);
    return l;
  }

  /// Bit i of `mask` selects coordinate i (0-based).
  static LSet from_mask(std::size_t m, unsigned long mask) {
    LSet l(m);
    for (std::size_t i = 0; i < m; ++i) l.in_[i] = (mask >> i) & 1UL;
    return l;
  }

  std::size_t arity() const noexcept { return in_.size(); }
  bool contains(std::size_t i) const { return in_.at(i); }

  LSet complement() const {
    LSet l(arity());
    for (std::size_t i = 0; i < arity(); ++i) l.in_[i] = !in_[i];
    return l;
  }

  /// `L={1,3}`
  std::string to_string() const {
    std::string out = "L={";
    bool first = true;
    for (std::size_t i = 0; i < arity(); ++i) {
      if (!in_[i]) continue;
      if (!first) out += ',';
      out += std::to_string(i + 1);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const LSet&, const LSet&) = default;

 private:
  std::vector<bool> in_;
};

namespace detail {

template <class O, class P>
bool leq_L(const O& order, const LSet& L, std::span<const P> x, std::span<const P> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool ok = L.contains(i) ? order.leq(x[i], y[i]) : order.leq(y[i], x[i]);
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// x precedes y under the L-order: x_i <= y_i for i in L, y_j <= x_j otherwise.
template <class O, class P>
  requires PartialOrder<O, P>
bool compare_L(const O& order, const LSet& L, const ProductPoint<P>& x,
               const ProductPoint<P>& y) {
  if (x.size() != L.arity() || y.size() != L.arity())
    throw ArgumentError("product point arity does not match L");
  return detail::leq_L<O, P>(order, L, x, y);
}

struct EquivalenceReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  /// Position in the sample of the first failing pair.
  std::optional<std::size_t> counterexample;
  std::string detail;
};

/**
 * Checks the sandwich d^m <= d-bar^m <= m d^m on every sampled pair; this
 * bound is what makes the two product distances uniformly equivalent.
 */
template <DistanceSpace S>
EquivalenceReport check_uniform_equivalence(
    const S& space, std::size_t m,
    std::span<const std::pair<ProductPoint<typename S::point_type>,
                              ProductPoint<typename S::point_type>>> sample) {
  if (sample.empty()) throw ArgumentError("sample of product pairs must be nonempty");
  const double tol = space.tolerance();
  EquivalenceReport report;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& [x, y] = sample[i];
    if (x.size() != m || y.size() != m) throw ArgumentError("sample pair arity mismatch");
    const double sup = sup_distance(space, x, y);
    const double sum = sum_distance(space, x, y);
    ++report.pairs_checked;
    if (sup > sum + tol || sum > static_cast<double>(m) * sup + tol) {
      report.passed = false;
      report.counterexample = i;
      report.detail = "pair " + format_point(space, x) + ", " + format_point(space, y) +
                      ": sup=" + format_real(sup) + " sum=" + format_real(sum);
      return report;
    }
  }
  report.detail = "d^m <= sum <= " + std::to_string(m) + " d^m on " +
                  std::to_string(report.pairs_checked) + " pairs";
  return report;
}

struct CompletenessReport {
  bool complete = false;
  /// True when the verdict is a declared assumption rather than a fact.
  bool assumed = false;
};

/// Finite carriers are monotonically complete; for continuous carriers the
/// declared flag is returned.
template <class O>
CompletenessReport check_monotone_complete_surrogate(const FiniteSpace&, const O&) {
  return {true, false};
}

template <class O>
CompletenessReport check_monotone_complete_surrogate(const BoxSpace& space, const O&) {
  return {space.completeness_assumed(), true};
}

}  // namespace multifix
