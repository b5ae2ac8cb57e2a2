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
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "multifix/errors.hpp"
#include "multifix/format.hpp"

namespace multifix {

/// Absolute tolerance used when distances are computed rather than tabulated.
inline constexpr double kComputedTolerance = 1e-12;

/**
 * A set X with an evaluable map d : X x X -> [0, inf) such that
 * d(x,y) + d(y,x) = 0 exactly when x = y. Neither symmetry nor any triangle
 * inequality is assumed.
 *
 * `tolerance()` is the absolute slack used when comparing distances: zero for
 * tabulated data, kComputedTolerance for values produced by arithmetic.
 */
template <class S>
concept DistanceSpace = requires(const S& s, const typename S::point_type& p) {
  typename S::point_type;
  { s.distance(p, p) } -> std::convertible_to<double>;
  { s.contains(p) } -> std::convertible_to<bool>;
  { s.tolerance() } -> std::convertible_to<double>;
  { s.format(p) } -> std::convertible_to<std::string>;
};

/// Distance spaces over an enumerable carrier {0, ..., size()-1}.
template <class S>
concept FiniteDistanceSpace =
    DistanceSpace<S> && std::same_as<typename S::point_type, std::size_t> &&
    requires(const S& s, std::size_t i) {
      { s.size() } -> std::convertible_to<std::size_t>;
      { s.label(i) } -> std::convertible_to<std::string>;
    };

/**
 * Finite distance space over labelled points. Distances are either a dense
 * row-major table (row i holds d(point_i, .)) or a callable evaluated on
 * demand, which is how large product carriers are represented.
 */
class FiniteSpace {
 public:
  using point_type = std::size_t;
  using DistanceFn = std::function<double(std::size_t, std::size_t)>;

  /// Validates nonnegativity, the identity axiom and label uniqueness.
  FiniteSpace(std::vector<std::string> labels, std::vector<double> table,
              double tolerance = 0.0)
      : labels_(std::make_shared<std::vector<std::string>>(std::move(labels))),
        table_(std::make_shared<std::vector<double>>(std::move(table))),
        tolerance_(tolerance) {
    const std::size_t n = labels_->size();
    if (n == 0) throw ArgumentError("distance space needs at least one point");
    if (table_->size() != n * n) {
      throw ArgumentError("distance table has " +
                          std::to_string(table_->size()) + " entries, expected " +
                          std::to_string(n * n));
    }
    build_index();
    validate_axioms();
  }

  /// Callable-backed space. The caller guarantees the distance axioms; with
  /// `materialize` the callable is tabulated once up front.
  static FiniteSpace from_function(std::vector<std::string> labels,
                                   DistanceFn fn, double tolerance,
                                   bool materialize) {
    FiniteSpace s;
    s.labels_ = std::make_shared<std::vector<std::string>>(std::move(labels));
    s.tolerance_ = tolerance;
    const std::size_t n = s.labels_->size();
    if (materialize) {
      auto table = std::make_shared<std::vector<double>>(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) (*table)[i * n + j] = fn(i, j);
      s.table_ = std::move(table);
    } else {
      s.table_ = std::make_shared<std::vector<double>>();
      s.fn_ = std::move(fn);
    }
    s.build_index();
    return s;
  }

  std::size_t size() const noexcept { return labels_->size(); }
  bool contains(std::size_t p) const noexcept { return p < size(); }
  double tolerance() const noexcept { return tolerance_; }
  bool tabulated() const noexcept { return !fn_; }

  double distance(std::size_t x, std::size_t y) const {
    if (fn_) return fn_(x, y);
    return (*table_)[x * size() + y];
  }

  const std::string& label(std::size_t p) const { return (*labels_)[p]; }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  std::string format(std::size_t p) const {
    return p < size() ? label(p) : "#" + std::to_string(p);
  }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = index_->find(std::string(label));
    if (it == index_->end()) return std::nullopt;
    return it->second;
  }

  /// Index of `label`; DomainError if absent.
  std::size_t at(std::string_view label) const {
    if (auto p = find(label)) return *p;
    throw DomainError("unknown point '" + std::string(label) + "'");
  }

 private:
  FiniteSpace() = default;

  void build_index() {
    auto index = std::make_shared<std::unordered_map<std::string, std::size_t>>();
    for (std::size_t i = 0; i < labels_->size(); ++i) {
      if (!index->emplace((*labels_)[i], i).second)
        throw ArgumentError("duplicate point label '" + (*labels_)[i] + "'");
    }
    index_ = std::move(index);
  }

  void validate_axioms() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double d = distance(i, j);
        if (!(d >= 0.0) || std::isinf(d)) {
          throw PreconditionError("d(" + label(i) + "," + label(j) +
                                  ") = " + format_real(d) +
                                  " is not a finite nonnegative real");
        }
      }
      if (distance(i, i) > tolerance_) {
        throw PreconditionError("d(" + label(i) + "," + label(i) +
                                ") must be 0");
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (distance(i, j) + distance(j, i) <= tolerance_) {
          throw PreconditionError("d(" + label(i) + "," + label(j) + ") + d(" +
                                  label(j) + "," + label(i) +
                                  ") = 0 for distinct points");
        }
      }
    }
  }

  std::shared_ptr<const std::vector<std::string>> labels_;
  std::shared_ptr<const std::vector<double>> table_;
  std::shared_ptr<const std::unordered_map<std::string, std::size_t>> index_;
  DistanceFn fn_;
  double tolerance_ = 0.0;
};

/**
 * Continuous carrier: a box in R^k with a formula-backed distance. Points are
 * k-vectors. Completeness cannot be decided algorithmically, so it is carried
 * as a declared assumption.
 */
class BoxSpace {
 public:
  using point_type = std::vector<double>;
  using DistanceFn =
      std::function<double(std::span<const double>, std::span<const double>)>;

  enum class Norm { l1, linf, l2 };

  BoxSpace(std::vector<double> lower, std::vector<double> upper, DistanceFn fn,
           bool completeness_assumed, bool open_bounds = false)
      : lower_(std::move(lower)),
        upper_(std::move(upper)),
        fn_(std::move(fn)),
        complete_(completeness_assumed),
        open_(open_bounds) {
    if (lower_.empty() || lower_.size() != upper_.size())
      throw ArgumentError("box bounds must be nonempty and of equal dimension");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      if (!(lower_[i] <= upper_[i]))
        throw ArgumentError("box lower bound exceeds upper bound");
    }
  }

  /// Box [lo, hi]^dim under an l1, l-infinity or Euclidean distance.
  static BoxSpace with_norm(std::size_t dim, double lo, double hi, Norm norm,
                            bool completeness_assumed = true,
                            bool open_bounds = false) {
    return BoxSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi),
                    norm_distance(norm), completeness_assumed, open_bounds);
  }

  /// The interval [lo, hi] with d(x,y) = |x - y|.
  static BoxSpace interval(double lo, double hi, bool completeness_assumed = true,
                           bool open_bounds = false) {
    return with_norm(1, lo, hi, Norm::l1, completeness_assumed, open_bounds);
  }

  /// The whole real line with d(x,y) = |x - y|.
  static BoxSpace reals() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return interval(-inf, inf);
  }

  static DistanceFn norm_distance(Norm norm) {
    switch (norm) {
      case Norm::l1:
        return [](std::span<const double> a, std::span<const double> b) {
          double s = 0.0;
          for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
          return s;
        };
      case Norm::linf:
        return [](std::span<const double> a, std::span<const double> b) {
          double s = 0.0;
          for (std::size_t i = 0; i < a.size(); ++i)
            s = std::max(s, std::abs(a[i] - b[i]));
          return s;
        };
      case Norm::l2:
        break;
    }
    return [](std::span<const double> a, std::span<const double> b) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(s);
    };
  }

  std::size_t dimension() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  bool completeness_assumed() const noexcept { return complete_; }
  bool open_bounds() const noexcept { return open_; }
  double tolerance() const noexcept { return kComputedTolerance; }

  bool contains(const point_type& p) const noexcept {
    if (p.size() != dimension()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!std::isfinite(p[i])) return false;
      if (open_ ? !(p[i] > lower_[i] && p[i] < upper_[i])
                : !(p[i] >= lower_[i] && p[i] <= upper_[i]))
        return false;
    }
    return true;
  }

  double distance(const point_type& x, const point_type& y) const {
    return fn_(x, y);
  }

  std::string format(const point_type& p) const { return format_vector(p); }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  DistanceFn fn_;
  bool complete_;
  bool open_;
};

/// Membership of every classification flag. Axiom implications
/// (metric => symmetric and quasimetric, s => F => N) hold by construction.
struct DistanceClass {
  bool symmetric = false;
  bool quasimetric = false;
  bool metric = false;
  bool n_distance = false;
  bool f_distance = false;
  /// Smallest s >= 1 with d(x,y) <= s [d(x,z) + d(z,y)] for all triples.
  std::optional<double> s_distance;
  bool h_distance = false;
  /// A radius separating the balls of every pair of distinct points: half
  /// of the tightest pair's supremal separating radius.
  std::optional<double> h_delta;

  friend bool operator==(const DistanceClass&, const DistanceClass&) = default;
};

/// One `flag: yes|no` line per property.
inline std::string render(const DistanceClass& c) {
  auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  std::string out;
  out += "symmetric: " + yn(c.symmetric) + "\n";
  out += "quasimetric: " + yn(c.quasimetric) + "\n";
  out += "metric: " + yn(c.metric) + "\n";
  out += "n-distance: " + yn(c.n_distance) + "\n";
  out += "f-distance: " + yn(c.f_distance) + "\n";
  out += "s: " + (c.s_distance ? format_real(*c.s_distance) : std::string("none")) + "\n";
  out += "h-distance: " + yn(c.h_distance);
  if (c.h_delta) out += " (delta " + format_real(*c.h_delta) + ")";
  return out + "\n";
}

namespace detail {

template <DistanceSpace S>
void require_point(const S& space, const typename S::point_type& p,
                   const char* what) {
  if (!space.contains(p))
    throw DomainError(std::string(what) + " " + space.format(p) +
                      " lies outside the carrier");
}

/// Dense copy of the distance table of a finite space.
template <FiniteDistanceSpace S>
std::vector<double> distance_table(const S& space) {
  const std::size_t n = space.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = space.distance(i, j);
  return d;
}

}  // namespace detail

/// True iff d(center, y) < radius (the ball is open).
template <DistanceSpace S>
bool ball_contains(const S& space, const typename S::point_type& center,
                   double radius, const typename S::point_type& y) {
  if (!(radius > 0.0)) throw ArgumentError("ball radius must be positive");
  detail::require_point(space, center, "ball center");
  detail::require_point(space, y, "point");
  return space.distance(center, y) < radius;
}

/**
 * Decides every classification flag on a finite carrier by exhaustive
 * enumeration of pairs and triples.
 *
 * The N and F conditions quantify over all eps > 0. The worst outcome of the
 * premise d(x,y) <= delta, d(y,z) <= delta is non-decreasing in delta, so the
 * smallest admissible delta decides; among realized distance values and their
 * midpoints that is half the least positive distance, below which the
 * premise means d(x,y) = d(y,z) = 0. With an empty `epsilon_grid` every
 * eps > 0 is required; otherwise only the listed eps values are.
 */
template <FiniteDistanceSpace S>
DistanceClass classify_finite(const S& space,
                              std::span<const double> epsilon_grid = {}) {
  const std::size_t n = space.size();
  const double tol = space.tolerance();
  const std::vector<double> d = detail::distance_table(space);
  auto D = [&](std::size_t i, std::size_t j) { return d[i * n + j]; };
  auto is_zero = [&](double v) { return v <= tol; };

  for (double eps : epsilon_grid) {
    if (!(eps > 0.0)) throw ArgumentError("epsilon grid values must be positive");
  }

  DistanceClass c;
  c.symmetric = true;
  for (std::size_t i = 0; i < n && c.symmetric; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(D(i, j) - D(j, i)) > tol) {
        c.symmetric = false;
        break;
      }

  // Triangle inequality and the minimal relaxed-triangle constant in one pass.
  c.quasimetric = true;
  bool s_exists = true;
  double s = 1.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      const double dxz = D(x, z);
      for (std::size_t y = 0; y < n; ++y) {
        const double via = D(x, y) + D(y, z);
        if (dxz > via + tol) c.quasimetric = false;
        // Relaxed form d(x,y') <= s [d(x,z') + d(z',y')] with y' = z, z' = y.
        if (is_zero(via)) {
          if (!is_zero(dxz)) s_exists = false;
        } else if (s_exists) {
          s = std::max(s, dxz / via);
        }
      }
    }
  }
  c.metric = c.symmetric && c.quasimetric;
  if (s_exists) c.s_distance = s;

  // Worst d(x,z) reachable through two zero-length hops, per starting point.
  std::vector<double> worst(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!is_zero(D(x, y))) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (is_zero(D(y, z))) worst[x] = std::max(worst[x], D(x, z));
    }
  const double eps_floor =
      epsilon_grid.empty()
          ? 0.0
          : *std::min_element(epsilon_grid.begin(), epsilon_grid.end());
  auto within = [&](double w) {
    return epsilon_grid.empty() ? is_zero(w) : w <= eps_floor;
  };
  c.n_distance = std::all_of(worst.begin(), worst.end(), within);
  c.f_distance = within(*std::max_element(worst.begin(), worst.end()));

  // B(x,r) and B(y,r) intersect iff some z has max(d(x,z), d(y,z)) < r, so
  // the supremal separating radius of {x,y} is min_z max(d(x,z), d(y,z)).
  c.h_distance = true;
  double tightest = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < n && c.h_distance; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      double sep = std::numeric_limits<double>::infinity();
      for (std::size_t z = 0; z < n; ++z)
        sep = std::min(sep, std::max(D(x, z), D(y, z)));
      if (is_zero(sep)) {
        c.h_distance = false;
        break;
      }
      tightest = std::min(tightest, sep);
    }
  if (c.h_distance && n > 1) c.h_delta = tightest / 2.0;
  return c;
}

/// Continuous carriers cannot be classified exhaustively.
template <DistanceSpace S>
  requires(!FiniteDistanceSpace<S>)
DistanceClass classify_finite(const S&, std::span<const double> = {}) {
  throw UnsupportedError("classification requires a finite carrier");
}

/**
 * Finite-prefix surrogate for the Cauchy property: every distance, in both
 * orientations, among the last `tail` items is below `tol`. This says nothing
 * about the true limit behaviour of an infinite sequence.
 */
template <DistanceSpace S>
bool is_cauchy_prefix(const S& space,
                      std::span<const typename S::point_type> seq, double tol,
                      std::size_t tail) {
  if (tail == 0) throw ArgumentError("tail must be at least 1");
  if (tail > seq.size())
    throw ArgumentError("tail exceeds sequence length");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  for (const auto& p : seq) detail::require_point(space, p, "sequence item");
  const auto last = seq.subspan(seq.size() - tail);
  for (std::size_t i = 0; i < last.size(); ++i)
    for (std::size_t j = i + 1; j < last.size(); ++j) {
      if (!(space.distance(last[i], last[j]) < tol)) return false;
      if (!(space.distance(last[j], last[i]) < tol)) return false;
    }
  return true;
}

/// Prefix surrogate for convergence to `x`: d(x, item) < tol on the last
/// `tail` items. The orientation d(x, x_n) matters for asymmetric distances.
template <DistanceSpace S>
bool converges_to(const S& space, std::span<const typename S::point_type> seq,
                  const typename S::point_type& x, double tol,
                  std::size_t tail) {
  if (tail == 0) throw ArgumentError("tail must be at least 1");
  if (tail > seq.size())
    throw ArgumentError("tail exceeds sequence length");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  detail::require_point(space, x, "limit");
  for (const auto& p : seq) detail::require_point(space, p, "sequence item");
  for (const auto& p : seq.subspan(seq.size() - tail)) {
    if (!(space.distance(x, p) < tol)) return false;
  }
  return true;
}

}  // namespace multifix
