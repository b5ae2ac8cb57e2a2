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

// Exhaustive (finite) and sampled (continuous) checkers for the hypothesis
// sets that guarantee uniqueness or existence of multiple fixed points:
// the symmetric-contraction sets Omega1..Omega4, the Meir-Keeler sets MK1/MK2,
// and the Meir-Keeler operator condition on lambda F.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multifix/distance_space.hpp"
#include "multifix/errors.hpp"
#include "multifix/format.hpp"
#include "multifix/lambda_op.hpp"
#include "multifix/order.hpp"
#include "multifix/product.hpp"

namespace multifix {

enum class ConditionId { omega1, omega2, omega3, omega4, mk1, mk2, mk_space, mk_operator };

inline const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::omega1: return "omega1";
    case ConditionId::omega2: return "omega2";
    case ConditionId::omega3: return "omega3";
    case ConditionId::omega4: return "omega4";
    case ConditionId::mk1: return "mk1";
    case ConditionId::mk2: return "mk2";
    case ConditionId::mk_space: return "mk-space";
    case ConditionId::mk_operator: return "mk-op";
  }
  return "?";
}

inline ConditionId omega_id(int variant) {
  switch (variant) {
    case 1: return ConditionId::omega1;
    case 2: return ConditionId::omega2;
    case 3: return ConditionId::omega3;
    case 4: return ConditionId::omega4;
    default: throw ArgumentError("omega variant must be 1..4");
  }
}

enum class Verdict { pass, fail, sampled_pass };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::sampled_pass: return "sampled-pass";
  }
  return "?";
}

struct ClauseResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

/// Outcome of one hypothesis set; `fail` always carries a counterexample.
struct ConditionReport {
  ConditionId id = ConditionId::omega1;
  Verdict verdict = Verdict::pass;
  std::string failed_clause;
  std::optional<std::string> counterexample;
  std::vector<ClauseResult> clauses;
  bool exhaustive = true;
  std::optional<std::uint64_t> seed;
  std::size_t sample_size = 0;
  std::size_t pairs_checked = 0;

  bool passed() const noexcept { return verdict != Verdict::fail; }

  void add(ClauseResult clause) {
    if (clause.verdict == Verdict::fail && verdict != Verdict::fail) {
      verdict = Verdict::fail;
      failed_clause = clause.name;
      counterexample = clause.detail;
    } else if (clause.verdict == Verdict::sampled_pass && verdict == Verdict::pass) {
      verdict = Verdict::sampled_pass;
    }
    clauses.push_back(std::move(clause));
  }
};

/// Clause-by-clause text with a final verdict line.
inline std::string render(const ConditionReport& r) {
  std::string out = "condition=" + std::string(to_string(r.id)) + "\n";
  for (const auto& c : r.clauses) {
    out += "clause " + c.name + ": " + to_string(c.verdict);
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
  }
  switch (r.verdict) {
    case Verdict::pass:
      out += "PASS (exhaustive)\n";
      break;
    case Verdict::sampled_pass:
      out += "SAMPLED-PASS seed=" + std::to_string(r.seed.value_or(0)) +
             " n=" + std::to_string(r.sample_size) + "\n";
      break;
    case Verdict::fail:
      out += "FAIL clause: " + r.failed_clause + "; witness: " + r.counterexample.value_or("") + "\n";
      break;
  }
  return out;
}

// --- order-structure clauses -------------------------------------------------

struct LatticeReport {
  bool is_lattice = true;
  /// join[a * n + b], meet[a * n + b]; empty optional where none exists.
  std::vector<std::optional<std::size_t>> join;
  std::vector<std::optional<std::size_t>> meet;
  std::optional<std::pair<std::size_t, std::size_t>> offending;
  /// "join" or "meet" for the offending pair.
  std::string missing;
};

namespace detail {

/// Least element of `candidates` under `order`, if one exists.
inline std::optional<std::size_t> least_of(const FiniteOrder& order,
                                           const std::vector<std::size_t>& candidates,
                                           bool greatest) {
  for (std::size_t c : candidates) {
    bool extreme = true;
    for (std::size_t o : candidates) {
      if (greatest ? !order.leq(o, c) : !order.leq(c, o)) {
        extreme = false;
        break;
      }
    }
    if (extreme) return c;
  }
  return std::nullopt;
}

inline std::string pair_text(const FiniteSpace* space, std::size_t a, std::size_t b) {
  if (space) return "(" + space->label(a) + "," + space->label(b) + ")";
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace detail

/// Every pair must have a unique least upper and greatest lower bound.
inline LatticeReport check_lattice(const FiniteOrder& order) {
  const std::size_t n = order.size();
  LatticeReport r;
  r.join.resize(n * n);
  r.meet.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> upper, lower;
      for (std::size_t c = 0; c < n; ++c) {
        if (order.leq(a, c) && order.leq(b, c)) upper.push_back(c);
        if (order.leq(c, a) && order.leq(c, b)) lower.push_back(c);
      }
      r.join[a * n + b] = detail::least_of(order, upper, false);
      r.meet[a * n + b] = detail::least_of(order, lower, true);
      if (r.is_lattice && (!r.join[a * n + b] || !r.meet[a * n + b])) {
        r.is_lattice = false;
        r.offending = {a, b};
        r.missing = r.join[a * n + b] ? "meet" : "join";
      }
    }
  return r;
}

struct BoundsReport {
  bool passed = true;
  std::optional<std::pair<std::size_t, std::size_t>> offending;
  /// "upper" or "lower".
  std::string missing;
};

/// Every pair has some upper bound and some lower bound.
inline BoundsReport check_bounds_exist(const FiniteOrder& order) {
  const std::size_t n = order.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool up = false, low = false;
      for (std::size_t c = 0; c < n && !(up && low); ++c) {
        up = up || (order.leq(a, c) && order.leq(b, c));
        low = low || (order.leq(c, a) && order.leq(c, b));
      }
      if (!up || !low) return {false, std::pair{a, b}, up ? "lower" : "upper"};
    }
  return {};
}

struct CompatReport {
  bool passed = true;
  std::size_t chains_checked = 0;
  std::optional<std::string> counterexample;
};

/// x <= y <= z implies d(x,y) + d(y,x) <= d(x,z) + d(z,x), over all chains.
template <FiniteDistanceSpace S>
CompatReport check_order_distance_compat(const S& space, const FiniteOrder& order) {
  const std::size_t n = space.size();
  if (order.size() != n) throw ArgumentError("order and space have different carriers");
  const double tol = space.tolerance();
  CompatReport r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!order.leq(x, y)) continue;
      const double inner = space.distance(x, y) + space.distance(y, x);
      for (std::size_t z = 0; z < n; ++z) {
        if (!order.leq(y, z)) continue;
        ++r.chains_checked;
        const double outer = space.distance(x, z) + space.distance(z, x);
        if (inner > outer + tol) {
          r.passed = false;
          r.counterexample = "(" + space.format(x) + "," + space.format(y) + "," +
                             space.format(z) + "): " + format_real(inner) + " > " +
                             format_real(outer);
          return r;
        }
      }
    }
  return r;
}

// --- sampling ----------------------------------------------------------------

/// Portable uniform double in [0, 1) from a 64-bit engine.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace detail {

inline std::vector<double> random_box_point(const BoxSpace& space, std::mt19937_64& rng) {
  for (;;) {
    std::vector<double> p(space.dimension());
    for (std::size_t c = 0; c < p.size(); ++c)
      p[c] = space.lower()[c] + unit_uniform(rng) * (space.upper()[c] - space.lower()[c]);
    if (space.contains(p)) return p;
  }
}

}  // namespace detail

template <class P>
struct PairSample {
  std::vector<std::pair<ProductPoint<P>, ProductPoint<P>>> pairs;
  std::uint64_t seed = 0;
};

/**
 * `count` pairs (x, y) of points of the box^m with x preceding y under the
 * L-order: both endpoints are drawn uniformly, then every component is
 * sorted into the required direction.
 */
inline PairSample<std::vector<double>> sample_comparable_pairs(const BoxSpace& space,
                                                               std::size_t m, const LSet& L,
                                                               std::size_t count,
                                                               std::uint64_t seed) {
  if (L.arity() != m) throw ArgumentError("L arity does not match m");
  std::mt19937_64 rng(seed);
  PairSample<std::vector<double>> sample;
  sample.seed = seed;
  sample.pairs.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    ProductPoint<std::vector<double>> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = detail::random_box_point(space, rng);
      y[i] = detail::random_box_point(space, rng);
      for (std::size_t c = 0; c < space.dimension(); ++c) {
        auto [lo, hi] = std::minmax(x[i][c], y[i][c]);
        x[i][c] = L.contains(i) ? lo : hi;
        y[i][c] = L.contains(i) ? hi : lo;
      }
    }
    sample.pairs.emplace_back(std::move(x), std::move(y));
  }
  return sample;
}

// --- Omega conditions --------------------------------------------------------

namespace detail {

inline bool omega_isotone(int variant) { return variant == 1 || variant == 3; }
inline ProductKind omega_kind(int variant) {
  return variant <= 2 ? ProductKind::sup : ProductKind::sum;
}

inline ClauseResult surjectivity_clause(const LambdaFamily& lambda) {
  const SurjectivityReport s = surjectivity_report(lambda);
  ClauseResult c{"lambda surjectivity", Verdict::pass, ""};
  if (s.all_rows_surjective()) {
    c.detail = "every row is onto";
  } else if (s.union_of_images_full) {
    c.detail = "union of row images is full (rows not all onto)";
  } else {
    c.verdict = Verdict::fail;
    c.detail = "lambda=" + lambda.to_string() + ": no row-wise surjection and union of images incomplete";
  }
  return c;
}

/// Pair clauses shared by every Omega variant: monotone images and the strict
/// symmetric-sum contraction in the variant's product distance.
struct OmegaPairState {
  std::optional<std::string> monotone_fail;
  std::optional<std::string> contraction_fail;
  std::size_t pairs = 0;
};

template <DistanceSpace S>
void omega_check_pair(const S& space, int variant, double margin, OmegaPairState& st,
                      std::span<const typename S::point_type> x,
                      std::span<const typename S::point_type> y,
                      std::span<const typename S::point_type> fx,
                      std::span<const typename S::point_type> fy, bool monotone_ok,
                      const std::function<std::string()>& describe) {
  ++st.pairs;
  if (!st.monotone_fail && !monotone_ok) st.monotone_fail = describe();
  if (!st.contraction_fail) {
    const ProductKind kind = omega_kind(variant);
    const double before = product_distance_span<S>(space, kind, x, y) +
                          product_distance_span<S>(space, kind, y, x);
    const double after = product_distance_span<S>(space, kind, fx, fy) +
                         product_distance_span<S>(space, kind, fy, fx);
    if (!(after + margin < before))
      st.contraction_fail = describe() + ": " + format_real(after) + " >= " + format_real(before);
  }
}

inline void omega_finish(ConditionReport& report, int variant, const OmegaPairState& st,
                         Verdict ok) {
  report.pairs_checked = st.pairs;
  const char* mono = omega_isotone(variant) ? "isotone images" : "antitone images";
  report.add({mono, st.monotone_fail ? Verdict::fail : ok, st.monotone_fail.value_or("")});
  report.add({"strict contraction", st.contraction_fail ? Verdict::fail : ok,
              st.contraction_fail.value_or("")});
}

}  // namespace detail

/**
 * Exhaustive check of Omega_variant on a finite instance. Clauses run in
 * order: lattice, order/distance compatibility, lambda surjectivity
 * (variants 3 and 4), then for every pair x != y with x preceding y under
 * the L-order: monotone images (isotone for 1 and 3, antitone for 2 and 4)
 * and the strict symmetric-sum contraction in d^m (1, 2) or d-bar^m (3, 4).
 */
inline ConditionReport check_omega(const FiniteSpace& space, const FiniteOrder& order,
                                   const MultiOperator<std::size_t>& F,
                                   const LambdaFamily& lambda, const LSet& L, int variant,
                                   std::size_t cap = kDefaultCap) {
  ConditionReport report;
  report.id = omega_id(variant);
  if (order.size() != space.size()) throw ArgumentError("order and space have different carriers");
  if (L.arity() != lambda.arity()) throw ArgumentError("L arity does not match lambda");
  const LambdaImageTable table(space, F, lambda, cap);

  const LatticeReport lat = check_lattice(order);
  report.add({"lattice", lat.is_lattice ? Verdict::pass : Verdict::fail,
              lat.is_lattice ? ""
                             : "pair " + detail::pair_text(&space, lat.offending->first,
                                                           lat.offending->second) +
                                   " lacks a " + lat.missing});
  const CompatReport compat = check_order_distance_compat(space, order);
  report.add({"order-distance compatibility", compat.passed ? Verdict::pass : Verdict::fail,
              compat.counterexample.value_or("")});
  if (variant >= 3) report.add(detail::surjectivity_clause(lambda));

  detail::OmegaPairState st;
  const bool iso = detail::omega_isotone(variant);
  for (std::size_t a = 0; a < table.count(); ++a) {
    for (std::size_t b = 0; b < table.count(); ++b) {
      if (a == b) continue;
      const auto x = table.tuple(a), y = table.tuple(b);
      if (!detail::leq_L(order, L, x, y)) continue;
      const auto fx = table.tuple(table.image(a)), fy = table.tuple(table.image(b));
      const bool mono = iso ? detail::leq_L(order, L, fx, fy) : detail::leq_L(order, L, fy, fx);
      detail::omega_check_pair<FiniteSpace>(
          space, variant, space.tolerance(), st, x, y, fx, fy, mono, [&] {
            return "x=" + format_point(space, table.point(a)) + " y=" +
                   format_point(space, table.point(b)) + " images " +
                   format_point(space, table.point(table.image(a))) + "," +
                   format_point(space, table.point(table.image(b)));
          });
      if (st.monotone_fail && st.contraction_fail) break;
    }
    if (st.monotone_fail && st.contraction_fail) break;
  }
  detail::omega_finish(report, variant, st, Verdict::pass);
  return report;
}

/**
 * Sampled check of Omega_variant on a box with the componentwise order,
 * which is always a lattice. Compatibility is checked on `samples` random
 * chains and the pair clauses on `samples` random L-comparable pairs.
 */
inline ConditionReport check_omega(const BoxSpace& space, const ComponentwiseOrder& order,
                                   const MultiOperator<std::vector<double>>& F,
                                   const LambdaFamily& lambda, const LSet& L, int variant,
                                   std::size_t samples, std::uint64_t seed) {
  using Vec = std::vector<double>;
  ConditionReport report;
  report.id = omega_id(variant);
  report.exhaustive = false;
  report.seed = seed;
  report.sample_size = samples;
  const std::size_t m = lambda.arity();
  if (L.arity() != m) throw ArgumentError("L arity does not match lambda");

  report.add({"lattice", Verdict::pass, "componentwise order on a box (meet=min, join=max)"});

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::optional<std::string> compat_fail;
  for (std::size_t s = 0; s < samples && !compat_fail; ++s) {
    Vec p[3] = {detail::random_box_point(space, rng), detail::random_box_point(space, rng),
                detail::random_box_point(space, rng)};
    for (std::size_t c = 0; c < space.dimension(); ++c) {
      double v[3] = {p[0][c], p[1][c], p[2][c]};
      std::sort(v, v + 3);
      for (int k = 0; k < 3; ++k) p[k][c] = v[k];
    }
    const double inner = space.distance(p[0], p[1]) + space.distance(p[1], p[0]);
    const double outer = space.distance(p[0], p[2]) + space.distance(p[2], p[0]);
    if (inner > outer + space.tolerance())
      compat_fail = "(" + space.format(p[0]) + "," + space.format(p[1]) + "," +
                    space.format(p[2]) + "): " + format_real(inner) + " > " + format_real(outer);
  }
  report.add({"order-distance compatibility",
              compat_fail ? Verdict::fail : Verdict::sampled_pass, compat_fail.value_or("")});
  if (variant >= 3) report.add(detail::surjectivity_clause(lambda));

  const auto sample = sample_comparable_pairs(space, m, L, samples, seed);
  detail::OmegaPairState st;
  const bool iso = detail::omega_isotone(variant);
  for (const auto& [x, y] : sample.pairs) {
    if (x == y) continue;
    const auto fx = apply_lambda_f(F, lambda, x), fy = apply_lambda_f(F, lambda, y);
    const bool mono = iso ? compare_L(order, L, fx, fy) : compare_L(order, L, fy, fx);
    detail::omega_check_pair<BoxSpace>(space, variant, space.tolerance(), st, x, y, fx, fy,
                                       mono, [&] {
                                         return "x=" + format_point(space, x) +
                                                " y=" + format_point(space, y) + " images " +
                                                format_point(space, fx) + "," +
                                                format_point(space, fy);
                                       });
    if (st.monotone_fail && st.contraction_fail) break;
  }
  detail::omega_finish(report, variant, st, Verdict::sampled_pass);
  return report;
}

// --- Meir-Keeler conditions --------------------------------------------------

/// delta : (0, inf) -> (0, inf). Named forms: linear (c r) and const (c).
class MeirKeelerModulus {
 public:
  MeirKeelerModulus(std::function<double(double)> fn, std::string description)
      : fn_(std::move(fn)), description_(std::move(description)) {}

  static MeirKeelerModulus linear(double c) {
    if (!(c > 0.0)) throw ArgumentError("linear modulus needs a positive factor");
    return {[c](double r) { return c * r; }, "delta linear " + format_real(c)};
  }

  static MeirKeelerModulus constant(double c) {
    if (!(c > 0.0)) throw ArgumentError("constant modulus must be positive");
    return {[c](double) { return c; }, "delta const " + format_real(c)};
  }

  double operator()(double r) const {
    const double d = fn_(r);
    if (!(d > 0.0))
      throw ArgumentError("modulus returned non-positive delta(" + format_real(r) + ")");
    return d;
  }

  const std::string& description() const noexcept { return description_; }

 private:
  std::function<double(double)> fn_;
  std::string description_;
};

namespace detail {

inline std::vector<double> positive_sorted_unique(std::vector<double> v) {
  std::erase_if(v, [](double r) { return !(r > 0.0); });
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/**
 * The Meir-Keeler space condition read literally: for every comparable pair
 * x <= y and every r in the grid, d(x,y) < r + delta(r) implies d(x,y) < r.
 * The default grid is the set of positive distances realized on comparable
 * pairs, which decides the condition exactly because r = d(x,y) is the
 * hardest threshold for each pair.
 */
template <FiniteDistanceSpace S>
ConditionReport check_mk_space(const S& space, const FiniteOrder& order,
                               const MeirKeelerModulus& delta,
                               std::optional<std::vector<double>> r_grid = std::nullopt) {
  const std::size_t n = space.size();
  if (order.size() != n) throw ArgumentError("order and space have different carriers");
  const double tol = space.tolerance();
  std::vector<double> grid;
  if (r_grid) {
    if (r_grid->empty()) throw ArgumentError("r grid must be nonempty");
    for (double r : *r_grid)
      if (!(r > 0.0)) throw ArgumentError("r grid values must be positive");
    grid = detail::positive_sorted_unique(*r_grid);
  } else {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (order.leq(x, y)) grid.push_back(space.distance(x, y));
    grid = detail::positive_sorted_unique(std::move(grid));
  }

  ConditionReport report;
  report.id = ConditionId::mk_space;
  std::optional<std::string> witness;
  for (double r : grid) {
    const double reach = r + delta(r);
    for (std::size_t x = 0; x < n && !witness; ++x)
      for (std::size_t y = 0; y < n && !witness; ++y) {
        if (!order.leq(x, y)) continue;
        ++report.pairs_checked;
        const double d = space.distance(x, y);
        if (d < reach + tol && !(d + tol < r))
          witness = "x=" + space.format(x) + " y=" + space.format(y) + " r=" + format_real(r) +
                    ": d=" + format_real(d) + " < " + format_real(reach) + " but d >= r";
      }
    if (witness) break;
  }
  report.add({"meir-keeler space", witness ? Verdict::fail : Verdict::pass, witness.value_or("")});
  return report;
}

namespace detail {

/// rho(x,y) and rho(lambda F x, lambda F y) for one comparable pair; `a`, `b`
/// locate the pair for witness text.
struct MkRecord {
  double rho;
  double rho_image;
  std::size_t a;
  std::size_t b;
};

/**
 * For each r the antecedent rho < r + delta(r) selects a prefix of the
 * records sorted by rho; the implication fails at r iff the largest image
 * distance in that prefix reaches r. Records stay in canonical order for
 * witness selection.
 */
inline std::optional<std::pair<double, std::size_t>> mk_first_failure(
    const std::vector<MkRecord>& records, const std::vector<double>& grid,
    const MeirKeelerModulus& delta, double margin) {
  if (records.empty()) return std::nullopt;
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return records[l].rho < records[r].rho;
  });
  std::vector<double> rho_sorted(order.size()), prefix_max(order.size());
  double run = -1.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    rho_sorted[i] = records[order[i]].rho;
    run = std::max(run, records[order[i]].rho_image);
    prefix_max[i] = run;
  }
  for (double r : grid) {
    const double reach = r + delta(r) + margin;
    const auto count = static_cast<std::size_t>(
        std::lower_bound(rho_sorted.begin(), rho_sorted.end(), reach) - rho_sorted.begin());
    if (count == 0 || prefix_max[count - 1] + margin < r) continue;
    for (std::size_t i = 0; i < records.size(); ++i)
      if (records[i].rho < reach && !(records[i].rho_image + margin < r)) return std::pair{r, i};
  }
  return std::nullopt;
}

inline std::vector<double> mk_grid(const std::vector<MkRecord>& records,
                                   const std::optional<std::vector<double>>& r_grid) {
  if (r_grid) {
    if (r_grid->empty()) throw ArgumentError("r grid must be nonempty");
    for (double r : *r_grid)
      if (!(r > 0.0)) throw ArgumentError("r grid values must be positive");
    return positive_sorted_unique(*r_grid);
  }
  std::vector<double> grid;
  grid.reserve(2 * records.size());
  for (const auto& rec : records) {
    grid.push_back(rec.rho);
    grid.push_back(rec.rho_image);
  }
  return positive_sorted_unique(std::move(grid));
}

}  // namespace detail

/**
 * Meir-Keeler operator condition, exhaustive over every L-comparable pair of
 * a finite instance: rho(x,y) < r + delta(r) implies
 * rho(lambda F x, lambda F y) < r, with rho = d^m (sup) or d-bar^m (sum).
 *
 * The default r grid holds every realized pair and image distance. For a
 * pair the implication can only fail at r <= rho(image), and when
 * r + delta(r) is non-decreasing the threshold r = rho(image) is the hardest,
 * so the default grid is exact for the named moduli.
 */
inline ConditionReport check_mk_operator(const FiniteSpace& space, const FiniteOrder& order,
                                         const MultiOperator<std::size_t>& F,
                                         const LambdaFamily& lambda, const LSet& L,
                                         const MeirKeelerModulus& delta, ProductKind kind,
                                         std::optional<std::vector<double>> r_grid = std::nullopt,
                                         std::size_t cap = kDefaultCap) {
  if (L.arity() != lambda.arity()) throw ArgumentError("L arity does not match lambda");
  const LambdaImageTable table(space, F, lambda, cap);
  std::vector<detail::MkRecord> records;
  for (std::size_t a = 0; a < table.count(); ++a)
    for (std::size_t b = 0; b < table.count(); ++b) {
      if (a == b || !detail::leq_L(order, L, table.tuple(a), table.tuple(b))) continue;
      records.push_back(
          {detail::product_distance_span<FiniteSpace>(space, kind, table.tuple(a), table.tuple(b)),
           detail::product_distance_span<FiniteSpace>(space, kind, table.tuple(table.image(a)),
                                                      table.tuple(table.image(b))),
           a, b});
    }
  const auto grid = detail::mk_grid(records, r_grid);
  ConditionReport report;
  report.id = ConditionId::mk_operator;
  report.pairs_checked = records.size();
  const auto fail = detail::mk_first_failure(records, grid, delta, space.tolerance());
  std::string text;
  if (fail) {
    const auto& rec = records[fail->second];
    text = "x=" + format_point(space, table.point(rec.a)) +
           " y=" + format_point(space, table.point(rec.b)) + " r=" + format_real(fail->first) +
           ": rho=" + format_real(rec.rho) + " image rho=" + format_real(rec.rho_image);
  }
  report.add({std::string("meir-keeler operator (") + to_string(kind) + ")",
              fail ? Verdict::fail : Verdict::pass, text});
  return report;
}

/// Meir-Keeler operator condition on an explicit sample of L-comparable
/// pairs. The verdict is at best sampled-pass.
template <DistanceSpace S>
ConditionReport check_mk_operator(const S& space,
                                  const MultiOperator<typename S::point_type>& F,
                                  const LambdaFamily& lambda, const MeirKeelerModulus& delta,
                                  ProductKind kind,
                                  const PairSample<typename S::point_type>& sample,
                                  std::optional<std::vector<double>> r_grid = std::nullopt) {
  if (sample.pairs.empty()) throw ArgumentError("pair sample must be nonempty");
  std::vector<detail::MkRecord> records;
  records.reserve(sample.pairs.size());
  for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
    const auto& [x, y] = sample.pairs[i];
    records.push_back({product_distance(space, kind, x, y),
                       product_distance(space, kind, apply_lambda_f(F, lambda, x),
                                        apply_lambda_f(F, lambda, y)),
                       i, i});
  }
  const auto grid = detail::mk_grid(records, r_grid);
  ConditionReport report;
  report.id = ConditionId::mk_operator;
  report.exhaustive = false;
  report.seed = sample.seed;
  report.sample_size = sample.pairs.size();
  report.pairs_checked = records.size();
  const auto fail = detail::mk_first_failure(records, grid, delta, space.tolerance());
  std::string text;
  if (fail) {
    const auto& rec = records[fail->second];
    const auto& [x, y] = sample.pairs[rec.a];
    text = "x=" + format_point(space, x) + " y=" + format_point(space, y) +
           " r=" + format_real(fail->first) + ": rho=" + format_real(rec.rho) +
           " image rho=" + format_real(rec.rho_image);
  }
  report.add({std::string("meir-keeler operator (") + to_string(kind) + ")",
              fail ? Verdict::fail : Verdict::sampled_pass, text});
  return report;
}

/// Sampled Meir-Keeler operator check on a box: `samples` L-comparable pairs
/// drawn with `seed`.
inline ConditionReport check_mk_operator(const BoxSpace& space,
                                         const MultiOperator<std::vector<double>>& F,
                                         const LambdaFamily& lambda, const LSet& L,
                                         const MeirKeelerModulus& delta, ProductKind kind,
                                         std::size_t samples, std::uint64_t seed,
                                         std::optional<std::vector<double>> r_grid = std::nullopt) {
  return check_mk_operator(space, F, lambda, delta, kind,
                           sample_comparable_pairs(space, lambda.arity(), L, samples, seed),
                           std::move(r_grid));
}

/**
 * MK1 (variant 1) or MK2 (variant 2) on a finite instance: every pair of
 * points has upper and lower bounds; the literal Meir-Keeler space
 * condition; and lambda F is isotone (MK1) or antitone (MK2) for the
 * L-order on all comparable pairs.
 */
inline ConditionReport check_mk_conditions(const FiniteSpace& space, const FiniteOrder& order,
                                           const MultiOperator<std::size_t>& F,
                                           const LambdaFamily& lambda, const LSet& L,
                                           const MeirKeelerModulus& delta, int variant,
                                           std::optional<std::vector<double>> r_grid = std::nullopt,
                                           std::size_t cap = kDefaultCap) {
  if (variant != 1 && variant != 2) throw ArgumentError("MK variant must be 1 or 2");
  if (L.arity() != lambda.arity()) throw ArgumentError("L arity does not match lambda");
  ConditionReport report;
  report.id = variant == 1 ? ConditionId::mk1 : ConditionId::mk2;

  const BoundsReport bounds = check_bounds_exist(order);
  report.add({"bounds exist", bounds.passed ? Verdict::pass : Verdict::fail,
              bounds.passed ? ""
                            : "pair " + detail::pair_text(&space, bounds.offending->first,
                                                          bounds.offending->second) +
                                  " has no " + bounds.missing + " bound"});
  const ConditionReport mk = check_mk_space(space, order, delta, std::move(r_grid));
  report.add(mk.clauses.front());

  const LambdaImageTable table(space, F, lambda, cap);
  std::optional<std::string> mono_fail;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < table.count() && !mono_fail; ++a)
    for (std::size_t b = 0; b < table.count(); ++b) {
      if (!detail::leq_L(order, L, table.tuple(a), table.tuple(b))) continue;
      ++pairs;
      const auto fx = table.tuple(table.image(a)), fy = table.tuple(table.image(b));
      const bool ok = variant == 1 ? detail::leq_L(order, L, fx, fy) : detail::leq_L(order, L, fy, fx);
      if (!ok) {
        mono_fail = "x=" + format_point(space, table.point(a)) + " y=" +
                    format_point(space, table.point(b)) + " images " +
                    format_point(space, table.point(table.image(a))) + "," +
                    format_point(space, table.point(table.image(b)));
        break;
      }
    }
  report.pairs_checked = pairs;
  report.add({variant == 1 ? "isotone images" : "antitone images",
              mono_fail ? Verdict::fail : Verdict::pass, mono_fail.value_or("")});
  return report;
}

}  // namespace multifix
