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

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "multifix/conditions.hpp"
#include "multifix/distance_space.hpp"
#include "multifix/errors.hpp"
#include "multifix/format.hpp"
#include "multifix/lambda_op.hpp"
#include "multifix/order.hpp"
#include "multifix/product.hpp"

namespace multifix {

struct SolveConfig {
  ProductKind kind = ProductKind::sup;
  double tol = 1e-9;
  std::size_t max_iter = 10'000;
  /// A step longer than this counts as divergence.
  double divergence_cap = 1e12;

  void validate() const {
    if (!(tol >= 0.0)) throw ArgumentError("tol must be nonnegative");
    if (max_iter < 1) throw ArgumentError("max_iter must be at least 1");
    if (!(divergence_cap > 0.0)) throw ArgumentError("divergence cap must be positive");
  }
};

enum class SolveStatus { converged, max_iter_exceeded, diverged };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter_exceeded: return "max_iter_exceeded";
    case SolveStatus::diverged: return "diverged";
  }
  return "?";
}

template <class P>
struct SolveReport {
  SolveStatus status = SolveStatus::max_iter_exceeded;
  ProductPoint<P> point;
  std::size_t iterations = 0;
  /// rho(x_n, x_{n+1}) for every application of lambda F.
  std::vector<double> residuals;
  bool monotone_start_verified = false;
  /// Finite carriers only: length of a detected cycle longer than 1.
  std::optional<std::size_t> cycle_length;

  double final_residual() const { return residuals.empty() ? 0.0 : residuals.back(); }
};

/// Line-oriented `key=value` text.
template <DistanceSpace S>
std::string render(const S& space, const SolveReport<typename S::point_type>& r) {
  std::string out = "status=" + std::string(to_string(r.status)) + "\n";
  out += "iters=" + std::to_string(r.iterations) + "\n";
  out += "point=" + format_point(space, r.point) + "\n";
  out += "residual=" + format_real(r.final_residual()) + "\n";
  if (r.cycle_length) out += "cycle=" + std::to_string(*r.cycle_length) + "\n";
  return out;
}

/// `iteration,residual` rows, iterations numbered from 1.
template <class P>
void write_trace_csv(std::ostream& os, const SolveReport<P>& r) {
  os << "iteration,residual\n";
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    os << (i + 1) << ',' << format_real(r.residuals[i]) << '\n';
}

template <class P>
struct MonotoneStart {
  ProductPoint<P> point;
  /// a precedes lambda F(a) under the L-order.
  bool ascending = false;
  /// lambda F(a) precedes a under the L-order.
  bool descending = false;

  std::string direction() const {
    if (ascending && descending) return "stationary";
    return ascending ? "ascending" : "descending";
  }
};

/// Direction tags of `a` as a start for monotone iteration.
template <class O, class P>
  requires PartialOrder<O, P>
MonotoneStart<P> classify_start(const O& order, const LSet& L, const MultiOperator<P>& F,
                                const LambdaFamily& lambda, const ProductPoint<P>& a) {
  const auto image = apply_lambda_f(F, lambda, a);
  return {a, compare_L(order, L, a, image), compare_L(order, L, image, a)};
}

/// First tuple in canonical order that is an ascending or descending start.
inline std::optional<MonotoneStart<std::size_t>> find_monotone_start(
    const FiniteSpace& space, const FiniteOrder& order, const MultiOperator<std::size_t>& F,
    const LambdaFamily& lambda, const LSet& L, std::size_t cap = kDefaultCap) {
  if (L.arity() != lambda.arity()) throw ArgumentError("L arity does not match lambda");
  const LambdaImageTable table(space, F, lambda, cap);
  for (std::size_t i = 0; i < table.count(); ++i) {
    const auto x = table.tuple(i), fx = table.tuple(table.image(i));
    const bool up = detail::leq_L(order, L, x, fx);
    const bool down = detail::leq_L(order, L, fx, x);
    if (up || down) return MonotoneStart<std::size_t>{table.point(i), up, down};
  }
  return std::nullopt;
}

/// First candidate that is an ascending or descending start.
template <class O, class P>
  requires PartialOrder<O, P>
std::optional<MonotoneStart<P>> find_monotone_start(
    const O& order, const MultiOperator<P>& F, const LambdaFamily& lambda, const LSet& L,
    std::span<const ProductPoint<P>> candidates) {
  for (const auto& a : candidates) {
    auto s = classify_start(order, L, F, lambda, a);
    if (s.ascending || s.descending) return s;
  }
  return std::nullopt;
}

/**
 * Picard iteration x_{n+1} = lambda F(x_n).
 *
 * Continuous carriers stop once rho(x_n, x_{n+1}) + rho(x_{n+1}, x_n) < tol
 * or the step is exactly zero (converged), when a step exceeds the
 * divergence cap or is not finite (diverged), or after max_iter steps. Finite carriers use exact cycle
 * detection instead of tolerances: reaching a fixed tuple is convergence,
 * revisiting an earlier tuple reports max_iter_exceeded with the cycle
 * length.
 */
template <DistanceSpace S>
SolveReport<typename S::point_type> picard_solve(const S& space,
                                                 const MultiOperator<typename S::point_type>& F,
                                                 const LambdaFamily& lambda,
                                                 const ProductPoint<typename S::point_type>& start,
                                                 const SolveConfig& config = {}) {
  using P = typename S::point_type;
  config.validate();
  if (start.size() != lambda.arity())
    throw ArgumentError("start arity does not match lambda");
  for (const auto& c : start) detail::require_point(space, c, "start coordinate");

  SolveReport<P> report;
  ProductPoint<P> x = start;
  if constexpr (FiniteDistanceSpace<S>) {
    const TupleIndexer indexer(space.size(), lambda.arity(),
                               std::numeric_limits<std::size_t>::max());
    std::unordered_map<std::size_t, std::size_t> seen{{indexer.encode(x), 0}};
    while (report.iterations < config.max_iter) {
      ProductPoint<P> next = apply_lambda_f(F, lambda, x);
      ++report.iterations;
      report.residuals.push_back(product_distance(space, config.kind, x, next));
      if (next == x) {
        report.status = SolveStatus::converged;
        break;
      }
      auto [it, fresh] = seen.emplace(indexer.encode(next), report.iterations);
      x = std::move(next);
      if (!fresh) {
        report.cycle_length = report.iterations - it->second;
        break;
      }
    }
    if (report.status != SolveStatus::converged) report.status = SolveStatus::max_iter_exceeded;
  } else {
    while (report.iterations < config.max_iter) {
      ProductPoint<P> next = apply_lambda_f(F, lambda, x);
      ++report.iterations;
      const double step = product_distance(space, config.kind, x, next);
      const double back = product_distance(space, config.kind, next, x);
      report.residuals.push_back(step);
      x = std::move(next);
      if (!std::isfinite(step) || !std::isfinite(back) || step > config.divergence_cap) {
        report.status = SolveStatus::diverged;
        break;
      }
      if (step + back < config.tol || step + back == 0.0) {
        report.status = SolveStatus::converged;
        break;
      }
    }
  }
  report.point = std::move(x);
  return report;
}

/// Every tuple with lambda F(a) = a, in canonical order.
inline std::vector<ProductPoint<std::size_t>> enumerate_fixed_points(
    const FiniteSpace& space, const MultiOperator<std::size_t>& F, const LambdaFamily& lambda,
    std::size_t cap = kDefaultCap) {
  const LambdaImageTable table(space, F, lambda, cap);
  std::vector<ProductPoint<std::size_t>> out;
  for (std::size_t i = 0; i < table.count(); ++i)
    if (table.image(i) == i) out.push_back(table.point(i));
  return out;
}

/// Hypothesis sets accepted by verify_uniqueness.
enum class UniquenessSelector { omega1, omega2, omega3, omega4, mk1, mk2 };

enum class UniquenessOutcome { confirmed, informational, hypothesis_unmet, violation };

struct UniquenessReport {
  UniquenessSelector selector = UniquenessSelector::omega1;
  ConditionReport conditions;
  /// Only evaluated for the Meir-Keeler selectors.
  std::optional<bool> h_distance;
  bool conditions_pass = false;
  std::vector<ProductPoint<std::size_t>> fixed_points;
  UniquenessOutcome outcome = UniquenessOutcome::informational;
};

/**
 * Uniqueness given existence, checked against brute force: when the
 * selected hypotheses hold (plus the H-distance property for MK1/MK2) and at
 * least one fixed point exists, there must be exactly one. Failing
 * hypotheses make the result informational.
 */
inline UniquenessReport verify_uniqueness(const FiniteSpace& space, const FiniteOrder& order,
                                          const MultiOperator<std::size_t>& F,
                                          const LambdaFamily& lambda, const LSet& L,
                                          UniquenessSelector selector,
                                          const std::optional<MeirKeelerModulus>& delta = std::nullopt,
                                          std::size_t cap = kDefaultCap) {
  UniquenessReport r;
  r.selector = selector;
  switch (selector) {
    case UniquenessSelector::omega1:
    case UniquenessSelector::omega2:
    case UniquenessSelector::omega3:
    case UniquenessSelector::omega4:
      r.conditions = check_omega(space, order, F, lambda, L, static_cast<int>(selector) + 1, cap);
      r.conditions_pass = r.conditions.passed();
      break;
    case UniquenessSelector::mk1:
    case UniquenessSelector::mk2: {
      if (!delta) throw ArgumentError("Meir-Keeler selectors need a modulus");
      r.conditions = check_mk_conditions(space, order, F, lambda, L, *delta,
                                         selector == UniquenessSelector::mk1 ? 1 : 2,
                                         std::nullopt, cap);
      r.h_distance = classify_finite(space).h_distance;
      r.conditions_pass = r.conditions.passed() && *r.h_distance;
      break;
    }
  }
  r.fixed_points = enumerate_fixed_points(space, F, lambda, cap);
  if (!r.conditions_pass) {
    r.outcome = UniquenessOutcome::informational;
  } else if (r.fixed_points.empty()) {
    r.outcome = UniquenessOutcome::hypothesis_unmet;
  } else {
    r.outcome = r.fixed_points.size() == 1 ? UniquenessOutcome::confirmed
                                           : UniquenessOutcome::violation;
  }
  return r;
}

inline std::string render(const FiniteSpace& space, const UniquenessReport& r) {
  std::string points;
  for (std::size_t i = 0; i < r.fixed_points.size(); ++i) {
    if (i) points += ' ';
    points += format_point(space, r.fixed_points[i]);
  }
  std::string out = render(r.conditions);
  if (r.h_distance) out += std::string("h-distance: ") + (*r.h_distance ? "yes" : "no") + "\n";
  out += "fixed points: " + std::to_string(r.fixed_points.size()) +
         (points.empty() ? "" : " " + points) + "\n";
  switch (r.outcome) {
    case UniquenessOutcome::confirmed:
      out += "THEOREM CONFIRMED, unique fixed point " + points + "\n";
      break;
    case UniquenessOutcome::informational:
      out += "INFORMATIONAL (conditions fail)\n";
      break;
    case UniquenessOutcome::hypothesis_unmet:
      out += "HYPOTHESIS UNMET (no fixed point)\n";
      break;
    case UniquenessOutcome::violation:
      out += "VIOLATION: conditions pass but fixed points are " + points + "\n";
      break;
  }
  return out;
}

}  // namespace multifix
