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

// Position-correction game: player i holds position x_i, the correction
// operator proposes y = lambda F(x), and d(x_i, y_i) measures how
// inconvenient x_i is for player i. A selection with lambda F(x) = x is
// optimal.

#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "multifix/distance_space.hpp"
#include "multifix/errors.hpp"
#include "multifix/format.hpp"
#include "multifix/lambda_op.hpp"
#include "multifix/product.hpp"

namespace multifix {

template <DistanceSpace S, class O>
struct GameConfig {
  using point_type = typename S::point_type;

  S space;
  /// Domination of positions; carried for callers, the dynamics ignore it.
  O order;
  MultiOperator<point_type> correction;
  LambdaFamily lambda;
  std::size_t rounds = 1000;
  double tol = 1e-8;

  std::size_t players() const noexcept { return lambda.arity(); }

  void validate() const {
    if (correction.arity() != lambda.arity())
      throw ArgumentError("correction operator arity does not match lambda");
    if (lambda.arity() < 2) throw ArgumentError("a game needs at least two players");
    if (rounds < 1) throw ArgumentError("rounds must be at least 1");
    if (!(tol >= 0.0)) throw ArgumentError("tol must be nonnegative");
  }
};

template <class P>
struct GameRound {
  ProductPoint<P> selection;
  /// d(x_i, y_i) per player, y = lambda F(x).
  std::vector<double> nonconvenience;
};

template <class P>
struct Trajectory {
  std::vector<GameRound<P>> rounds;
  bool terminated_optimal = false;

  const ProductPoint<P>& final_selection() const { return rounds.back().selection; }
};

template <class P>
struct StepResult {
  ProductPoint<P> next;
  std::vector<double> nonconvenience;
};

template <DistanceSpace S, class O>
StepResult<typename S::point_type> step(const GameConfig<S, O>& game,
                                        const ProductPoint<typename S::point_type>& x) {
  if (x.size() != game.players()) throw ArgumentError("selection arity does not match players");
  for (const auto& p : x) detail::require_point(game.space, p, "position");
  StepResult<typename S::point_type> r{apply_lambda_f(game.correction, game.lambda, x), {}};
  r.nonconvenience.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    r.nonconvenience.push_back(game.space.distance(x[i], r.next[i]));
  return r;
}

/// d-bar^m(x, lambda F(x)) <= tol.
template <DistanceSpace S, class O>
bool is_optimal_selection(const GameConfig<S, O>& game,
                          const ProductPoint<typename S::point_type>& x, double tol) {
  const auto image = apply_lambda_f(game.correction, game.lambda, x);
  return sum_distance(game.space, x, image) <= tol;
}

/**
 * Records one round per selection visited. A round whose selection is
 * optimal within `game.tol` ends the trajectory; otherwise play continues
 * with the corrected selection until `game.rounds` rounds are recorded.
 */
template <DistanceSpace S, class O>
Trajectory<typename S::point_type> simulate(const GameConfig<S, O>& game,
                                            const ProductPoint<typename S::point_type>& start) {
  game.validate();
  Trajectory<typename S::point_type> t;
  ProductPoint<typename S::point_type> x = start;
  while (t.rounds.size() < game.rounds) {
    auto [next, inconvenience] = step(game, x);
    double total = 0.0;
    for (double v : inconvenience) total += v;
    t.rounds.push_back({x, std::move(inconvenience)});
    if (total <= game.tol) {
      t.terminated_optimal = true;
      break;
    }
    x = std::move(next);
  }
  return t;
}

/// `round,player,position,nonconvenience`, rounds and players from 1.
template <DistanceSpace S>
void write_trajectory_csv(std::ostream& os, const S& space,
                          const Trajectory<typename S::point_type>& t) {
  os << "round,player,position,nonconvenience\n";
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    const auto& round = t.rounds[r];
    for (std::size_t i = 0; i < round.selection.size(); ++i)
      os << (r + 1) << ',' << (i + 1) << ',' << space.format(round.selection[i]) << ','
         << format_real(round.nonconvenience[i]) << '\n';
  }
}

}  // namespace multifix
