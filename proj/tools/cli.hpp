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

// Command dispatch for the multifix executable. Kept in a header so tests
// can run commands in-process against string streams.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multifix.hpp"

namespace multifix::cli {

enum ExitCode : int {
  kOk = 0,
  kFail = 1,
  kUsage = 2,
  kCapacity = 3,
  kNoMonotoneStart = 4,
};

namespace detail {

struct NoMonotoneStart : Error {
  NoMonotoneStart() : Error("no monotone start") {}
};

inline std::vector<double> parse_real_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (auto v = multifix::detail::to_real(cur)) out.push_back(*v);
      else throw ArgumentError(std::string(what) + ": '" + cur + "' is not a number");
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

inline const FiniteSpace& need_finite(const ProblemFile& pf, const char* command) {
  if (!pf.finite_space)
    throw ArgumentError(std::string(command) + " needs a finite instance (points/dist blocks)");
  return *pf.finite_space;
}

inline void need_operator(const ProblemFile& pf) {
  if (!pf.has_operator()) throw ArgumentError("missing block: F (table or family)");
  if (!pf.lambda) throw ArgumentError("missing block: lambda");
}

inline const FiniteOrder& need_order(const ProblemFile& pf) {
  if (!pf.order) throw ArgumentError("missing block: order");
  return *pf.order;
}

inline const LSet& need_L(const ProblemFile& pf) {
  if (!pf.L) throw ArgumentError("missing block: L");
  return *pf.L;
}

inline const MeirKeelerModulus& need_delta(const ProblemFile& pf) {
  if (!pf.delta) throw ArgumentError("missing block: delta");
  return *pf.delta;
}

inline ProductKind parse_kind(const std::string& s) {
  return s == "sum" ? ProductKind::sum : ProductKind::sup;
}

inline int omega_variant(const std::string& c) {
  if (c.size() == 6 && c.rfind("omega", 0) == 0 && c[5] >= '1' && c[5] <= '4') return c[5] - '0';
  return 0;
}

inline int verdict_code(const ConditionReport& r) { return r.passed() ? kOk : kFail; }

}  // namespace detail

struct Options {
  std::string file;
  std::string eps;
  std::string condition;
  std::string metric = "sup";
  std::string r_grid = "auto";
  std::uint64_t seed = 0;
  std::size_t samples = 10'000;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> rounds;
  std::string start;
  std::string trace;
  std::string out;
};

inline int cmd_classify(const Options& o, std::ostream& out) {
  const ProblemFile pf = parse_problem_file(o.file);
  const FiniteSpace& space = detail::need_finite(pf, "classify");
  std::vector<double> grid;
  if (!o.eps.empty()) grid = detail::parse_real_list(o.eps, "--eps");
  out << render(classify_finite(space, grid));
  return kOk;
}

inline int cmd_check(const Options& o, std::ostream& out) {
  const ProblemFile pf = parse_problem_file(o.file);
  detail::need_operator(pf);
  const LSet& L = detail::need_L(pf);
  const int variant = detail::omega_variant(o.condition);
  const ProductKind kind = detail::parse_kind(o.metric);
  std::optional<std::vector<double>> grid;
  if (o.r_grid != "auto") grid = detail::parse_real_list(o.r_grid, "--r-grid");
  const std::size_t cap = cap_from_env();

  ConditionReport report;
  if (pf.is_finite()) {
    const FiniteSpace& space = *pf.finite_space;
    const FiniteOrder& order = detail::need_order(pf);
    const auto& F = *pf.finite_operator;
    if (variant) {
      report = check_omega(space, order, F, *pf.lambda, L, variant, cap);
    } else if (o.condition == "mk1" || o.condition == "mk2") {
      report = check_mk_conditions(space, order, F, *pf.lambda, L, detail::need_delta(pf),
                                   o.condition == "mk1" ? 1 : 2, grid, cap);
    } else {
      report = check_mk_operator(space, order, F, *pf.lambda, L, detail::need_delta(pf), kind,
                                 grid, cap);
    }
  } else {
    const BoxSpace& space = *pf.box;
    const auto& F = *pf.continuous_operator;
    if (variant) {
      report = check_omega(space, ComponentwiseOrder{}, F, *pf.lambda, L, variant, o.samples, o.seed);
    } else if (o.condition == "mk-op") {
      report = check_mk_operator(space, F, *pf.lambda, L, detail::need_delta(pf), kind, o.samples,
                                 o.seed, grid);
    } else {
      throw ArgumentError(o.condition + " needs a finite instance");
    }
  }
  out << render(report);
  return detail::verdict_code(report);
}

template <DistanceSpace S, class O>
int solve_on(const S& space, const O& order, const ProblemFile& pf,
             const MultiOperator<typename S::point_type>& F,
             std::vector<ProductPoint<typename S::point_type>> candidates,
             std::optional<ProductPoint<typename S::point_type>> start, const Options& o,
             std::ostream& out) {
  SolveConfig config;
  config.kind = detail::parse_kind(o.metric);
  config.tol = o.tol.value_or(pf.tol.value_or(config.tol));
  config.max_iter = o.max_iter.value_or(pf.max_iter.value_or(config.max_iter));

  bool verified = false;
  if (!start) {
    const LSet& L = detail::need_L(pf);
    std::optional<MonotoneStart<typename S::point_type>> found;
    if constexpr (FiniteDistanceSpace<S>) {
      found = find_monotone_start(space, order, F, *pf.lambda, L, cap_from_env());
    } else {
      if (candidates.empty()) throw ArgumentError("--start auto needs a candidates line");
      found = find_monotone_start(order, F, *pf.lambda, L,
                                  std::span<const ProductPoint<typename S::point_type>>(candidates));
    }
    if (!found) throw detail::NoMonotoneStart();
    out << "start=" << format_point(space, found->point) << " direction=" << found->direction()
        << "\n";
    start = found->point;
    verified = true;
  } else if (pf.L) {
    const auto s = classify_start(order, *pf.L, F, *pf.lambda, *start);
    verified = s.ascending || s.descending;
  }

  auto report = picard_solve(space, F, *pf.lambda, *start, config);
  report.monotone_start_verified = verified;
  out << render(space, report);
  if (!o.trace.empty()) {
    std::ofstream trace(o.trace);
    if (!trace) throw ArgumentError("cannot write '" + o.trace + "'");
    write_trace_csv(trace, report);
  }
  return report.status == SolveStatus::converged ? kOk : kFail;
}

inline int cmd_solve(const Options& o, std::ostream& out) {
  const ProblemFile pf = parse_problem_file(o.file);
  detail::need_operator(pf);
  std::string start_text = o.start.empty() ? pf.start.value_or("auto") : o.start;
  if (pf.is_finite()) {
    const FiniteSpace& space = *pf.finite_space;
    std::optional<ProductPoint<std::size_t>> start;
    if (start_text != "auto") start = parse_finite_tuple(space, start_text);
    const FiniteOrder order = pf.order ? *pf.order : FiniteOrder::discrete(space.size());
    if (!start) detail::need_order(pf);
    return solve_on(space, order, pf, *pf.finite_operator, {}, start, o, out);
  }
  const BoxSpace& space = *pf.box;
  std::optional<ProductPoint<std::vector<double>>> start;
  if (start_text != "auto") start = parse_real_tuple(space, start_text);
  std::vector<ProductPoint<std::vector<double>>> candidates;
  for (const auto& c : pf.candidates) candidates.push_back(parse_real_tuple(space, c));
  return solve_on(space, ComponentwiseOrder{}, pf, *pf.continuous_operator, std::move(candidates),
                  start, o, out);
}

inline int cmd_enumerate(const Options& o, std::ostream& out) {
  const ProblemFile pf = parse_problem_file(o.file);
  const FiniteSpace& space = detail::need_finite(pf, "enumerate");
  detail::need_operator(pf);
  const auto points = enumerate_fixed_points(space, *pf.finite_operator, *pf.lambda, cap_from_env());
  out << "fixed points: " << points.size() << "\n";
  for (const auto& p : points) out << format_point(space, p) << "\n";
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const ProblemFile pf = parse_problem_file(o.file);
  const FiniteSpace& space = detail::need_finite(pf, "verify");
  detail::need_operator(pf);
  const FiniteOrder& order = detail::need_order(pf);
  const LSet& L = detail::need_L(pf);
  UniquenessSelector selector;
  if (const int v = detail::omega_variant(o.condition)) {
    selector = static_cast<UniquenessSelector>(v - 1);
  } else if (o.condition == "mk1" || o.condition == "mk2") {
    detail::need_delta(pf);
    selector = o.condition == "mk1" ? UniquenessSelector::mk1 : UniquenessSelector::mk2;
  } else {
    throw ArgumentError("verify takes omega1..omega4, mk1 or mk2");
  }
  const auto report = verify_uniqueness(space, order, *pf.finite_operator, *pf.lambda, L, selector,
                                        pf.delta, cap_from_env());
  out << render(space, report);
  return report.outcome == UniquenessOutcome::violation ? kFail : kOk;
}

template <DistanceSpace S, class O>
int game_on(const S& space, const O& order, const ProblemFile& pf,
            const MultiOperator<typename S::point_type>& F,
            const ProductPoint<typename S::point_type>& start, const Options& o,
            std::ostream& out) {
  GameConfig<S, O> game{space, order, F, *pf.lambda};
  game.rounds = o.rounds.value_or(pf.rounds.value_or(game.rounds));
  game.tol = o.tol.value_or(pf.tol.value_or(game.tol));
  const auto t = simulate(game, start);
  if (o.out.empty()) {
    write_trajectory_csv(out, space, t);
  } else {
    std::ofstream csv(o.out);
    if (!csv) throw ArgumentError("cannot write '" + o.out + "'");
    write_trajectory_csv(csv, space, t);
  }
  out << "rounds=" << t.rounds.size() << " optimal=" << (t.terminated_optimal ? "yes" : "no")
      << " final=" << format_point(space, t.final_selection()) << "\n";
  return t.terminated_optimal ? kOk : kFail;
}

inline int cmd_game(const Options& o, std::ostream& out) {
  const ProblemFile pf = parse_problem_file(o.file);
  detail::need_operator(pf);
  const std::string start_text = o.start.empty() ? pf.start.value_or("") : o.start;
  if (start_text.empty()) throw ArgumentError("missing block: start");
  if (pf.is_finite()) {
    const FiniteSpace& space = *pf.finite_space;
    const FiniteOrder order = pf.order ? *pf.order : FiniteOrder::discrete(space.size());
    return game_on(space, order, pf, *pf.finite_operator, parse_finite_tuple(space, start_text), o,
                   out);
  }
  return game_on(*pf.box, ComponentwiseOrder{}, pf, *pf.continuous_operator,
                 parse_real_tuple(*pf.box, start_text), o, out);
}

/// Runs one command line; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"multifix: multiple fixed points over ordered distance spaces"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> omega = {"omega1", "omega2", "omega3", "omega4"};
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "problem file")->required();
    return sub;
  };

  auto* classify = with_file(app.add_subcommand("classify", "classify a finite distance space"));
  classify->add_option("--eps", o.eps, "comma-separated epsilon grid for the N/F flags");

  auto* check = with_file(app.add_subcommand("check", "check a hypothesis set"));
  check->add_option("--condition", o.condition)
      ->required()
      ->check(CLI::IsMember({"omega1", "omega2", "omega3", "omega4", "mk1", "mk2", "mk-op"}));
  check->add_option("--metric", o.metric)->check(CLI::IsMember({"sup", "sum"}));
  check->add_option("--r-grid", o.r_grid, "auto or comma-separated radii");
  check->add_option("--seed", o.seed);
  check->add_option("--samples", o.samples)->check(CLI::PositiveNumber);

  auto* solve = with_file(app.add_subcommand("solve", "Picard iteration"));
  solve->add_option("--tol", o.tol)->check(CLI::NonNegativeNumber);
  solve->add_option("--max-iter", o.max_iter)->check(CLI::PositiveNumber);
  solve->add_option("--start", o.start, "auto or a tuple such as (0,0)");
  solve->add_option("--trace", o.trace, "write the residual trace as CSV");
  solve->add_option("--metric", o.metric)->check(CLI::IsMember({"sup", "sum"}));

  with_file(app.add_subcommand("enumerate", "list all fixed points of a finite instance"));

  auto* verify = with_file(app.add_subcommand("verify", "oracle-backed uniqueness check"));
  verify->add_option("--condition", o.condition)
      ->required()
      ->check(CLI::IsMember({"omega1", "omega2", "omega3", "omega4", "mk1", "mk2"}));

  auto* game = with_file(app.add_subcommand("game", "simulate the position-correction game"));
  game->add_option("--rounds", o.rounds)->check(CLI::PositiveNumber);
  game->add_option("--tol", o.tol)->check(CLI::NonNegativeNumber);
  game->add_option("--start", o.start, "start selection, overrides the file");
  game->add_option("--out", o.out, "trajectory CSV path (default: standard output)");

  std::vector<std::string> argv_store{"multifix"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*classify) return cmd_classify(o, out);
    if (*check) return cmd_check(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*game) return cmd_game(o, out);
    return cmd_enumerate(o, out);
  } catch (const detail::NoMonotoneStart& e) {
    err << "error: " << e.what() << "\n";
    return kNoMonotoneStart;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace multifix::cli
