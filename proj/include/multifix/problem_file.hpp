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

// Plain-text problem files shared by every CLI command.
//
//   # finite instance                    # continuous instance
//   points: a b c                        space: interval -10 10
//   dist:                                distance: l1
//   0 1 2                                complete: yes
//   1 0 1                                family: linear-coupled 0.25 1
//   2 1 0                                L: {1}
//   order:                               delta linear 1
//   a <= b                               start: (0,0)
//   b <= c
//   lambda: coupled                      (lambda may also be given as
//   F:                                    m rows of 1-based indices)
//   a,a -> b
//   ...
//
// Blank lines and text after '#' are ignored. The order block lists
// generating pairs; its reflexive-transitive closure is used.

#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "multifix/conditions.hpp"
#include "multifix/distance_space.hpp"
#include "multifix/errors.hpp"
#include "multifix/lambda_op.hpp"
#include "multifix/order.hpp"
#include "multifix/product.hpp"

namespace multifix {

/// Named continuous operator from the family catalog.
struct FamilySpec {
  std::string name;
  std::vector<double> params;
  std::size_t line = 0;
};

struct ProblemFile {
  std::optional<FiniteSpace> finite_space;
  std::optional<FiniteOrder> order;
  std::optional<BoxSpace> box;
  std::optional<LambdaFamily> lambda;
  std::optional<MultiOperator<std::size_t>> finite_operator;
  std::optional<MultiOperator<std::vector<double>>> continuous_operator;
  std::optional<FamilySpec> family;
  std::optional<LSet> L;
  std::optional<MeirKeelerModulus> delta;
  std::optional<std::string> start;
  std::vector<std::string> candidates;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> max_iter;
  std::optional<double> tol;

  bool is_finite() const noexcept { return finite_space.has_value(); }
  bool has_operator() const noexcept {
    return finite_operator.has_value() || continuous_operator.has_value();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::optional<double> to_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<std::size_t> to_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline double real_or_throw(std::string_view s, std::size_t line, const std::string& what) {
  if (auto v = to_real(s)) return *v;
  throw ParseError(line, what + ": '" + std::string(s) + "' is not a decimal number");
}

/// Splits "(a,b,c)" into its top-level components; brackets nest.
inline std::vector<std::string> split_tuple(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw ArgumentError("tuple must be written as (x1,...,xm): '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.emplace_back(trim(cur));
  return parts;
}

/// All "(...)" groups of a line.
inline std::vector<std::string> tuple_groups(std::string_view text, std::size_t line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = text.find('(', pos)) != std::string_view::npos) {
    const auto end = text.find(')', pos);
    if (end == std::string_view::npos) throw ParseError(line, "unbalanced parenthesis");
    out.emplace_back(text.substr(pos, end - pos + 1));
    pos = end + 1;
  }
  return out;
}

inline std::vector<std::size_t> parse_index_list(std::string_view text, std::size_t line) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '{' || c == '}' || c == ',') ? ' ' : c;
  std::vector<std::size_t> out;
  for (const auto& tok : split_ws(cleaned)) {
    auto v = to_count(tok);
    if (!v) throw ParseError(line, "'" + tok + "' is not an index");
    out.push_back(*v);
  }
  return out;
}

inline bool is_int_row(std::string_view text) {
  const auto toks = split_ws(text);
  if (toks.empty()) return false;
  for (const auto& t : toks)
    if (!to_count(t)) return false;
  return true;
}

/// F(x) = sum_i c_i x_i + beta, componentwise.
inline MultiOperator<std::vector<double>> linear_family(std::vector<double> coeffs, double beta) {
  const std::size_t m = coeffs.size();
  return componentwise_operator(m, [coeffs = std::move(coeffs), beta](std::span<const double> x) {
    double v = beta;
    for (std::size_t i = 0; i < x.size(); ++i) v += coeffs[i] * x[i];
    return v;
  });
}

struct FamilyBuild {
  MultiOperator<std::vector<double>> op;
  std::optional<LambdaFamily> preset;
};

inline FamilyBuild build_family(const FamilySpec& f) {
  const auto& p = f.params;
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw ParseError(f.line, "family " + f.name + " takes " + std::to_string(k) +
                                   " parameters, got " + std::to_string(p.size()));
  };
  if (f.name == "linear-coupled") {
    need(2);
    return {linear_family({p[0], -p[0]}, p[1]), coupled_preset()};
  }
  if (f.name == "linear-tripled") {
    need(2);
    return {linear_family({p[0], -2.0 * p[0], p[0]}, p[1]), tripled_preset()};
  }
  if (f.name == "linear") {
    if (p.size() < 2) throw ParseError(f.line, "family linear needs coefficients and an offset");
    std::vector<double> coeffs(p.begin(), p.end() - 1);
    std::optional<LambdaFamily> preset;
    if (coeffs.size() == 2) preset = coupled_preset();
    if (coeffs.size() == 3) preset = tripled_preset();
    return {linear_family(std::move(coeffs), p.back()), preset};
  }
  if (f.name == "constant") {
    need(2);
    if (p[0] < 1 || p[0] != static_cast<double>(static_cast<std::size_t>(p[0])))
      throw ParseError(f.line, "constant family arity must be a positive integer");
    const auto m = static_cast<std::size_t>(p[0]);
    std::optional<LambdaFamily> preset;
    if (m == 2) preset = coupled_preset();
    if (m == 3) preset = tripled_preset();
    return {linear_family(std::vector<double>(m, 0.0), p[1]), preset};
  }
  throw ParseError(f.line, "unknown family '" + f.name +
                               "' (known: linear, linear-coupled, linear-tripled, constant)");
}

}  // namespace detail

/// "(a,b)" against a finite carrier.
inline ProductPoint<std::size_t> parse_finite_tuple(const FiniteSpace& space,
                                                    std::string_view text) {
  ProductPoint<std::size_t> out;
  for (const auto& part : detail::split_tuple(text)) out.push_back(space.at(part));
  return out;
}

/// "(0,0.5)" for 1-d boxes, "([0 1],[2 3])" in general.
inline ProductPoint<std::vector<double>> parse_real_tuple(const BoxSpace& space,
                                                          std::string_view text) {
  ProductPoint<std::vector<double>> out;
  for (const auto& part : detail::split_tuple(text)) {
    std::string body = part;
    if (!body.empty() && body.front() == '[') {
      if (body.back() != ']') throw ArgumentError("unterminated vector '" + part + "'");
      body = body.substr(1, body.size() - 2);
    }
    std::vector<double> v;
    for (const auto& tok : detail::split_ws(body)) {
      auto x = detail::to_real(tok);
      if (!x) throw ArgumentError("'" + tok + "' is not a number");
      v.push_back(*x);
    }
    if (v.size() != space.dimension())
      throw ArgumentError("point '" + part + "' has dimension " + std::to_string(v.size()) +
                          ", expected " + std::to_string(space.dimension()));
    out.push_back(std::move(v));
  }
  return out;
}

inline ProblemFile parse_problem(std::istream& in) {
  ProblemFile pf;
  std::vector<std::string> labels;
  std::vector<double> dist;
  std::size_t dist_rows = 0, dist_line = 0;
  std::vector<std::pair<std::string, std::string>> order_pairs;
  std::vector<std::size_t> order_lines;
  bool order_seen = false;
  std::vector<std::vector<std::size_t>> lambda_rows;
  std::size_t lambda_line = 0;
  std::optional<LambdaFamily> lambda_preset;
  struct TableEntry {
    std::vector<std::string> args;
    std::string value;
    std::size_t line;
  };
  std::vector<TableEntry> table;
  bool table_seen = false;
  std::optional<std::string> space_kind;
  std::vector<double> space_params;
  bool space_open = false;
  std::size_t space_line = 0;
  BoxSpace::Norm norm = BoxSpace::Norm::l1;
  std::optional<bool> complete;
  std::optional<std::pair<std::size_t, std::string>> raw_L;

  enum class Mode { none, dist, order, table, lambda } mode = Mode::none;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (mode == Mode::dist && dist_rows < labels.size()) {
      const auto toks = detail::split_ws(line);
      const std::string row = "dist row " + std::to_string(dist_rows + 1);
      if (toks.size() != labels.size())
        throw ParseError(lineno, row + " has " + std::to_string(toks.size()) +
                                     " entries, expected " + std::to_string(labels.size()));
      for (const auto& t : toks) dist.push_back(detail::real_or_throw(t, lineno, row));
      ++dist_rows;
      continue;
    }
    if (mode == Mode::order && line.find("<=") != std::string_view::npos) {
      const auto at = line.find("<=");
      order_pairs.emplace_back(detail::trim(line.substr(0, at)), detail::trim(line.substr(at + 2)));
      order_lines.push_back(lineno);
      continue;
    }
    if (mode == Mode::table && line.find("->") != std::string_view::npos) {
      const auto at = line.find("->");
      TableEntry e;
      std::string args(detail::trim(line.substr(0, at)));
      for (char& c : args)
        if (c == '(' || c == ')') c = ' ';
      std::string cur;
      for (char c : args + ",") {
        if (c == ',') {
          e.args.emplace_back(detail::trim(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      e.value = std::string(detail::trim(line.substr(at + 2)));
      e.line = lineno;
      table.push_back(std::move(e));
      continue;
    }
    if (mode == Mode::lambda && detail::is_int_row(line) &&
        (lambda_rows.empty() || lambda_rows.size() < lambda_rows.front().size())) {
      lambda_rows.push_back(detail::parse_index_list(line, lineno));
      continue;
    }
    mode = Mode::none;

    // key: value, key value, or L={...}
    std::size_t cut = line.find_first_of(":= \t");
    std::string key(line.substr(0, cut));
    std::string_view rest = cut == std::string_view::npos ? "" : line.substr(cut);
    if (!rest.empty() && (rest.front() == ':' || rest.front() == '=')) rest.remove_prefix(1);
    rest = detail::trim(rest);

    if (key == "points") {
      if (!labels.empty()) throw ParseError(lineno, "duplicate points line");
      labels = detail::split_ws(rest);
      if (labels.empty()) throw ParseError(lineno, "points line lists no points");
      for (const auto& l : labels)
        if (l.find_first_of("(),[]{}") != std::string::npos || l == "<=" || l == "->")
          throw ParseError(lineno, "invalid point label '" + l + "'");
    } else if (key == "dist") {
      if (labels.empty()) throw ParseError(lineno, "dist block before points line");
      mode = Mode::dist;
      dist_line = lineno;
    } else if (key == "order") {
      mode = Mode::order;
      order_seen = true;
    } else if (key == "F") {
      if (!rest.empty()) throw ParseError(lineno, "F block takes no arguments");
      mode = Mode::table;
      table_seen = true;
    } else if (key == "lambda") {
      lambda_line = lineno;
      if (rest.empty()) {
        mode = Mode::lambda;
      } else if (rest == "coupled") {
        lambda_preset = coupled_preset();
      } else if (rest == "tripled") {
        lambda_preset = tripled_preset();
      } else {
        throw ParseError(lineno, "unknown lambda preset '" + std::string(rest) + "'");
      }
    } else if (key == "L") {
      raw_L = {lineno, std::string(rest)};
    } else if (key == "delta") {
      const auto toks = detail::split_ws(rest);
      if (toks.size() != 2) throw ParseError(lineno, "expected 'delta linear c' or 'delta const c'");
      const double c = detail::real_or_throw(toks[1], lineno, "delta");
      try {
        if (toks[0] == "linear") pf.delta = MeirKeelerModulus::linear(c);
        else if (toks[0] == "const") pf.delta = MeirKeelerModulus::constant(c);
        else throw ParseError(lineno, "unknown delta form '" + toks[0] + "'");
      } catch (const ArgumentError& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (key == "space") {
      const auto toks = detail::split_ws(rest);
      space_line = lineno;
      if (toks.empty()) throw ParseError(lineno, "space needs a kind");
      space_kind = toks[0];
      space_params.clear();
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i] == "open") {
          space_open = true;
          continue;
        }
        space_params.push_back(detail::real_or_throw(toks[i], lineno, "space"));
      }
    } else if (key == "distance") {
      if (rest == "l1" || rest == "abs") norm = BoxSpace::Norm::l1;
      else if (rest == "linf" || rest == "sup") norm = BoxSpace::Norm::linf;
      else if (rest == "l2") norm = BoxSpace::Norm::l2;
      else throw ParseError(lineno, "unknown distance '" + std::string(rest) + "'");
    } else if (key == "complete") {
      if (rest == "yes") complete = true;
      else if (rest == "no") complete = false;
      else throw ParseError(lineno, "complete must be yes or no");
    } else if (key == "family") {
      const auto toks = detail::split_ws(rest);
      if (toks.empty()) throw ParseError(lineno, "family needs a name");
      FamilySpec f{toks[0], {}, lineno};
      for (std::size_t i = 1; i < toks.size(); ++i)
        f.params.push_back(detail::real_or_throw(toks[i], lineno, "family parameter"));
      pf.family = std::move(f);
    } else if (key == "start") {
      pf.start = std::string(rest);
    } else if (key == "candidates") {
      pf.candidates = detail::tuple_groups(rest, lineno);
    } else if (key == "rounds" || key == "max-iter") {
      auto v = detail::to_count(rest);
      if (!v || *v == 0) throw ParseError(lineno, key + " must be a positive integer");
      (key == "rounds" ? pf.rounds : pf.max_iter) = *v;
    } else if (key == "tol") {
      pf.tol = detail::real_or_throw(rest, lineno, "tol");
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }

  if (mode == Mode::dist && dist_rows < labels.size())
    throw ParseError(lineno, "dist block ends after " + std::to_string(dist_rows) + " of " +
                                 std::to_string(labels.size()) + " rows");

  // Assemble the carrier.
  if (!labels.empty()) {
    if (space_kind) throw ParseError(space_line, "a file describes either points or a space");
    if (dist_rows != labels.size()) throw ParseError(0, "points given without a complete dist block");
    try {
      pf.finite_space = FiniteSpace(labels, dist);
    } catch (const Error& e) {
      throw ParseError(dist_line, e.what());
    }
  } else if (space_kind) {
    const auto& p = space_params;
    const bool closed_default = !space_open;
    if (*space_kind == "reals") {
      if (!p.empty()) throw ParseError(space_line, "reals takes no bounds");
      constexpr double inf = std::numeric_limits<double>::infinity();
      pf.box = BoxSpace::with_norm(1, -inf, inf, norm, complete.value_or(true));
    } else if (*space_kind == "interval") {
      if (p.size() != 2) throw ParseError(space_line, "interval takes lo hi");
      pf.box = BoxSpace::with_norm(1, p[0], p[1], norm, complete.value_or(closed_default), space_open);
    } else if (*space_kind == "box") {
      if (p.size() != 3 || p[0] < 1 || p[0] != static_cast<double>(static_cast<std::size_t>(p[0])))
        throw ParseError(space_line, "box takes dim lo hi");
      pf.box = BoxSpace::with_norm(static_cast<std::size_t>(p[0]), p[1], p[2], norm,
                                   complete.value_or(closed_default), space_open);
    } else {
      throw ParseError(space_line, "unknown space kind '" + *space_kind + "'");
    }
  }

  if (order_seen) {
    if (!pf.finite_space) throw ParseError(0, "order block needs a finite points line");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < order_pairs.size(); ++i) {
      const auto a = pf.finite_space->find(order_pairs[i].first);
      const auto b = pf.finite_space->find(order_pairs[i].second);
      if (!a || !b) throw ParseError(order_lines[i], "order references an unknown point");
      pairs.emplace_back(*a, *b);
    }
    try {
      pf.order = FiniteOrder::from_pairs(pf.finite_space->size(), pairs);
    } catch (const Error& e) {
      throw ParseError(0, std::string("order block: ") + e.what());
    }
  }

  if (!lambda_rows.empty()) {
    if (lambda_rows.size() != lambda_rows.front().size())
      throw ParseError(lambda_line, "lambda block needs m rows of m indices");
    try {
      pf.lambda = LambdaFamily::from_one_based(lambda_rows);
    } catch (const Error& e) {
      throw ParseError(lambda_line, e.what());
    }
  } else if (lambda_preset) {
    pf.lambda = lambda_preset;
  }

  if (table_seen) {
    if (!pf.finite_space) throw ParseError(0, "F table needs a finite points line");
    if (table.empty()) throw ParseError(0, "F block is empty");
    const FiniteSpace& space = *pf.finite_space;
    const std::size_t m = table.front().args.size();
    std::vector<std::optional<std::size_t>> slots(checked_power(space.size(), m, cap_from_env()));
    const TupleIndexer indexer(space.size(), m, cap_from_env());
    for (const auto& e : table) {
      if (e.args.size() != m) throw ParseError(e.line, "F entry arity differs from the first entry");
      std::vector<std::size_t> idx;
      for (const auto& a : e.args) {
        auto p = space.find(a);
        if (!p) throw ParseError(e.line, "F entry references unknown point '" + a + "'");
        idx.push_back(*p);
      }
      auto v = space.find(e.value);
      if (!v) throw ParseError(e.line, "F entry maps to unknown point '" + e.value + "'");
      auto& slot = slots[indexer.encode(idx)];
      if (slot && *slot != *v) throw ParseError(e.line, "conflicting F entries");
      slot = *v;
    }
    pf.finite_operator = table_operator(space, m, std::move(slots));
    if (!pf.lambda) {
      if (m == 2) pf.lambda = coupled_preset();
      else if (m == 3) pf.lambda = tripled_preset();
      else throw ParseError(0, "lambda block required for operators of arity " + std::to_string(m));
    }
  }

  if (pf.family) {
    if (!pf.box) throw ParseError(pf.family->line, "family needs a continuous space line");
    auto built = detail::build_family(*pf.family);
    pf.continuous_operator = std::move(built.op);
    if (!pf.lambda) {
      if (!built.preset)
        throw ParseError(pf.family->line, "lambda block required for this family's arity");
      pf.lambda = built.preset;
    }
  }

  const std::size_t arity = pf.finite_operator   ? pf.finite_operator->arity()
                            : pf.continuous_operator ? pf.continuous_operator->arity()
                                                     : 0;
  if (arity && pf.lambda && pf.lambda->arity() != arity)
    throw ParseError(lambda_line, "lambda arity " + std::to_string(pf.lambda->arity()) +
                                      " does not match F arity " + std::to_string(arity));
  if (raw_L) {
    if (!pf.lambda) throw ParseError(raw_L->first, "L needs a lambda family or operator");
    try {
      pf.L = LSet::from_one_based(pf.lambda->arity(),
                                  detail::parse_index_list(raw_L->second, raw_L->first));
    } catch (const ArgumentError& e) {
      throw ParseError(raw_L->first, e.what());
    }
  }
  return pf;
}

inline ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_problem(in);
}

}  // namespace multifix
