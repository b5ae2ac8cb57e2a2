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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "generators.hpp"
#include "multifix.hpp"

namespace multifix {
namespace {

using Vec = std::vector<double>;
using RealTuple = ProductPoint<Vec>;
using Tuple = ProductPoint<std::size_t>;

RealTuple tuple(std::initializer_list<double> xs) {
  RealTuple out;
  for (double x : xs) out.push_back({x});
  return out;
}

const ClauseResult* clause(const ConditionReport& r, const std::string& name) {
  for (const auto& c : r.clauses)
    if (c.name == name) return &c;
  return nullptr;
}

TEST(ApplyLambdaF, DifferenceUnderCoupledPreset) {
  const auto F = scalar_operator(2, [](std::span<const double> a) { return a[0] - a[1]; });
  EXPECT_EQ(apply_lambda_f(F, coupled_preset(), tuple({3, 1})), tuple({2, -2}));
}

TEST(ApplyLambdaF, ConstantOperator) {
  const auto F = constant_operator<std::size_t>(3, 2);
  for (const auto& lambda : {tripled_preset(), LambdaFamily::identity(3)})
    EXPECT_EQ(apply_lambda_f(F, lambda, Tuple{0, 1, 0}), (Tuple{2, 2, 2}));
}

TEST(ApplyLambdaF, FirstProjectionUnderTripledPreset) {
  const FiniteSpace s({"a", "b", "c"}, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  const auto F = gen::tabulate(s, 3, [](std::span<const std::size_t> t) { return t[0]; });
  // Rows evaluate F(a,b,c) = a, F(b,a,b) = b, F(c,b,a) = c.
  EXPECT_EQ(apply_lambda_f(F, tripled_preset(), Tuple{0, 1, 2}), (Tuple{0, 1, 2}));
}

TEST(ApplyLambdaF, MissingTableEntryNamesTuple) {
  const FiniteSpace s({"a", "b"}, {0, 1, 1, 0});
  std::vector<std::optional<std::size_t>> table(4, std::size_t{0});
  table[1].reset();  // (a,b)
  const auto F = table_operator(s, 2, table);
  try {
    (void)apply_lambda_f(F, coupled_preset(), Tuple{0, 1});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("(a,b)"), std::string::npos) << e.what();
  }
}

TEST(ApplyLambdaF, ArityMismatchThrows) {
  const auto F = constant_operator<std::size_t>(2, 0);
  EXPECT_THROW(apply_lambda_f(F, tripled_preset(), Tuple{0, 0, 0}), ArgumentError);
  EXPECT_THROW(apply_lambda_f(F, coupled_preset(), Tuple{0}), ArgumentError);
}

TEST(LambdaFamily, Validation) {
  EXPECT_THROW(LambdaFamily({}), ArgumentError);
  EXPECT_THROW(LambdaFamily::from_one_based({{1, 2}, {1}}), ArgumentError);
  EXPECT_THROW(LambdaFamily::from_one_based({{1, 3}, {1, 2}}), ArgumentError);
  EXPECT_THROW(LambdaFamily::from_one_based({{0, 1}, {1, 2}}), ArgumentError);
}

TEST(Presets, CoupledRows) {
  EXPECT_EQ(coupled_preset().to_string(), "[[1,2],[2,1]]");
  const auto F = scalar_operator(2, [](std::span<const double> a) { return a[0]; });
  EXPECT_EQ(apply_lambda_f(F, coupled_preset(), tuple({4, 9})), tuple({4, 9}));
}

TEST(Presets, TripledRows) {
  EXPECT_EQ(tripled_preset().to_string(), "[[1,2,3],[2,1,2],[3,2,1]]");
  const auto F = constant_operator<std::size_t>(3, 1);
  EXPECT_EQ(apply_lambda_f(F, tripled_preset(), Tuple{2, 0, 2}), (Tuple{1, 1, 1}));
}

TEST(Surjectivity, CoupledRowsAreOnto) {
  const auto r = surjectivity_report(coupled_preset());
  EXPECT_EQ(r.row_surjective, (std::vector<bool>{true, true}));
  EXPECT_TRUE(r.union_of_images_full);
  EXPECT_TRUE(r.literal_vacuous);
}

TEST(Surjectivity, TripledMiddleRowIsNotOnto) {
  const auto r = surjectivity_report(tripled_preset());
  // Row images: {1,2,3}, {1,2}, {1,2,3}.
  EXPECT_EQ(r.row_surjective, (std::vector<bool>{true, false, true}));
  EXPECT_TRUE(r.union_of_images_full);
  EXPECT_FALSE(r.all_rows_surjective());
}

TEST(Surjectivity, ConstantRowsFailBothReadings) {
  const auto r = surjectivity_report(LambdaFamily::from_one_based({{1, 1}, {1, 1}}));
  EXPECT_EQ(r.row_surjective, (std::vector<bool>{false, false}));
  EXPECT_FALSE(r.union_of_images_full);
  // The literal preimage union still covers the whole domain.
  EXPECT_EQ(r.preimage_union_size, (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(r.literal_vacuous);
}

TEST(MultipleFixedPoint, LinearCoupledSolution) {
  // x = (x - y)/4 + 1, y = (y - x)/4 + 1 has the unique solution (1,1).
  const auto F = scalar_operator(2, [](std::span<const double> a) { return (a[0] - a[1]) / 4 + 1; });
  const auto cert = is_multiple_fixed_point(BoxSpace::interval(-10, 10), F, coupled_preset(),
                                            tuple({1, 1}), 0.0);
  EXPECT_TRUE(cert.exact);
  EXPECT_TRUE(cert.accepted);
  EXPECT_EQ(cert.residual, 0.0);
}

TEST(MultipleFixedPoint, ConstantDiagonal) {
  const FiniteSpace s = gen::chain_instance(4).space;
  const auto cert = is_multiple_fixed_point(s, constant_operator<std::size_t>(3, 2),
                                            tripled_preset(), Tuple{2, 2, 2}, 0.0);
  EXPECT_TRUE(cert.exact);
}

TEST(MultipleFixedPoint, FlipHasResidualTwo) {
  const FiniteSpace s = gen::chain_instance(2).space;
  const auto F = gen::tabulate(s, 2, [](std::span<const std::size_t> t) { return 1 - t[0]; });
  const auto cert = is_multiple_fixed_point(s, F, coupled_preset(), Tuple{0, 0}, 0.0);
  EXPECT_FALSE(cert.accepted);
  EXPECT_FALSE(cert.exact);
  EXPECT_EQ(cert.residual, 2.0);
  EXPECT_TRUE(is_multiple_fixed_point(s, F, coupled_preset(), Tuple{0, 0}, 2.0).accepted);
  EXPECT_THROW(is_multiple_fixed_point(s, F, coupled_preset(), Tuple{0, 0}, -1.0), ArgumentError);
}

TEST(LambdaProperty, IdentityRowsRepeatTheDiagonalValue) {
  gen::Rng rng(31);
  const FiniteSpace s = gen::chain_instance(3).space;
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto F = gen::random_operator(rng, s, m);
    const TupleIndexer idx(3, m);
    for (std::size_t i = 0; i < idx.count(); ++i) {
      const Tuple x = idx.decode(i);
      const Tuple y = apply_lambda_f(F, LambdaFamily::identity(m), x);
      for (std::size_t k = 0; k < m; ++k) ASSERT_EQ(y[k], F(std::span<const std::size_t>(x)));
    }
  }
}

TEST(LambdaProperty, ExactFixedPointsAreStationary) {
  gen::Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const FiniteSpace s = gen::chain_instance(2 + trial % 3).space;
    const std::size_t m = 2 + trial % 2;
    const auto lambda = m == 2 ? coupled_preset() : tripled_preset();
    const auto F = gen::random_operator(rng, s, m);
    const TupleIndexer idx(s.size(), m);
    for (std::size_t i = 0; i < idx.count(); ++i) {
      const Tuple a = idx.decode(i);
      if (!is_multiple_fixed_point(s, F, lambda, a, 0.0).accepted) continue;
      Tuple x = a;
      for (int k = 0; k < 5; ++k) {
        x = apply_lambda_f(F, lambda, x);
        ASSERT_EQ(x, a);
      }
    }
  }
}

TEST(LambdaProperty, IsotoneClauseTransportsOrder) {
  gen::Rng rng(33);
  int transported = 0;
  const std::vector<gen::LatticeInstance> lattices{gen::chain_instance(3), gen::diamond_instance(),
                                                   gen::grid_instance(2, 2)};
  for (int trial = 0; trial < 300; ++trial) {
    const auto& inst = lattices[trial % lattices.size()];
    const LSet L = LSet::from_mask(2, trial % 4);
    // Monotone tables are rare at random; mix in order-respecting shapes.
    const auto F = trial % 3 == 0
                       ? gen::random_operator(rng, inst.space, 2)
                       : gen::tabulate(inst.space, 2, [&](std::span<const std::size_t> t) {
                           return trial % 3 == 1 ? t[0] : t[1];
                         });
    const auto report = check_omega(inst.space, inst.order, F, coupled_preset(), L, 1);
    const auto* iso = clause(report, "isotone images");
    ASSERT_NE(iso, nullptr);
    if (iso->verdict != Verdict::pass) continue;
    ++transported;
    const TupleIndexer idx(inst.space.size(), 2);
    for (std::size_t a = 0; a < idx.count(); ++a)
      for (std::size_t b = 0; b < idx.count(); ++b) {
        const Tuple x = idx.decode(a), y = idx.decode(b);
        if (!compare_L(inst.order, L, x, y)) continue;
        ASSERT_TRUE(compare_L(inst.order, L, apply_lambda_f(F, coupled_preset(), x),
                              apply_lambda_f(F, coupled_preset(), y)));
      }
  }
  EXPECT_GT(transported, 10);
}

}  // namespace
}  // namespace multifix
