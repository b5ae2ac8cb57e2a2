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

#include <cstdlib>
#include <utility>
#include <vector>

#include "generators.hpp"
#include "multifix.hpp"

namespace multifix {
namespace {

using Vec = std::vector<double>;
using RealTuple = ProductPoint<Vec>;

const BoxSpace kReals = BoxSpace::interval(-100, 100);

RealTuple tuple(std::initializer_list<double> xs) {
  RealTuple out;
  for (double x : xs) out.push_back({x});
  return out;
}

TEST(SupDistance, MaxOfCoordinates) {
  EXPECT_EQ(sup_distance(kReals, tuple({0, 0}), tuple({1, 3})), 3.0);
}

TEST(SumDistance, SumOfCoordinates) {
  EXPECT_EQ(sum_distance(kReals, tuple({0, 0}), tuple({1, 3})), 4.0);
}

TEST(ProductDistances, IdentityAndSingleton) {
  const auto x = tuple({2, -5, 7});
  EXPECT_EQ(sup_distance(kReals, x, x), 0.0);
  EXPECT_EQ(sum_distance(kReals, x, x), 0.0);
  EXPECT_EQ(sup_distance(kReals, tuple({2}), tuple({-1})), 3.0);
  EXPECT_EQ(sum_distance(kReals, tuple({2}), tuple({-1})), 3.0);
}

TEST(ProductDistances, ArityMismatchThrows) {
  EXPECT_THROW(sup_distance(kReals, tuple({0}), tuple({1, 2})), ArgumentError);
  EXPECT_THROW(sum_distance(kReals, tuple({0, 1}), tuple({1})), ArgumentError);
}

TEST(ProductDistances, KeepCoordinateOrientation) {
  const FiniteSpace s({"a", "b"}, {0, 1, 0, 0});
  const ProductPoint<std::size_t> x{0, 1}, y{1, 0};
  EXPECT_EQ(sum_distance(s, x, y), 1.0);  // d(a,b) + d(b,a)
  EXPECT_EQ(sup_distance(s, y, x), 1.0);
}

TEST(ProductSpace, TwoPointMetricSquaredIsMetric) {
  const FiniteSpace base({"a", "b"}, {0, 1, 1, 0});
  const FiniteSpace p = product_space(base, 2, ProductKind::sup);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.label(1), "(a,b)");
  // Oracle: sup of coordinate distances, entry by entry.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double want = std::max(base.distance(i / 2, j / 2), base.distance(i % 2, j % 2));
      ASSERT_EQ(p.distance(i, j), want);
    }
  EXPECT_TRUE(classify_finite(p).metric);
}

TEST(ProductSpace, QuasimetricSumStaysQuasimetric) {
  const FiniteSpace base({"a", "b", "c"}, {0, 1, 2, 0, 0, 1, 0, 0, 0});
  ASSERT_TRUE(classify_finite(base).quasimetric);
  const auto c = classify_finite(product_space(base, 2, ProductKind::sum));
  EXPECT_TRUE(c.quasimetric);
  EXPECT_FALSE(c.symmetric);
}

TEST(ProductSpace, ArityOneMatchesBase) {
  gen::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteSpace base =
        gen::random_space(rng, 2 + trial % 4, static_cast<gen::SpaceClass>(trial % 4));
    for (auto kind : {ProductKind::sup, ProductKind::sum}) {
      const FiniteSpace p = product_space(base, 1, kind);
      EXPECT_EQ(classify_finite(p), classify_finite(base));
      for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j)
          ASSERT_EQ(p.distance(i, j), base.distance(i, j));
    }
  }
}

TEST(ProductSpace, CapacityErrorNamesSize) {
  const FiniteSpace base = gen::chain_instance(10).space;
  try {
    (void)product_space(base, 7, ProductKind::sup);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find("10^7"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW((void)product_space(base, 3, ProductKind::sup, 1000));
  EXPECT_THROW((void)product_space(base, 3, ProductKind::sup, 999), CapacityError);
}

TEST(ProductSpace, EnvironmentOverridesCap) {
  ::setenv("MULTIFIX_CAP", "50", 1);
  EXPECT_EQ(cap_from_env(), 50u);
  ::setenv("MULTIFIX_CAP", "junk", 1);
  EXPECT_EQ(cap_from_env(), kDefaultCap);
  ::unsetenv("MULTIFIX_CAP");
  EXPECT_EQ(cap_from_env(), kDefaultCap);
}

TEST(ProductSpace, LazyViewAgreesWithMaterialized) {
  gen::Rng rng(5);
  const FiniteSpace base = gen::random_space(rng, 4, gen::SpaceClass::quasimetric);
  const ProductSpace<FiniteSpace> lazy(base, 3, ProductKind::sum);
  const FiniteSpace eager = materialize(lazy);
  const TupleIndexer idx(4, 3);
  for (std::size_t i = 0; i < idx.count(); ++i)
    for (std::size_t j = 0; j < idx.count(); ++j)
      ASSERT_EQ(eager.distance(i, j), lazy.distance(idx.decode(i), idx.decode(j)));
}

TEST(ProductSpace, BoxLiftsDimension) {
  const BoxSpace lifted = product_space(BoxSpace::interval(0, 1), 3, ProductKind::sum);
  EXPECT_EQ(lifted.dimension(), 3u);
  EXPECT_EQ(lifted.distance({0, 0, 0}, {1, 0.5, 0.25}), 1.75);
  const BoxSpace sup = product_space(BoxSpace::interval(0, 1), 3, ProductKind::sup);
  EXPECT_EQ(sup.distance({0, 0, 0}, {1, 0.5, 0.25}), 1.0);
}

TEST(TupleIndexer, RoundTripsCanonically) {
  const TupleIndexer idx(3, 2);
  EXPECT_EQ(idx.count(), 9u);
  EXPECT_EQ(idx.decode(5), (ProductPoint<std::size_t>{1, 2}));
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(idx.encode(idx.decode(i)), i);
}

TEST(CompareL, MixedOrder) {
  const ComponentwiseOrder le;
  EXPECT_TRUE(compare_L(le, LSet::from_one_based(2, {1}), tuple({1, 5}), tuple({2, 3})));
}

TEST(CompareL, AllForward) {
  const ComponentwiseOrder le;
  EXPECT_FALSE(compare_L(le, LSet::from_one_based(2, {1, 2}), tuple({1, 5}), tuple({2, 3})));
}

TEST(CompareL, Reflexive) {
  const ComponentwiseOrder le;
  for (unsigned long mask = 0; mask < 8; ++mask)
    EXPECT_TRUE(compare_L(le, LSet::from_mask(3, mask), tuple({1, 2, 3}), tuple({1, 2, 3})));
}

TEST(CompareL, RejectsArityMismatch) {
  EXPECT_THROW(compare_L(ComponentwiseOrder{}, LSet(2), tuple({1}), tuple({1})), ArgumentError);
}

TEST(LSet, FormattingAndComplement) {
  const LSet L = LSet::from_one_based(3, {1, 3});
  EXPECT_EQ(L.to_string(), "L={1,3}");
  EXPECT_EQ(L.complement().to_string(), "L={2}");
  EXPECT_EQ(L.complement().complement(), L);
  EXPECT_THROW(LSet::from_one_based(2, {3}), ArgumentError);
  EXPECT_THROW(LSet::from_one_based(2, {0}), ArgumentError);
}

TEST(CompareLProperty, DualityOverAllSmallPosets) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const FiniteOrder& order : gen::all_partial_orders(n))
      for (std::size_t m = 1; m <= 2; ++m) {
        const TupleIndexer idx(n, m);
        for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
          const LSet L = LSet::from_mask(m, mask);
          for (std::size_t a = 0; a < idx.count(); ++a)
            for (std::size_t b = 0; b < idx.count(); ++b) {
              const auto x = idx.decode(a), y = idx.decode(b);
              ASSERT_EQ(compare_L(order, L, x, y), compare_L(order, L.complement(), y, x));
            }
        }
      }
}

TEST(CompareLProperty, ArityOneWithFullLIsBaseOrder) {
  for (const FiniteOrder& order : gen::all_partial_orders(3))
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        ASSERT_EQ(compare_L(order, LSet::all(1), ProductPoint<std::size_t>{a},
                            ProductPoint<std::size_t>{b}),
                  order.leq(a, b));
}

TEST(UniformEquivalence, SinglePairArithmetic) {
  const std::vector<std::pair<RealTuple, RealTuple>> sample{{tuple({0, 0}), tuple({1, 3})}};
  const auto r = check_uniform_equivalence(kReals, 2, std::span(sample));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.pairs_checked, 1u);
}

TEST(UniformEquivalence, ArityOneIsEquality) {
  gen::Rng rng(2);
  std::vector<std::pair<RealTuple, RealTuple>> sample;
  for (int i = 0; i < 100; ++i) {
    const double a = gen::uniform_int(rng, -50, 50), b = gen::uniform_int(rng, -50, 50);
    sample.push_back({tuple({a}), tuple({b})});
    EXPECT_EQ(sup_distance(kReals, sample.back().first, sample.back().second),
              sum_distance(kReals, sample.back().first, sample.back().second));
  }
  EXPECT_TRUE(check_uniform_equivalence(kReals, 1, std::span(sample)).passed);
}

TEST(UniformEquivalence, ExhaustiveThreePointCube) {
  const FiniteSpace base = gen::chain_instance(3).space;
  const TupleIndexer idx(3, 3);
  std::vector<std::pair<ProductPoint<std::size_t>, ProductPoint<std::size_t>>> sample;
  for (std::size_t a = 0; a < idx.count(); ++a)
    for (std::size_t b = 0; b < idx.count(); ++b) sample.push_back({idx.decode(a), idx.decode(b)});
  ASSERT_EQ(sample.size(), 729u);
  const auto r = check_uniform_equivalence(base, 3, std::span(sample));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.pairs_checked, 729u);
}

TEST(UniformEquivalence, RejectsEmptySample) {
  const std::vector<std::pair<RealTuple, RealTuple>> none;
  EXPECT_THROW(check_uniform_equivalence(kReals, 2, std::span(none)), ArgumentError);
}

TEST(MonotoneCompleteness, FiniteAndDeclared) {
  const auto fin = check_monotone_complete_surrogate(gen::chain_instance(3).space,
                                                     FiniteOrder::chain(3));
  EXPECT_TRUE(fin.complete);
  EXPECT_FALSE(fin.assumed);
  const auto closed =
      check_monotone_complete_surrogate(BoxSpace::interval(0, 1, true), ComponentwiseOrder{});
  EXPECT_TRUE(closed.complete);
  EXPECT_TRUE(closed.assumed);
  const auto open = check_monotone_complete_surrogate(BoxSpace::interval(0, 1, false, true),
                                                      ComponentwiseOrder{});
  EXPECT_FALSE(open.complete);
  EXPECT_TRUE(open.assumed);
}

TEST(ProductClosureProperty, FlagsInheritedAndSandwichHolds) {
  gen::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cls = static_cast<gen::SpaceClass>(trial % 4);
    const FiniteSpace base = gen::random_space(rng, 2 + trial % 3, cls);
    const auto bc = classify_finite(base);
    for (std::size_t m : {2u, 3u}) {
      const FiniteSpace sup = product_space(base, m, ProductKind::sup);
      const FiniteSpace sum = product_space(base, m, ProductKind::sum);
      for (const FiniteSpace* p : {&sup, &sum}) {
        const auto pc = classify_finite(*p);
        if (bc.symmetric) { EXPECT_TRUE(pc.symmetric); }
        if (bc.quasimetric) { EXPECT_TRUE(pc.quasimetric); }
        if (bc.metric) { EXPECT_TRUE(pc.metric); }
        if (bc.n_distance) { EXPECT_TRUE(pc.n_distance); }
        if (bc.f_distance) { EXPECT_TRUE(pc.f_distance); }
        if (bc.h_distance) { EXPECT_TRUE(pc.h_distance); }
        if (bc.s_distance) {
          ASSERT_TRUE(pc.s_distance.has_value());
          EXPECT_LE(*pc.s_distance, *bc.s_distance);
        }
      }
      for (std::size_t i = 0; i < sup.size(); ++i)
        for (std::size_t j = 0; j < sup.size(); ++j) {
          ASSERT_LE(sup.distance(i, j), sum.distance(i, j));
          ASSERT_LE(sum.distance(i, j), static_cast<double>(m) * sup.distance(i, j));
        }
    }
  }
}

}  // namespace
}  // namespace multifix
