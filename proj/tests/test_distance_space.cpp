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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "generators.hpp"
#include "multifix.hpp"

namespace multifix {
namespace {

using Vec = std::vector<double>;

FiniteSpace path3() { return FiniteSpace({"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0}); }

FiniteSpace one_way() { return FiniteSpace({"a", "b"}, {0, 1, 0, 0}); }

std::vector<Vec> scalars(std::initializer_list<double> xs) {
  std::vector<Vec> out;
  for (double x : xs) out.push_back({x});
  return out;
}

// Independent brute-force oracle: flags straight from the axioms, with the
// N/F quantifiers checked at delta below the least positive distance.
DistanceClass oracle_classify(const FiniteSpace& s) {
  const std::size_t n = s.size();
  DistanceClass c;
  c.symmetric = c.quasimetric = true;
  double s_min = 1.0;
  bool s_ok = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (s.distance(x, y) != s.distance(y, x)) c.symmetric = false;
      for (std::size_t z = 0; z < n; ++z) {
        if (s.distance(x, z) > s.distance(x, y) + s.distance(y, z)) c.quasimetric = false;
        const double via = s.distance(x, z) + s.distance(z, y);
        if (via == 0.0) {
          if (s.distance(x, y) > 0.0) s_ok = false;
        } else {
          s_min = std::max(s_min, s.distance(x, y) / via);
        }
      }
    }
  c.metric = c.symmetric && c.quasimetric;
  if (s_ok) c.s_distance = s_min;
  bool n_ok = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (s.distance(x, y) == 0.0 && s.distance(y, z) == 0.0 && s.distance(x, z) > 0.0)
          n_ok = false;
  c.n_distance = c.f_distance = n_ok;
  c.h_distance = true;
  double tight = 1e300;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      double best = 1e300;
      for (std::size_t z = 0; z < n; ++z)
        best = std::min(best, std::max(s.distance(x, z), s.distance(y, z)));
      if (best == 0.0) c.h_distance = false;
      tight = std::min(tight, best);
    }
  if (c.h_distance && n > 1) c.h_delta = tight / 2;
  return c;
}

TEST(BallContains, InteriorPointOfRealBall) {
  EXPECT_TRUE(ball_contains(BoxSpace::interval(-10, 10), Vec{0.0}, 1.0, Vec{0.5}));
}

TEST(BallContains, BoundaryIsExcluded) {
  EXPECT_FALSE(ball_contains(BoxSpace::interval(-10, 10), Vec{0.0}, 1.0, Vec{1.0}));
}

TEST(BallContains, FiniteTableLookup) {
  const FiniteSpace s({"a", "b"}, {0, 2, 2, 0});
  EXPECT_TRUE(ball_contains(s, s.at("a"), 3.0, s.at("b")));
  EXPECT_FALSE(ball_contains(s, s.at("a"), 2.0, s.at("b")));
}

TEST(BallContains, UsesCenterFirstOrientation) {
  const FiniteSpace s = one_way();
  EXPECT_FALSE(ball_contains(s, 0, 0.5, 1));  // d(a,b) = 1
  EXPECT_TRUE(ball_contains(s, 1, 0.5, 0));   // d(b,a) = 0
}

TEST(BallContains, RejectsBadArguments) {
  const auto r = BoxSpace::interval(0, 1);
  EXPECT_THROW(ball_contains(r, Vec{0.0}, 0.0, Vec{0.5}), ArgumentError);
  EXPECT_THROW(ball_contains(r, Vec{2.0}, 1.0, Vec{0.5}), DomainError);
  EXPECT_THROW(ball_contains(r, Vec{0.0}, 1.0, Vec{-3.0}), DomainError);
  EXPECT_THROW(ball_contains(path3(), 0, 1.0, 7), DomainError);
}

TEST(FiniteSpace, ValidatesAxiomsAndLabels) {
  EXPECT_THROW(FiniteSpace({"a", "b"}, {0, -1, 1, 0}), PreconditionError);
  EXPECT_THROW(FiniteSpace({"a", "b"}, {0, 0, 0, 0}), PreconditionError);
  EXPECT_THROW(FiniteSpace({"a", "b"}, {1, 1, 1, 0}), PreconditionError);
  EXPECT_THROW(FiniteSpace({"a", "a"}, {0, 1, 1, 0}), ArgumentError);
  EXPECT_THROW(FiniteSpace({"a", "b"}, {0, 1, 1}), ArgumentError);
  EXPECT_THROW(FiniteSpace({}, {}), ArgumentError);
}

TEST(Classify, PathGraphIsMetricWithUnitS) {
  const auto c = classify_finite(path3());
  EXPECT_TRUE(c.metric);
  EXPECT_TRUE(c.symmetric);
  EXPECT_TRUE(c.quasimetric);
  ASSERT_TRUE(c.s_distance.has_value());
  EXPECT_EQ(*c.s_distance, 1.0);
}

TEST(Classify, OneWayTableIsQuasimetricNotSymmetric) {
  const FiniteSpace s = one_way();
  // Oracle: all 8 triples of the directed triangle inequality.
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z)
        ASSERT_LE(s.distance(x, z), s.distance(x, y) + s.distance(y, z));
  const auto c = classify_finite(s);
  EXPECT_FALSE(c.symmetric);
  EXPECT_TRUE(c.quasimetric);
  EXPECT_FALSE(c.metric);
}

TEST(Classify, TwoPointMetricIsHWithHalfRadius) {
  const auto c = classify_finite(FiniteSpace({"a", "b"}, {0, 1, 1, 0}));
  EXPECT_TRUE(c.h_distance);
  ASSERT_TRUE(c.h_delta.has_value());
  EXPECT_EQ(*c.h_delta, 0.5);
}

TEST(Classify, OneWayTableIsNotH) {
  // d(b,a) = 0 puts a in every ball around b.
  EXPECT_FALSE(classify_finite(one_way()).h_distance);
}

TEST(Classify, ZeroHopChainBreaksNAndF) {
  // d(a,b) = d(b,c) = 0 but d(a,c) = 5: no delta keeps d(a,c) below eps < 5.
  const FiniteSpace s({"a", "b", "c"}, {0, 0, 5, 1, 0, 0, 1, 1, 0});
  const auto c = classify_finite(s);
  EXPECT_FALSE(c.n_distance);
  EXPECT_FALSE(c.f_distance);
  EXPECT_FALSE(c.s_distance.has_value());
  // An eps grid above the gap accepts it.
  const std::vector<double> coarse{6.0};
  EXPECT_TRUE(classify_finite(s, coarse).f_distance);
  const std::vector<double> fine{4.0, 6.0};
  EXPECT_FALSE(classify_finite(s, fine).f_distance);
}

TEST(Classify, RelaxedTriangleWitness) {
  // Squared path metric: d(a,c) = 4 = 2 (d(a,b) + d(b,c)).
  const FiniteSpace s({"a", "b", "c"}, {0, 1, 4, 1, 0, 1, 4, 1, 0});
  const auto c = classify_finite(s);
  EXPECT_FALSE(c.quasimetric);
  ASSERT_TRUE(c.s_distance.has_value());
  EXPECT_EQ(*c.s_distance, 2.0);
}

TEST(Classify, RejectsBadGridAndContinuousCarrier) {
  const std::vector<double> bad{0.0};
  EXPECT_THROW(classify_finite(path3(), bad), ArgumentError);
  EXPECT_THROW(classify_finite(BoxSpace::interval(0, 1)), UnsupportedError);
}

TEST(ClassifyProperty, AgreesWithAxiomOracle) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const auto cls = static_cast<gen::SpaceClass>(trial % 4);
    const std::size_t n = 1 + trial % 6;
    const FiniteSpace s = gen::random_space(rng, n, cls);
    ASSERT_EQ(classify_finite(s), oracle_classify(s)) << "trial " << trial;
  }
}

TEST(ClassifyProperty, IdempotentAndLabelPermutationInvariant) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const FiniteSpace s = gen::random_space(rng, n, static_cast<gen::SpaceClass>(trial % 4));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> table(n * n);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
      names[i] = s.label(perm[i]);
      for (std::size_t j = 0; j < n; ++j) table[i * n + j] = s.distance(perm[i], perm[j]);
    }
    const auto c = classify_finite(s);
    EXPECT_EQ(c, classify_finite(s));
    EXPECT_EQ(c, classify_finite(FiniteSpace(names, table)));
  }
}

TEST(ClassifyProperty, ImplicationChain) {
  gen::Rng rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    const FiniteSpace s =
        gen::random_space(rng, 1 + trial % 6, static_cast<gen::SpaceClass>(trial % 4));
    const auto c = classify_finite(s);
    if (c.metric) {
      EXPECT_TRUE(c.symmetric && c.quasimetric);
      ASSERT_TRUE(c.s_distance.has_value());
      EXPECT_EQ(*c.s_distance, 1.0);
    }
    if (c.quasimetric) { EXPECT_TRUE(c.s_distance.has_value()); }
    if (c.s_distance) { EXPECT_TRUE(c.f_distance); }
    if (c.f_distance) { EXPECT_TRUE(c.n_distance); }
  }
}

TEST(ClassifyProperty, HDistanceSeparatesPrefixLimits) {
  gen::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const FiniteSpace s = gen::random_space(rng, n, static_cast<gen::SpaceClass>(trial % 4));
    const auto c = classify_finite(s);
    if (!c.h_distance) continue;
    const double tol = *c.h_delta;
    // Every constant tail is the sharpest prefix a sequence can offer.
    for (std::size_t z = 0; z < n; ++z) {
      const std::vector<std::size_t> seq(3, z);
      std::size_t limits = 0;
      for (std::size_t x = 0; x < n; ++x) limits += converges_to(s, std::span(seq), x, tol, 3);
      EXPECT_LE(limits, 1u);
    }
  }
}

TEST(CauchyPrefix, GeometricTail) {
  std::vector<Vec> seq;
  for (int k = 0; k <= 10; ++k) seq.push_back({std::ldexp(1.0, -k)});
  EXPECT_TRUE(is_cauchy_prefix(BoxSpace::interval(-1, 1), std::span<const Vec>(seq), 1e-2, 4));
}

TEST(CauchyPrefix, AlternatingFails) {
  const auto seq = scalars({0, 1, 0, 1});
  EXPECT_FALSE(is_cauchy_prefix(BoxSpace::interval(0, 1), std::span<const Vec>(seq), 0.5, 4));
}

TEST(CauchyPrefix, ConstantSequenceAlwaysPasses) {
  const std::vector<std::size_t> seq(5, 2);
  for (std::size_t tail = 1; tail <= 5; ++tail)
    EXPECT_TRUE(is_cauchy_prefix(path3(), std::span<const std::size_t>(seq), 1e-9, tail));
}

TEST(CauchyPrefix, ChecksBothOrientations) {
  const std::vector<std::size_t> seq{1, 0};  // d(b,a) = 0, d(a,b) = 1
  EXPECT_FALSE(is_cauchy_prefix(one_way(), std::span<const std::size_t>(seq), 0.5, 2));
}

TEST(CauchyPrefix, RejectsBadTail) {
  const auto seq = scalars({0, 1});
  const auto r = BoxSpace::interval(0, 1);
  EXPECT_THROW(is_cauchy_prefix(r, std::span<const Vec>(seq), 0.5, 0), ArgumentError);
  EXPECT_THROW(is_cauchy_prefix(r, std::span<const Vec>(seq), 0.5, 3), ArgumentError);
}

TEST(ConvergesTo, GeometricToZero) {
  std::vector<Vec> seq;
  for (int k = 0; k <= 20; ++k) seq.push_back({std::ldexp(1.0, -k)});
  EXPECT_TRUE(converges_to(BoxSpace::interval(-1, 1), std::span<const Vec>(seq), Vec{0.0}, 1e-3, 3));
}

TEST(ConvergesTo, OrientationIsLimitFirst) {
  // d(a,b) = 0 and d(b,a) = 1: b,b,b converges to a only via d(a, x_n).
  const FiniteSpace s({"a", "b"}, {0, 0, 1, 0});
  const std::vector<std::size_t> seq(3, 1);
  EXPECT_TRUE(converges_to(s, std::span<const std::size_t>(seq), 0, 0.5, 3));
  EXPECT_GE(s.distance(1, 0), 0.5);  // reversed orientation would reject
}

TEST(ConvergesTo, ConstantAwayFromLimit) {
  const auto seq = scalars({1, 1, 1});
  EXPECT_FALSE(converges_to(BoxSpace::interval(-2, 2), std::span<const Vec>(seq), Vec{0.0}, 0.5, 3));
}

TEST(ConvergesTo, RejectsBadTailAndLimit) {
  const auto seq = scalars({1, 1});
  const auto r = BoxSpace::interval(-2, 2);
  EXPECT_THROW(converges_to(r, std::span<const Vec>(seq), Vec{0.0}, 0.5, 0), ArgumentError);
  EXPECT_THROW(converges_to(r, std::span<const Vec>(seq), Vec{9.0}, 0.5, 1), DomainError);
}

TEST(BoxSpace, NormsAndBounds) {
  const auto l1 = BoxSpace::with_norm(2, 0, 4, BoxSpace::Norm::l1);
  const auto linf = BoxSpace::with_norm(2, 0, 4, BoxSpace::Norm::linf);
  const auto l2 = BoxSpace::with_norm(2, 0, 4, BoxSpace::Norm::l2);
  EXPECT_EQ(l1.distance({0, 0}, {3, 4}), 7.0);
  EXPECT_EQ(linf.distance({0, 0}, {3, 4}), 4.0);
  EXPECT_EQ(l2.distance({0, 0}, {3, 4}), 5.0);
  EXPECT_TRUE(l1.contains({0, 4}));
  const auto open = BoxSpace::interval(0, 1, false, true);
  EXPECT_FALSE(open.contains({0.0}));
  EXPECT_TRUE(open.contains({0.5}));
  EXPECT_THROW(BoxSpace::interval(1, 0), ArgumentError);
}

}  // namespace
}  // namespace multifix
