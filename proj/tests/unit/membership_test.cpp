#include <gtest/gtest.h>

#include <random>

#include "evohandoff/errors.hpp"
#include "evohandoff/inference.hpp"
#include "evohandoff/membership.hpp"

using namespace evohandoff;

TEST(MembershipFunction, TriangleExamples) {
  const auto tri = MembershipFunction::triangular("T", 0, 0.5, 1);
  EXPECT_DOUBLE_EQ(membership_degree(tri, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(membership_degree(tri, 0.25), 0.5);
  EXPECT_DOUBLE_EQ(membership_degree(tri, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(membership_degree(tri, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(membership_degree(tri, 1.0), 0.0);
}

TEST(MembershipFunction, TrapezoidPlateauAndShoulders) {
  const auto trap = MembershipFunction::trapezoidal("T", 1, 2, 4, 8);
  EXPECT_DOUBLE_EQ(trap.degree(2), 1.0);
  EXPECT_DOUBLE_EQ(trap.degree(3), 1.0);
  EXPECT_DOUBLE_EQ(trap.degree(4), 1.0);
  EXPECT_DOUBLE_EQ(trap.degree(1.5), 0.5);
  EXPECT_DOUBLE_EQ(trap.degree(6), 0.5);
  EXPECT_DOUBLE_EQ(trap.degree(0.5), 0.0);
  EXPECT_DOUBLE_EQ(trap.degree(9), 0.0);
  EXPECT_EQ(trap.breakpoints().size(), 4U);
  EXPECT_DOUBLE_EQ(trap.peak(), 3.0);
}

TEST(MembershipFunction, ShoulderTermsReachOneAtTheEdge) {
  const auto left = MembershipFunction::triangular("L", 0, 0, 15);
  const auto right = MembershipFunction::triangular("R", 15, 30, 30);
  EXPECT_DOUBLE_EQ(left.degree(0), 1.0);
  EXPECT_DOUBLE_EQ(right.degree(30), 1.0);
  EXPECT_DOUBLE_EQ(left.degree(15), 0.0);
}

TEST(MembershipFunction, RejectsDescendingBreakpoints) {
  EXPECT_THROW(MembershipFunction::triangular("bad", 1, 0.5, 2), ValidationError);
  EXPECT_THROW(MembershipFunction::trapezoidal("bad", 0, 2, 1, 3), ValidationError);
}

TEST(MembershipFunction, DegreeStaysInUnitInterval) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> pt(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    std::array<double, 4> p{pt(gen), pt(gen), pt(gen), pt(gen)};
    std::sort(p.begin(), p.end());
    const auto mf = MembershipFunction::trapezoidal("x", p[0], p[1], p[2], p[3]);
    for (int k = 0; k < 50; ++k) {
      const double d = mf.degree(pt(gen) * 2);
      ASSERT_GE(d, 0.0);
      ASSERT_LE(d, 1.0);
    }
  }
}

TEST(LinguisticVariable, VelocityFuzzifyExamples) {
  const auto v = FuzzySystem::default_velocity();
  auto d = fuzzify(v, 0);
  EXPECT_DOUBLE_EQ(d[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1], 0.0);
  EXPECT_DOUBLE_EQ(d[2], 0.0);

  d = fuzzify(v, 10);
  EXPECT_NEAR(d[0], 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(d[1], 0.5);
  EXPECT_DOUBLE_EQ(d[2], 0.0);

  d = fuzzify(v, 100);  // clamped to 30
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 0.0);
  EXPECT_DOUBLE_EQ(d[2], 1.0);

  d = fuzzify(v, -4);  // clamped to 0
  EXPECT_DOUBLE_EQ(d[0], 1.0);
}

TEST(LinguisticVariable, ValidationErrors) {
  using MF = MembershipFunction;
  EXPECT_THROW(LinguisticVariable("v", 1, 1, {MF::triangular("a", 0, 1, 2)}), ValidationError);
  EXPECT_THROW(LinguisticVariable("v", 0, 1, {MF::triangular("a", 0, 0, 1), MF::triangular("a", 0, 1, 1)}),
               ValidationError);
  // peaks must strictly increase
  EXPECT_THROW(LinguisticVariable("v", 0, 1, {MF::triangular("a", 0, 1, 1), MF::triangular("b", 0, 0, 1)}),
               ValidationError);
  // gap on (0.4, 0.6)
  EXPECT_THROW(LinguisticVariable("v", 0, 1, {MF::triangular("a", 0, 0, 0.4), MF::triangular("b", 0.6, 1, 1)}),
               ValidationError);
  // a single shared zero point between two supports is also a gap
  EXPECT_THROW(LinguisticVariable("v", 0, 1, {MF::triangular("a", 0, 0, 0.5), MF::triangular("b", 0.5, 1, 1)}),
               ValidationError);
  // left edge uncovered
  EXPECT_THROW(LinguisticVariable("v", 0, 1, {MF::triangular("a", 0, 0.5, 1), MF::triangular("b", 0.5, 1, 1)}),
               ValidationError);
}

TEST(LinguisticVariable, DefaultsCoverTheirUniverse) {
  std::mt19937_64 gen(5);
  for (const auto& var : {FuzzySystem::default_velocity(), FuzzySystem::default_distance(),
                          FuzzySystem::default_channels(), FuzzySystem::default_output()}) {
    std::uniform_real_distribution<double> x(var.lo(), var.hi());
    for (int i = 0; i < 10000; ++i) {
      const auto d = var.fuzzify(x(gen));
      double sum = 0.0;
      double best = 0.0;
      for (double v : d) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
        sum += v;
        best = std::max(best, v);
      }
      ASSERT_TRUE(std::isfinite(sum));
      ASSERT_GT(best, 0.0) << var.name();
    }
  }
}
