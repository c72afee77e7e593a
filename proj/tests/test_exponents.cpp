#include <gtest/gtest.h>

#include "wavelab/error.hpp"
#include "wavelab/exponents.hpp"
#include "wavelab/polynomial.hpp"

using namespace wavelab;
using namespace wavelab::exponents;

namespace {
Rational R(long p, long q = 1) { return Rational(p, q); }
}

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.125"), R(1, 8));
  EXPECT_EQ(parse_rational("-7/4"), R(-7, 4));
  EXPECT_EQ(parse_rational("1e-2"), R(1, 100));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(ExtRational, InfinityIsExplicit) {
  auto inf = ExtRational::infinity();
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_EQ(inf.reciprocal(), R(0));
  EXPECT_TRUE(ExtRational::from_reciprocal(R(0)).is_infinite());
  EXPECT_GT(inf, ExtRational(R(1000000)));
  EXPECT_EQ(ExtRational::parse("inf"), inf);
  EXPECT_THROW(inf.value(), DomainError);
}

TEST(Exponents, ThetaValues) {
  EXPECT_EQ(theta1(R(1), R(1, 4)), R(3, 2));
  EXPECT_EQ(default_gamma(R(1, 4)), R(7));
  EXPECT_EQ(theta2(R(1), R(7), R(1, 4)).value, R(29, 28));
  EXPECT_TRUE(theta2(R(1), R(7), R(1, 4)).positive);
  EXPECT_THROW(theta2(R(1), R(12), R(1, 4)), DomainError);  // gamma must be < 3/b
}

TEST(Exponents, EligibilityExamples) {
  EXPECT_TRUE(validate_params({R(1), R(1, 4), R(0), 3}, Theorem::local_l2).passed());
  EXPECT_TRUE(validate_params({R(1, 2), R(1), R(1, 4), 3}, Theorem::local_hs).passed());
  EXPECT_FALSE(validate_params({R(1), R(1), R(1, 4), 3}, Theorem::local_hs).passed());

  auto bad = validate_params({R(2), R(1), R(0), 3}, Theorem::local_l2);
  ASSERT_FALSE(bad.passed());
  bool found = false;
  for (const auto& v : bad.violations()) found |= v.find("alpha < (4-2b)/3") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Exponents, BoundaryIsExcluded) {
  // alpha = (4 - 2b)/3 exactly at b = 1/2
  EXPECT_FALSE(validate_params({R(1), R(1, 2), R(0), 3}, Theorem::local_l2).passed());
  EXPECT_TRUE(validate_params({R(99, 100), R(1, 2), R(0), 3}, Theorem::local_l2).passed());
}

TEST(Exponents, PairClassification) {
  auto inf2 = AdmissiblePair::make(ExtRational::infinity(), ExtRational(2));
  auto p44 = AdmissiblePair::make(ExtRational(4), ExtRational(4));
  auto p22 = AdmissiblePair::make(ExtRational(2), ExtRational(2));
  EXPECT_EQ(classify_pair(inf2).status, PairStatus::optimal);
  EXPECT_EQ(classify_pair(p44).status, PairStatus::optimal);
  EXPECT_NE(classify_pair(p22).status, PairStatus::optimal);
  EXPECT_EQ(p44.spatial_exponent(), ExtRational(12));
  EXPECT_THROW(gamma_of(ExtRational(R(3, 2)), 3), DomainError);
}

TEST(Exponents, FirstEstimatePairHasSignAnomaly) {
  for (int k = 1; k <= 10; ++k) {
    const Rational alpha(k, 10);
    const auto lp = estimate_pairs(alpha, R(7), R(1, 4));
    EXPECT_TRUE(lp.first_identity);
    EXPECT_TRUE(lp.second_identity);
    ASSERT_FALSE(lp.anomalies.empty());
    EXPECT_EQ(lp.anomalies.front().pair_index, 1);
    EXPECT_LT(lp.first.q, ExtRational(0));
  }
}

TEST(Exponents, SymbolicIdentities) {
  auto s = verify_symbolic_identities();
  EXPECT_TRUE(s.first_pair) << s.first_residual;
  EXPECT_TRUE(s.second_pair) << s.second_residual;
  EXPECT_TRUE(s.hs_pair) << s.hs_residual;
}

TEST(Exponents, ThetaSweepIsPositive) {
  auto sw = theta_sweep(R(1, 4), 20, 20);
  EXPECT_EQ(sw.samples, 400);
  EXPECT_EQ(sw.theta1_nonpositive, 0);
  EXPECT_EQ(sw.subcondition_failures, 0);
  EXPECT_EQ(sw.theta2_nonpositive, 0);
  EXPECT_TRUE(sw.identities_hold);
}

TEST(Exponents, DefaultPairSetIsOptimal) {
  auto set = default_pair_set(R(1), R(1, 4), R(7));
  ASSERT_GE(set.size(), 2u);
  for (const auto& p : set) EXPECT_EQ(classify_pair(p).status, PairStatus::optimal);
}

TEST(Exponents, ParsePairSet) {
  auto set = parse_pair_set("inf:2, 4:4");
  ASSERT_EQ(set.size(), 2u);
  EXPECT_TRUE(set[0].q.is_infinite());
  EXPECT_EQ(set[1].r, ExtRational(4));
  EXPECT_THROW(parse_pair_set("4-4"), Error);
}

TEST(Exponents, HoelderSplitConsistency) {
  auto h = hoelder_split({R(1, 2), R(1), R(1, 4), 3});
  EXPECT_EQ(1 / h.r1 + 1 / h.p1, R(1, 2));
  EXPECT_EQ(1 / h.r2 + 1 / h.p2, R(1, 2));
  EXPECT_EQ(h.p2, h.p2_lower_bound + 1);
  EXPECT_TRUE(h.r2_weight_finite);
}
