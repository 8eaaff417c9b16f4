#include <gtest/gtest.h>

#include "cdyn/models.hpp"
#include "cdyn/periodic.hpp"
#include "cdyn/sharkovsky.hpp"

using namespace cdyn;

namespace {
Rational q(long a, long b = 1) { return ratio(a, b); }
SharkovskyNumber sh(std::uint64_t m) { return SharkovskyNumber::finite(m); }

// Fixed point 11/42, attracting 2-cycle {1/12, 5/12}, nothing else.
PLLifting two_cycle_map() {
  models::IntervalMap flat{{q(0), q(1, 2)}, {q(1), q(1, 2)}};
  return models::embed_interval_map(models::period_double(flat));
}

// Oracle: solutions of 2^n x = x mod 1 are k / (2^n - 1).
ArcSet doubling_periodic_oracle(unsigned n) {
  long d = (1L << n) - 1;
  ArcSet out;
  for (long k = 0; k < d; ++k) out = unite(out, ArcSet::point(CirclePoint(q(k, d))));
  return out;
}
}  // namespace

TEST(PeriodicPoints, Examples) {
  EXPECT_TRUE(periodic_points(models::rotation(q(1, 3)), 3).is_full());
  EXPECT_TRUE(periodic_points(models::rotation(q(1, 3)), 1).is_empty());
  auto p3 = periodic_points(models::doubling(), 3);
  EXPECT_EQ(p3.components().size(), 7u);
  EXPECT_EQ(p3, doubling_periodic_oracle(3));
}

TEST(PeriodicPoints, DoublingMatchesOracle) {
  PowerCache pc(models::doubling());
  for (unsigned n = 1; n <= 8; ++n) EXPECT_EQ(periodic_points(pc, n), doubling_periodic_oracle(n)) << n;
}

TEST(PeriodicPoints, SlopeOneSegments) {
  // bump(1/2) is the identity on [0, 1/2]
  EXPECT_EQ(periodic_points(models::bump(q(1, 2)), 1), ArcSet::of(Arc(0, q(1, 2))));
}

TEST(PeriodSet, Examples) {
  EXPECT_EQ(period_set(models::rotation(q(1, 3)), 10), (std::vector<std::size_t>{3}));
  EXPECT_EQ(period_set(PLLifting::identity(), 5), (std::vector<std::size_t>{1}));
  EXPECT_EQ(period_set(models::doubling(), 4), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(period_set(two_cycle_map(), 12), (std::vector<std::size_t>{1, 2}));
}

TEST(Sharkovsky, Examples) {
  EXPECT_TRUE(sharkovsky_geq(sh(3), SharkovskyNumber::two_infinity()));
  EXPECT_FALSE(sharkovsky_geq(SharkovskyNumber::two_infinity(), sh(3)));
  EXPECT_TRUE(sharkovsky_geq(sh(2), sh(1)));
  EXPECT_TRUE(sharkovsky_geq(sh(3), sh(5)));
  EXPECT_TRUE(sharkovsky_geq(sh(9), sh(6)));  // odd before 2*odd
  EXPECT_TRUE(sharkovsky_geq(SharkovskyNumber::two_infinity(), sh(1024)));
}

// 6 = 2*3 precedes 12 = 4*3; the order is odd, 2*odd, 4*odd, ...
TEST(Sharkovsky, SixPrecedesTwelve) {
  EXPECT_TRUE(sharkovsky_geq(sh(6), sh(12)));
  EXPECT_FALSE(sharkovsky_geq(sh(12), sh(6)));
  EXPECT_TRUE(tail_contains(sh(6), sh(12)));
  EXPECT_FALSE(tail_contains(sh(12), sh(6)));
}

TEST(PeriodStructure, Examples) {
  PowerCache rot(models::rotation(q(1, 3)));
  auto a = check_period_structure(rot, 12);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->k, 3u);
  EXPECT_EQ(a->n, sh(1));

  PowerCache id(PLLifting::identity());
  auto b = check_period_structure(id, 8);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->k, 1u);
  EXPECT_EQ(b->n, sh(1));

  PowerCache two(two_cycle_map());
  auto c = check_period_structure(two, 12);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->k, 1u);
  EXPECT_EQ(c->n, sh(2));
  EXPECT_FALSE(c->two_infinity_evidence);
}

TEST(PeriodStructure, LadderGivesTwoInfinityEvidence) {
  PowerCache pd(models::period_doubling(3));
  auto s = check_period_structure(pd, 6);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->periods, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_TRUE(s->two_infinity_evidence);
}

TEST(PeriodStructure, DoublingDoesNotFit) {
  PowerCache d(models::doubling());
  auto s = check_period_structure(d, 6);
  EXPECT_FALSE(s);
}

TEST(InvariantInterval, Degree0) {
  auto r = invariant_interval(models::bump(q(3, 4)));
  EXPECT_EQ(r.kase, DegreeCase::Deg0);
  EXPECT_EQ(r.a, 0);
  EXPECT_EQ(r.b, 1);
  for (const auto& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
  auto [lo, hi] = image_interval(r.lifting, r.a, r.b);
  EXPECT_EQ(hi - lo, q(3, 4));
}

TEST(InvariantInterval, Degree1) {
  auto r = invariant_interval(models::deg1_with_fixed_point());
  EXPECT_EQ(r.kase, DegreeCase::Deg1);
  EXPECT_EQ(r.a, 0);
  EXPECT_EQ(r.b, q(5, 4));
  for (const auto& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
}

TEST(InvariantInterval, DegreeMinus1) {
  auto r = invariant_interval(models::reflection());
  EXPECT_EQ(r.kase, DegreeCase::DegMinus1);
  EXPECT_EQ(r.lifting(0), 1);  // F(x) = -x + 1
  EXPECT_EQ(r.a, 0);
  EXPECT_EQ(r.b, 1);
  ASSERT_EQ(r.checks.size(), 5u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
}

TEST(InvariantInterval, Refusals) {
  EXPECT_THROW(invariant_interval(models::doubling()), Error);
  try {
    invariant_interval(models::rotation(q(1, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoFixedPoint);
  }
  try {
    invariant_interval(models::bump(q(3, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ExtensibleMap);
  }
}

TEST(Correspondence, Examples) {
  auto id = lifted_periodic_correspondence(PLLifting::identity(), invariant_interval(PLLifting::identity()), 3);
  EXPECT_TRUE(id.equal);
  EXPECT_TRUE(id.circle.is_full());

  PLLifting F = two_cycle_map();
  auto two = lifted_periodic_correspondence(F, invariant_interval(F), 4);
  EXPECT_TRUE(two.equal);
  ArcSet want = unite(unite(ArcSet::point(CirclePoint(q(1, 12))), ArcSet::point(CirclePoint(q(11, 42)))),
                      ArcSet::point(CirclePoint(q(5, 12))));
  EXPECT_EQ(two.circle, want);

  PLLifting D = models::deg1_with_fixed_point();
  auto d1 = lifted_periodic_correspondence(D, invariant_interval(D), 4);
  EXPECT_TRUE(d1.equal);
  EXPECT_EQ(d1.circle, unite(ArcSet::point(CirclePoint(0)), ArcSet::point(CirclePoint(q(2, 7)))));
}
