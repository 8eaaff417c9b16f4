#include <gtest/gtest.h>

#include "cdyn/models.hpp"
#include "cdyn/periodic.hpp"
#include "cdyn/rotation.hpp"

using namespace cdyn;

namespace {
Rational q(long a, long b = 1) { return ratio(a, b); }

// Homeomorphism, slopes 1/2, 1, 3/2, with the orbit 1/4 -> 3/4 -> 5/4.
PLLifting period_two_homeo() {
  return PLLifting({{q(0), q(5, 8)}, {q(1, 4), q(3, 4)}, {q(3, 4), q(5, 4)}, {q(1), q(13, 8)}});
}

// Two slopes, no periodic orbit of period <= 12.
PLLifting two_slope_homeo() { return PLLifting({{q(0), q(17, 100)}, {q(1, 2), q(151, 300)}, {q(1), q(117, 100)}}); }

// Flat on [0, 1/100]; no periods <= 20, orbit of 0 clusters on a thin set.
PLLifting plateau_map() { return PLLifting({{q(0), q(623, 1000)}, {q(1, 100), q(623, 1000)}, {q(1), q(1623, 1000)}}); }
}  // namespace

TEST(RotationBounds, RigidRotation) {
  auto r = rotation_bounds(models::rotation(q(1, 3)), 9);
  EXPECT_EQ(r.lower, q(1, 3));
  EXPECT_EQ(r.upper, q(1, 3));
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, q(1, 3));
  for (std::size_t n : {1u, 4u, 7u}) {
    auto e = rotation_bounds(models::rotation(q(2, 5)), n);
    EXPECT_EQ(e.lower, q(2, 5));
    EXPECT_EQ(e.upper, q(2, 5));
  }
}

TEST(RotationBounds, Identity) {
  for (std::size_t n : {1u, 3u, 10u}) {
    auto r = rotation_bounds(PLLifting::identity(), n);
    EXPECT_EQ(r.lower, 0);
    EXPECT_EQ(r.upper, 0);
  }
}

TEST(RotationBounds, PeriodTwoHomeo) {
  PLLifting F = period_two_homeo();
  ASSERT_TRUE(F.non_decreasing());
  EXPECT_EQ(power(F, 2)(q(1, 4)), q(5, 4));
  for (std::size_t n : {2u, 5u, 16u}) {
    auto r = rotation_bounds(F, n);
    EXPECT_LE(r.lower, q(1, 2));
    EXPECT_GE(r.upper, q(1, 2));
    EXPECT_LE(r.upper - r.lower, q(2, static_cast<long>(n)));
    EXPECT_TRUE(r.converges);
  }
}

TEST(RotationBounds, WrongDegree) {
  EXPECT_THROW(rotation_bounds(models::doubling(), 3), Error);
  EXPECT_THROW(rotation_bounds(models::bump(q(1, 2)), 3), Error);
}

TEST(RotationBounds, NonMonotoneIsFlagged) {
  auto r = rotation_bounds(models::deg1_with_fixed_point(), 6);
  EXPECT_FALSE(r.monotone);
  EXPECT_FALSE(r.converges);
  EXPECT_LE(r.lower, r.upper);
}

TEST(ExactRotation, Examples) {
  PowerCache rot(models::rotation(q(2, 5)));
  auto a = exact_rational_rotation(rot, 10);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->rho, q(2, 5));
  EXPECT_EQ(a->q, 5u);

  PowerCache id(PLLifting::identity());
  auto b = exact_rational_rotation(id, 10);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->rho, 0);
  EXPECT_EQ(b->q, 1u);

  PowerCache two(period_two_homeo());
  auto c = exact_rational_rotation(two, 10);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rho, q(1, 2));
  EXPECT_EQ(two.power(c->q)(c->witness.position()), c->witness.position() + c->p);
}

TEST(ExactRotation, NoShortOrbit) {
  PowerCache pc(two_slope_homeo());
  EXPECT_FALSE(exact_rational_rotation(pc, 12));
  EXPECT_TRUE(period_set(pc, 12).empty());
  auto r = rotation_bounds(pc, 64);
  EXPECT_LE(r.upper - r.lower, q(2, 64));
  // truncation brackets a value near 0.04
  EXPECT_GT(r.lower, q(3, 100));
  EXPECT_LT(r.upper, q(5, 100));
}

TEST(ExactRotation, ConsistentWithPeriodSet) {
  for (long k = 1; k < 7; ++k) {
    PowerCache pc(models::rotation(q(k, 7)));
    auto r = exact_rational_rotation(pc, 10);
    ASSERT_TRUE(r);
    auto ps = period_set(pc, 10);
    ASSERT_FALSE(ps.empty());
    EXPECT_EQ(ps.front() % r->q, 0u);
  }
}

TEST(ExactRotation, RejectsNonMonotone) {
  PowerCache pc(models::deg1_with_fixed_point());
  EXPECT_THROW(exact_rational_rotation(pc, 4), Error);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_no_periodic_point_map(models::rotation(q(1, 3)), 10).kind, NoPeriodicClass::HasPeriodicPoints);
  EXPECT_EQ(classify_no_periodic_point_map(models::deg1_with_fixed_point(), 3).kind,
            NoPeriodicClass::HasPeriodicPoints);
  // Fibonacci ratio: no periods <= 50, the orbit fills the circle at mesh 1/10^4
  auto t = classify_no_periodic_point_map(models::rotation(q(75025, 121393)), 50);
  EXPECT_EQ(t.kind, NoPeriodicClass::TransitiveLike);
  EXPECT_GE(t.cluster_measure, q(99, 100));
}

TEST(Classify, PlateauIsDenjoyLike) {
  auto r = classify_no_periodic_point_map(plateau_map(), 20);
  EXPECT_EQ(r.kind, NoPeriodicClass::DenjoyLike);
  EXPECT_EQ(r.cluster_measure, q(18, 1000));
}
