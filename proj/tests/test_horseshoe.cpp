#include <gtest/gtest.h>

#include "cdyn/horseshoe.hpp"
#include "cdyn/models.hpp"

using namespace cdyn;

namespace {
Rational q(long a, long b = 1) { return ratio(a, b); }
constexpr std::size_t kBudget = kDefaultBreakpointBudget;
}  // namespace

TEST(Extensible, DoublingNeedsTwoSteps) {
  auto v1 = is_extensible(models::doubling(), 1);
  EXPECT_FALSE(v1.extensible);
  auto v2 = is_extensible(models::doubling(), 2);
  ASSERT_TRUE(v2.extensible);
  EXPECT_EQ(v2.n, 2u);
  EXPECT_EQ(v2.r, 0);
  EXPECT_EQ(v2.image_hi - v2.image_lo, 4);
}

TEST(Extensible, RotationNever) {
  for (std::size_t h : {1u, 5u, 12u}) EXPECT_FALSE(is_extensible(models::rotation(q(1, 3)), h).extensible);
}

TEST(Extensible, TallBump) {
  auto v = is_extensible(models::bump(q(3, 2)), 1);
  ASSERT_TRUE(v.extensible);
  EXPECT_EQ(v.n, 1u);
  EXPECT_GE(v.image_hi - v.image_lo, 1);
}

TEST(Extensible, LowBumpIsNot) {
  EXPECT_FALSE(is_extensible(models::bump(q(3, 4)), 6).extensible);
}

TEST(Horseshoe, Doubling) {
  auto hs = find_horseshoe(models::doubling(), 3, kBudget);
  ASSERT_TRUE(hs);
  EXPECT_EQ(hs->n, 1u);
  EXPECT_EQ(hs->K[0].start(), 0);
  EXPECT_EQ(hs->K[0].length(), q(1, 2));
  EXPECT_EQ(hs->K[1].start(), q(1, 2));
  EXPECT_EQ(hs->K[1].length(), q(1, 2));
  EXPECT_TRUE(verify_horseshoe(models::doubling(), *hs));
}

TEST(Horseshoe, RotationHasNone) {
  EXPECT_FALSE(find_horseshoe(models::rotation(q(1, 3)), 9, kBudget));
  EXPECT_FALSE(find_horseshoe(models::rotation(q(2, 7)), 9, kBudget));
}

TEST(Horseshoe, TallBumpSplit) {
  PLLifting F = models::bump(q(3, 2));
  auto hs = find_horseshoe(F, 1, kBudget);
  ASSERT_TRUE(hs);
  EXPECT_EQ(hs->n, 1u);
  EXPECT_TRUE(verify_horseshoe(F, *hs));
  // K1, K2 split one turn of the circle
  EXPECT_EQ(hs->K[0].length() + hs->K[1].length(), 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Arc img = image_arc(F, hs->sub[i][j]);
      EXPECT_EQ(img.start(), hs->K[j].start());
      EXPECT_EQ(img.length(), hs->K[j].length());
    }
}

TEST(Horseshoe, CertificateTamperingIsCaught) {
  auto hs = find_horseshoe(models::doubling(), 1, kBudget);
  ASSERT_TRUE(hs);
  auto bad = *hs;
  bad.sub[0][1] = Arc(bad.sub[0][1].start(), bad.sub[0][1].length() / 2);
  EXPECT_FALSE(verify_horseshoe(models::doubling(), bad));
}

TEST(Horseshoe, PeriodDoublingNeedsDepthPlusOneDoublings) {
  // bottom of the ladder is a full tent on a period-8 cycle
  PLLifting F = models::period_doubling(3);
  EXPECT_FALSE(find_horseshoe(F, 7, kBudget));
  auto hs = find_horseshoe(F, 8, kBudget);
  ASSERT_TRUE(hs);
  EXPECT_EQ(hs->n, 8u);
}
