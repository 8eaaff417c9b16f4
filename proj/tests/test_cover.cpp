#include <gtest/gtest.h>

#include <random>

#include "cdyn/cover.hpp"

using namespace cdyn;

namespace {
Rational q(long a, long b = 1) { return ratio(a, b); }
ArcSet arc(const Rational& s, const Rational& l) { return ArcSet::of(Arc(s, l)); }

// Oracle: smallest subset whose union is the circle, by enumeration.
std::size_t brute_force_cover(const std::vector<ArcSet>& el) {
  const std::size_t n = el.size();
  std::size_t best = n + 1;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k >= best) continue;
    ArcSet u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) u = unite(u, el[i]);
    if (u.is_full()) best = k;
  }
  return best;
}

// Random family of arc unions on the 1/24 grid, topped up until it covers.
std::vector<ArcSet> random_family(std::mt19937_64& rng, std::size_t size, std::size_t max_parts) {
  std::uniform_int_distribution<long> start(0, 23), len(1, 8);
  std::uniform_int_distribution<std::size_t> parts(1, max_parts);
  std::vector<ArcSet> el;
  ArcSet u;
  while (el.size() < size || !u.is_full()) {
    ArcSet e;
    for (std::size_t p = parts(rng); p > 0; --p) e = unite(e, arc(q(start(rng), 24), q(len(rng), 24)));
    if (e.is_full()) continue;
    u = unite(u, e);
    el.push_back(e);
  }
  return el;
}
}  // namespace

TEST(Cover, Validation) {
  EXPECT_THROW(Cover({arc(0, q(1, 2))}), Error);
  EXPECT_THROW(Cover({arc(0, q(1, 2)), ArcSet::point(CirclePoint(q(1, 2))), arc(q(1, 2), q(1, 3))}), Error);
  EXPECT_EQ(Cover::halves().size(), 2u);
  EXPECT_EQ(Cover::quarters().size(), 4u);
}

TEST(MinSubcover, Examples) {
  // two overlapping half-plus arcs
  EXPECT_EQ(min_subcover_count(Cover({arc(0, q(3, 5)), arc(q(1, 2), q(3, 5))})), 2u);
  EXPECT_EQ(min_subcover_count(Cover({ArcSet::full(), arc(0, q(1, 2))})), 1u);
  EXPECT_EQ(min_subcover_count(Cover::halves()), 2u);
  EXPECT_EQ(min_subcover_count(Cover::quarters()), 4u);
}

// Starts k/6 are 1/6 apart and the arcs have length 1/4, so skipping any arc
// leaves a gap of 1/3 - 1/4 = 1/12: all six are needed.
TEST(MinSubcover, SixQuarterArcsNeedAllSix) {
  std::vector<ArcSet> el;
  for (long k = 0; k < 6; ++k) el.push_back(arc(q(k, 6), q(1, 4)));
  EXPECT_EQ(brute_force_cover(el), 6u);
  EXPECT_EQ(min_subcover_count(el), 6u);
}

TEST(MinSubcover, MeasureZeroElementsIgnored) {
  std::vector<ArcSet> el{arc(0, q(1, 2)), arc(q(1, 2), q(1, 2)), ArcSet::point(CirclePoint(q(1, 4)))};
  EXPECT_EQ(min_subcover_count(el), 2u);
}

TEST(MinSubcover, SingleArcsMatchBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto el = random_family(rng, 6, 1);
    if (el.size() > 12) continue;
    EXPECT_EQ(min_subcover_count(el), brute_force_cover(el)) << "trial " << trial;
  }
}

TEST(MinSubcover, ArcUnionsMatchBruteForce) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto el = random_family(rng, 8, 3);
    if (el.size() > 16) continue;
    EXPECT_EQ(min_subcover_count(el), brute_force_cover(el)) << "trial " << trial;
  }
}

TEST(MinSubcover, BoundsBracketExactValue) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto el = random_family(rng, 10, 3);
    if (el.size() > 16) continue;
    auto b = subcover_bounds(el);
    std::size_t exact = brute_force_cover(el);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, exact);
  }
}

TEST(MinSubcover, KernelCapRaisesBudgetError) {
  // 48 two-piece elements; nothing dominates and no segment is forced
  std::vector<ArcSet> el;
  for (long k = 0; k < 48; ++k)
    el.push_back(unite(arc(q(k, 48), q(2, 48)), arc(q(k + 24, 48), q(2, 48))));
  SubcoverOptions tight;
  tight.kernel_cap = 4;
  EXPECT_THROW(min_subcover_count(el, tight), BudgetError);
  auto b = subcover_bounds(el, tight);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_EQ(min_subcover_count(el), 12u);
}
