#include <gtest/gtest.h>

#include <random>

#include "cdyn/complexity.hpp"
#include "cdyn/horseshoe.hpp"
#include "cdyn/independence.hpp"
#include "cdyn/models.hpp"
#include "cdyn/sharkovsky.hpp"

// Seeded randomized invariants, 200 cases each.

using namespace cdyn;

namespace {
constexpr int kCases = 200;
using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational grid(Rng& rng, long den) { return ratio(pick(rng, 0, den - 1), den); }

CirclePoint point(Rng& rng) { return CirclePoint(grid(rng, 48)); }

// min_len 1 keeps isolated points out
ArcSet arcset(Rng& rng, long min_len = 0) {
  ArcSet out;
  for (long k = pick(rng, 0, 3); k > 0; --k)
    out = unite(out, ArcSet::of(Arc(grid(rng, 24), ratio(pick(rng, min_len, 12), 24))));
  return out;
}

// Few breakpoints on the 1/12 grid, heights on the 1/6 grid. `tame` uses
// quarters for both, which keeps slopes and iterates small.
PLLifting lifting(Rng& rng, long deg_lo = -2, long deg_hi = 2, bool tame = false) {
  const long xd = tame ? 4 : 12, yd = tame ? 4 : 6;
  std::vector<Rational> xs{0, 1};
  for (long k = pick(rng, 0, 3); k > 0; --k) xs.push_back(ratio(pick(rng, 1, xd - 1), xd));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> bps;
  for (const auto& x : xs) bps.push_back({x, ratio(pick(rng, -yd, 2 * yd), yd)});
  bps.back().y = bps.front().y + pick(rng, deg_lo, deg_hi);
  return PLLifting(bps);
}

SharkovskyNumber shark(Rng& rng) {
  if (pick(rng, 0, 9) == 0) return SharkovskyNumber::two_infinity();
  return SharkovskyNumber::finite(static_cast<std::uint64_t>(pick(rng, 1, 7)) << pick(rng, 0, 4));
}
}  // namespace

TEST(Properties, MetricAxioms) {
  Rng rng(101);
  for (int i = 0; i < kCases; ++i) {
    CirclePoint a = point(rng), b = point(rng), c = point(rng);
    EXPECT_EQ(circle_metric(a, a), 0);
    EXPECT_EQ(circle_metric(a, b), circle_metric(b, a));
    EXPECT_EQ(circle_metric(a, b) == 0, a == b);
    EXPECT_LE(circle_metric(a, b), ratio(1, 2));
    EXPECT_LE(circle_metric(a, c), circle_metric(a, b) + circle_metric(b, c));
  }
}

TEST(Properties, ArcSetBooleanAlgebra) {
  Rng rng(102);
  for (int i = 0; i < kCases; ++i) {
    ArcSet a = arcset(rng), b = arcset(rng), c = arcset(rng);
    EXPECT_EQ(intersect(a, unite(b, c)), unite(intersect(a, b), intersect(a, c)));
    EXPECT_EQ(unite(a, b), unite(b, a));
    EXPECT_EQ(unite(a, b).measure() + intersect(a, b).measure(), a.measure() + b.measure());
    EXPECT_TRUE(intersect(a, b).subset_of(a));
    EXPECT_TRUE(unite(a, a.complement()).is_full());
    CirclePoint p = point(rng);
    EXPECT_EQ(unite(a, b).contains(p), a.contains(p) || b.contains(p));
    EXPECT_EQ(intersect(a, b).contains(p), a.contains(p) && b.contains(p));
  }
}

// complement() is the closure of the complement, so the complement laws hold
// on sets without isolated points
TEST(Properties, ComplementOnRegularSets) {
  Rng rng(112);
  for (int i = 0; i < kCases; ++i) {
    ArcSet a = arcset(rng, 1), b = arcset(rng, 1);
    EXPECT_EQ(a.complement().complement(), a);
    // sets touching at a point leave that point in the right-hand side
    ArcSet lhs = unite(a, b).complement(), rhs = intersect(a.complement(), b.complement());
    EXPECT_TRUE(lhs.subset_of(rhs));
    EXPECT_EQ(lhs.measure(), rhs.measure());
    EXPECT_EQ(a.complement().measure(), 1 - a.measure());
  }
}

TEST(Properties, ComposeMatchesEvaluation) {
  Rng rng(103);
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng), G = lifting(rng);
    PLLifting H = compose(F, G);
    for (int k = 0; k < 5; ++k) {
      Rational x = grid(rng, 60) + pick(rng, -2, 2);
      EXPECT_EQ(H(x), F(G(x)));
    }
    for (const auto& b : G.breakpoints()) EXPECT_EQ(H(b.x), F(b.y));
  }
}

TEST(Properties, DegreeIsMultiplicative) {
  Rng rng(104);
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng), G = lifting(rng);
    EXPECT_EQ(compose(F, G).degree(), F.degree() * G.degree());
    EXPECT_EQ(F(Rational(ratio(1, 3) + 1)), F(ratio(1, 3)) + Rational(F.degree()));
  }
}

TEST(Properties, PreimageAdjunction) {
  Rng rng(105);
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng);
    ArcSet A = arcset(rng);
    ArcSet P = preimage_arcset(F, A);
    for (int k = 0; k < 8; ++k) {
      Rational x = grid(rng, 240);
      EXPECT_EQ(P.contains(CirclePoint(x)), A.contains(CirclePoint(F(x))));
    }
    EXPECT_TRUE(image_arcset(F, P).subset_of(A));
  }
}

TEST(Properties, IndependenceIsHereditary) {
  Rng rng(106);
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng, 0, 3);
    Rational s = grid(rng, 12);
    ArcPair pair(Arc(s, ratio(pick(rng, 1, 4), 12)), Arc(s + ratio(1, 2), ratio(pick(rng, 1, 4), 12)));
    PreimageTower tw(F, pair);
    std::vector<std::size_t> I;
    for (std::size_t t = 0; t <= 4; ++t)
      if (pick(rng, 0, 1)) I.push_back(t);
    if (I.empty() || !is_independence_set(tw, I).independent) continue;
    for (std::size_t drop = 0; drop < I.size(); ++drop) {
      auto J = I;
      J.erase(J.begin() + static_cast<std::ptrdiff_t>(drop));
      if (!J.empty()) {
        EXPECT_TRUE(is_independence_set(tw, J).independent);
      }
    }
  }
}

TEST(Properties, JoinCountIsMonotone) {
  Rng rng(107);
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng);
    JoinEngine e(F, pick(rng, 0, 1) ? Cover::halves() : Cover::quarters());
    std::vector<std::size_t> A{static_cast<std::size_t>(pick(rng, 0, 2))};
    std::vector<std::size_t> B = A;
    B.push_back(static_cast<std::size_t>(pick(rng, 0, 3)));
    EXPECT_LE(e.join_count(A), e.join_count(B));
  }
}

TEST(Properties, SharkovskyIsATotalOrder) {
  Rng rng(108);
  for (int i = 0; i < kCases; ++i) {
    auto a = shark(rng), b = shark(rng), c = shark(rng);
    EXPECT_TRUE(sharkovsky_geq(a, a));
    EXPECT_TRUE(sharkovsky_geq(a, b) || sharkovsky_geq(b, a));
    if (sharkovsky_geq(a, b) && sharkovsky_geq(b, a)) {
      EXPECT_EQ(a.str(), b.str());
    }
    if (sharkovsky_geq(a, b) && sharkovsky_geq(b, c)) {
      EXPECT_TRUE(sharkovsky_geq(a, c));
    }
    EXPECT_EQ(tail_contains(a, b), sharkovsky_geq(a, b));
  }
}

// Extensibility is the obstruction to zero entropy: every extensible map must
// come with a certified horseshoe. Positive entropy alone does not force
// extensibility (a tall tent inside [0, 3/4] stays short), so only this
// direction is checked.
TEST(Properties, ZeroEntropyContract) {
  Rng rng(109);
  int extensible = 0;
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng, -1, 1);
    auto v = is_extensible(F, 2);
    if (!v.extensible) continue;
    ++extensible;
    auto hs = find_horseshoe(F, 2 * v.n, kDefaultBreakpointBudget);
    ASSERT_TRUE(hs) << i;
    EXPECT_TRUE(verify_horseshoe(F, *hs));
  }
  EXPECT_GT(extensible, 0);
}

TEST(Properties, PowerConsistency) {
  Rng rng(110);
  for (int i = 0; i < kCases; ++i) {
    PLLifting F = lifting(rng, -1, 1, true);
    std::size_t k = static_cast<std::size_t>(pick(rng, 1, 2));
    std::size_t t = static_cast<std::size_t>(pick(rng, 0, 2));
    Cover U = pick(rng, 0, 1) ? Cover::halves() : Cover::quarters();
    EXPECT_EQ(join_count(power(F, k), U, {t}), join_count(F, U, {k * t}));
    std::size_t u = 1 + t % 2;  // f^{4} at most: steep maps blow up beyond that
    EXPECT_EQ(join_count(power(F, k), U, {0, u}), join_count(F, U, {0, k * u}));
  }
}
