#include <gtest/gtest.h>

#include <algorithm>

#include "cdyn/independence.hpp"
#include "cdyn/models.hpp"

using namespace cdyn;

namespace {
Rational q(long a, long b = 1) { return ratio(a, b); }
using Idx = std::vector<std::size_t>;

ArcPair halves() { return ArcPair(Arc(0, q(1, 2)), Arc(q(1, 2), q(1, 2))); }

// Oracle for doubling with dyadic closed arcs: every f^{-i}U is a finite union
// of closed dyadic intervals of level <= i + level(U), so a pattern cell on
// times <= T is non-empty iff it holds a grid point k / 2^N with N large.
// Symbols are read off the grid by exact integer arithmetic.
struct DyadicOracle {
  unsigned N;
  std::vector<std::vector<int>> sym;  // sym[k][i] in {0, 1, 2}; 3 = in both

  DyadicOracle(unsigned N_, std::size_t T, const Rational& c1, const Rational& c2, const Rational& r) : N(N_) {
    const long M = 1L << N;
    sym.assign(static_cast<std::size_t>(M), std::vector<int>(T + 1, 0));
    auto in = [&](long k, const Rational& c) {
      Rational d = Rational(ratio(k, M) - c);
      d -= Rational(floor_q(d));  // into [0, 1)
      return d <= r || 1 - d <= r;
    };
    for (long k = 0; k < M; ++k) {
      long x = k;
      for (std::size_t i = 0; i <= T; ++i) {
        sym[static_cast<std::size_t>(k)][i] = (in(x, c1) ? 1 : 0) | (in(x, c2) ? 2 : 0);
        x = (2 * x) % M;
      }
    }
  }

  bool independent(const Idx& I) const {
    std::vector<char> seen(std::size_t{1} << I.size(), 0);
    for (const auto& row : sym) {
      // a point in both arcs realizes both symbols
      std::vector<std::size_t> pats{0};
      for (auto i : I) {
        std::vector<std::size_t> nx;
        for (auto p : pats)
          for (int s = 1; s <= 2; ++s)
            if (row[i] & s) nx.push_back(p << 1 | static_cast<std::size_t>(s - 1));
        pats = std::move(nx);
      }
      for (auto p : pats) seen[p] = 1;
    }
    return std::find(seen.begin(), seen.end(), 0) == seen.end();
  }

  std::size_t max_size(std::size_t T) const {
    std::size_t best = 0;
    Idx cur;
    auto dfs = [&](auto&& self, std::size_t from) -> void {
      best = std::max(best, cur.size());
      for (std::size_t i = from; i <= T; ++i) {
        cur.push_back(i);
        if (independent(cur)) self(self, i + 1);
        cur.pop_back();
      }
    };
    dfs(dfs, 0);
    return best;
  }

  static Integer floor_q(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
  }
};
}  // namespace

TEST(ArcPairTest, RejectsPoints) {
  EXPECT_THROW(ArcPair(Arc(0, 0), Arc(q(1, 2), q(1, 4))), Error);
}

TEST(PatternNonempty, DoublingDyadicCell) {
  PreimageTower tw(models::doubling(), halves());
  auto w = pattern_nonempty(tw, {0, 1, 2}, {1, 2, 1});
  ASSERT_TRUE(w);
  EXPECT_GE(w->position(), q(1, 4));
  EXPECT_LE(w->position(), q(3, 8));
  EXPECT_TRUE(check_witness(models::doubling(), halves(), {0, 1, 2}, {1, 2, 1}, *w));
  // closed arcs: the cell also carries the isolated points 0 and 1/2
  ArcSet want = unite(unite(ArcSet::point(CirclePoint(0)), ArcSet::of(Arc(q(1, 4), q(1, 8)))),
                      ArcSet::point(CirclePoint(q(1, 2))));
  EXPECT_EQ(pattern_cell(tw, {0, 1, 2}, {1, 2, 1}), want);
}

TEST(PatternNonempty, IdentityDisjoint) {
  PreimageTower tw(PLLifting::identity(), ArcPair(Arc(0, q(1, 4)), Arc(q(1, 2), q(1, 4))));
  EXPECT_FALSE(pattern_nonempty(tw, {0, 1}, {1, 2}));
  EXPECT_TRUE(pattern_nonempty(tw, {5}, {2}));
}

TEST(PatternNonempty, InputChecks) {
  PreimageTower tw(models::doubling(), halves());
  EXPECT_THROW(pattern_nonempty(tw, {2, 1}, {1, 1}), Error);
  EXPECT_THROW(pattern_nonempty(tw, {0, 1}, {1}), Error);
  EXPECT_THROW(pattern_nonempty(tw, {0}, {3}), Error);
  Idx big(21);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = i;
  EXPECT_THROW(pattern_nonempty(tw, big, Pattern(21, 1)), BudgetError);
}

TEST(IsIndependence, DoublingFullShift) {
  Idx I{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto r = is_independence_set(models::doubling(), halves(), I);
  EXPECT_TRUE(r.independent);
  EXPECT_EQ(r.witness.patterns_verified, 1024u);
  EXPECT_EQ(r.witness.samples.size(), 1024u);
  EXPECT_FALSE(r.empty_pattern);
  for (const auto& [S, x] : r.witness.samples) EXPECT_TRUE(check_witness(models::doubling(), halves(), I, S, x));
}

TEST(IsIndependence, IdentityDisjoint) {
  auto r = is_independence_set(PLLifting::identity(), ArcPair(Arc(0, q(1, 4)), Arc(q(1, 2), q(1, 4))), {0, 1});
  EXPECT_FALSE(r.independent);
  ASSERT_TRUE(r.empty_pattern);
  EXPECT_EQ(*r.empty_pattern, (Pattern{1, 2}));
}

TEST(IsIndependence, QuarterRotation) {
  // (1,1) needs x in U1 and x + 1/2 in U1
  ArcPair p(Arc(0, q(1, 8)), Arc(q(1, 2), q(1, 8)));
  auto r = is_independence_set(models::rotation(q(1, 4)), p, {0, 2});
  EXPECT_FALSE(r.independent);
  ASSERT_TRUE(r.empty_pattern);
  EXPECT_EQ(*r.empty_pattern, (Pattern{1, 1}));
}

TEST(IsIndependence, MatchesDyadicOracle) {
  const Rational r = q(1, 16);
  ArcPair p(Arc(-r, 2 * r), Arc(q(1, 2) - r, 2 * r));
  DyadicOracle oracle(14, 8, 0, q(1, 2), r);
  PreimageTower tw(models::doubling(), p);
  const std::vector<Idx> sets{{0}, {0, 1}, {0, 3}, {0, 4}, {1, 5}, {0, 4, 8}, {0, 3, 6}, {2, 3, 8}, {0, 5, 8}};
  for (const auto& I : sets) EXPECT_EQ(is_independence_set(tw, I).independent, oracle.independent(I));
}

TEST(MaxIndependence, DoublingTakesEverything) {
  auto m = max_independence(models::doubling(), halves(), 10, 20);
  EXPECT_EQ(m.best.size(), 11u);
  EXPECT_EQ(m.best.front(), 0u);
  EXPECT_EQ(m.best.back(), 10u);
  EXPECT_FALSE(m.cap_hit);
  EXPECT_EQ(m.witness.patterns_verified, 2048u);
}

TEST(MaxIndependence, CapIsReported) {
  auto m = max_independence(models::doubling(), halves(), 10, 5);
  EXPECT_EQ(m.best.size(), 5u);
  EXPECT_TRUE(m.cap_hit);
  EXPECT_THROW(max_independence(models::doubling(), halves(), 10, 21), BudgetError);
}

TEST(MaxIndependence, IdentityIsOne) {
  auto m = max_independence(PLLifting::identity(), ArcPair(Arc(0, q(1, 4)), Arc(q(1, 2), q(1, 4))), 8, 20);
  EXPECT_EQ(m.best, (Idx{0}));
}

TEST(MaxIndependence, RotationShortArcs) {
  ArcPair p(Arc(q(1, 10), q(1, 20)), Arc(q(1, 2), q(1, 20)));
  auto m = max_independence(models::rotation(q(2, 7)), p, 12, 20);
  EXPECT_LE(m.best.size(), 2u);
  EXPECT_EQ(m.best.size(), 1u);
}

TEST(MaxIndependence, DoublingSmallArcsMatchesOracle) {
  const Rational r = q(1, 32);
  ArcPair p(Arc(-r, 2 * r), Arc(q(1, 2) - r, 2 * r));
  DyadicOracle oracle(16, 9, 0, q(1, 2), r);
  auto m = max_independence(models::doubling(), p, 9, 20);
  EXPECT_EQ(m.best.size(), oracle.max_size(9));
  EXPECT_EQ(m.best.size(), 3u);
}

TEST(InPairScan, Doubling) {
  auto r = in_pair_scan(models::doubling(), CirclePoint(0), CirclePoint(q(1, 2)), {q(1, 8), q(1, 32)}, 4, 12);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].size, 7u);
  EXPECT_EQ(r.rows[1].size, 4u);
  EXPECT_EQ(r.rows[1].index_set, (Idx{0, 4, 8, 12}));
  EXPECT_EQ(r.level, 4u);
  EXPECT_TRUE(r.consistent);
  // 1/32 arcs pin five binary digits, so gaps of 4 are the densest option up to 12
  auto six = in_pair_scan(models::doubling(), CirclePoint(0), CirclePoint(q(1, 2)), {q(1, 8), q(1, 32)}, 6, 12);
  EXPECT_FALSE(six.consistent);
}

TEST(InPairScan, RotationFails) {
  auto r = in_pair_scan(models::rotation(q(2, 7)), CirclePoint(q(1, 10)), CirclePoint(q(3, 5)),
                        {q(1, 32), q(1, 128)}, 2, 12);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.level, 1u);
}

TEST(InPairScan, RejectsDiagonalAndBadRadii) {
  EXPECT_THROW(in_pair_scan(models::doubling(), CirclePoint(q(1, 3)), CirclePoint(q(4, 3)), default_in_radii(), 2, 4),
               Error);
  EXPECT_THROW(in_pair_scan(models::doubling(), CirclePoint(0), CirclePoint(q(1, 2)), {q(1, 2)}, 2, 4), Error);
  EXPECT_THROW(in_pair_scan(models::doubling(), CirclePoint(0), CirclePoint(q(1, 2)), {}, 2, 4), Error);
}

TEST(PowerTransform, DoublingForward) {
  auto r = power_transform_forward(models::doubling(), 2, halves(), {0, 1, 2, 3});
  EXPECT_EQ(r.forward_set, (Idx{0, 2, 4, 6}));
  EXPECT_TRUE(r.forward_holds);
}

TEST(PowerTransform, IdentityTrivial) {
  ArcPair p(Arc(0, q(1, 4)), Arc(q(1, 2), q(1, 4)));
  auto r = power_transform_check(PLLifting::identity(), 3, p, {0});
  EXPECT_EQ(r.forward_set, (Idx{0}));
  EXPECT_TRUE(r.forward_holds);
}

TEST(PowerTransform, DoublingResidueClass) {
  auto r = power_transform_check(models::doubling(), 2, halves(), {0, 1, 2, 3, 4, 5, 6, 7});
  EXPECT_EQ(r.residue, 0u);
  EXPECT_EQ(r.residue_class, (Idx{0, 2, 4, 6}));
  EXPECT_EQ(r.backward_set, (Idx{0, 1, 2, 3}));
  EXPECT_TRUE(r.backward_holds);
  EXPECT_TRUE(r.factorization_holds);
  EXPECT_FALSE(r.counterexample);
}

TEST(PowerTransform, OddResidue) {
  // only odd indices: residue 1 goes through the f^{-1} factor
  auto r = power_transform_check(models::doubling(), 2, halves(), {1, 3, 5, 7});
  EXPECT_EQ(r.residue, 1u);
  EXPECT_EQ(r.backward_set, (Idx{0, 1}));
  EXPECT_TRUE(r.backward_holds);
  EXPECT_TRUE(r.factorization_holds);
}

TEST(PowerTransform, RejectsNonIndependent) {
  ArcPair p(Arc(0, q(1, 4)), Arc(q(1, 2), q(1, 4)));
  EXPECT_THROW(power_transform_forward(PLLifting::identity(), 2, p, {0, 1}), Error);
  EXPECT_THROW(power_transform_forward(models::doubling(), 0, halves(), {0}), Error);
}
