#pragma once

// Periodic points and period sets, the kS(n) period-structure fit, the
// invariant-interval construction for zero-entropy maps with a fixed point,
// and the check that projected periodic points of the interval restriction
// are exactly the periodic points on the circle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/horseshoe.hpp"
#include "cdyn/lifting.hpp"
#include "cdyn/sharkovsky.hpp"

namespace cdyn {

/// {x in S : G(x) - x in Z}. A piece of slope 1 with integral offset
/// contributes a whole segment.
inline ArcSet fixed_point_set(const PLLifting& G) {
  std::vector<ArcSet::Interval> raw;
  for (const auto& p : G.pieces(0, 1)) {
    Rational h0 = p.y0 - p.x0, h1 = p.y1 - p.x1;
    if (h0 == h1) {
      if (is_integer(h0)) raw.push_back({p.x0, p.x1});
      continue;
    }
    const Rational& lo = h0 < h1 ? h0 : h1;
    const Rational& hi = h0 < h1 ? h1 : h0;
    for (Integer k = ceil_int(lo); Rational(k) <= hi; ++k) {
      Rational x = p.x0 + (Rational(k) - h0) * (p.x1 - p.x0) / (h1 - h0);
      raw.push_back({x, x});
    }
  }
  for (auto& iv : raw) {
    if (iv.lo == 1 && iv.hi == 1) iv = {Rational(0), Rational(0)};
  }
  return ArcSet::from_intervals(std::move(raw));
}

/// Solution set of f^n(x) = x.
inline ArcSet periodic_points(PowerCache& powers, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::DegenerateInput, "period must be >= 1");
  return fixed_point_set(powers.power(n));
}

inline ArcSet periodic_points(const PLLifting& F, std::size_t n,
                              std::size_t budget = kDefaultBreakpointBudget) {
  PowerCache powers(F, budget);
  return periodic_points(powers, n);
}

/// Minimal periods <= N. Period n is present iff the solution set of f^n = id
/// is not covered by the solution sets of its proper divisors.
inline std::vector<std::size_t> period_set(PowerCache& powers, std::size_t N) {
  if (N < 1) throw Error(ErrorKind::DegenerateInput, "bound must be >= 1");
  std::vector<ArcSet> sol(N + 1);
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= N; ++n) {
    sol[n] = periodic_points(powers, n);
    ArcSet lower;
    for (std::size_t d = 1; d < n; ++d)
      if (n % d == 0) lower = unite(lower, sol[d]);
    if (!sol[n].is_empty() && !sol[n].subset_of(lower)) out.push_back(n);
  }
  return out;
}

inline std::vector<std::size_t> period_set(const PLLifting& F, std::size_t N,
                                           std::size_t budget = kDefaultBreakpointBudget) {
  PowerCache powers(F, budget);
  return period_set(powers, N);
}

/// Observed periods <= N written as k * S(n) with n a power of two, or 2^inf
/// when every k * 2^j <= N is present (finite evidence, flagged).
struct PeriodStructure {
  std::uint64_t k = 0;
  SharkovskyNumber n = SharkovskyNumber::finite(1);
  bool two_infinity_evidence = false;
  bool degree_warning = false;  // |deg| > 1: the kS(n) form is not expected there
  std::vector<std::size_t> periods;
};

inline std::optional<PeriodStructure> check_period_structure(PowerCache& powers, std::size_t N) {
  PeriodStructure ps;
  ps.degree_warning = abs(Rational(powers.base().degree())) > 1;
  ps.periods = period_set(powers, N);
  if (ps.periods.empty()) return std::nullopt;
  std::uint64_t k = ps.periods.front();
  std::vector<std::uint64_t> quotients;
  for (auto p : ps.periods) {
    if (p % k != 0) return std::nullopt;
    quotients.push_back(p / k);
  }
  std::vector<std::uint64_t> powers_of_two;
  for (std::uint64_t m = 1; m * k <= N; m *= 2) powers_of_two.push_back(m);
  // quotients must be an initial run 1, 2, 4, ..., 2^j of powers of two
  if (quotients.size() > powers_of_two.size()) return std::nullopt;
  for (std::size_t i = 0; i < quotients.size(); ++i)
    if (quotients[i] != powers_of_two[i]) return std::nullopt;
  ps.k = k;
  if (quotients.size() == powers_of_two.size() && powers_of_two.size() > 1) {
    ps.n = SharkovskyNumber::two_infinity();
    ps.two_infinity_evidence = true;
  } else {
    ps.n = SharkovskyNumber::finite(quotients.back());
  }
  return ps;
}

enum class DegreeCase { Deg0, Deg1, DegMinus1 };

inline const char* to_string(DegreeCase c) {
  switch (c) {
    case DegreeCase::Deg0: return "deg0";
    case DegreeCase::Deg1: return "deg1";
    case DegreeCase::DegMinus1: return "deg-1";
  }
  return "?";
}

struct InclusionCheck {
  std::string name;
  bool holds;
};

/// A lifting F and an interval I = [a, b] with F(I) inside I and 1 <= |I| < 2.
struct InvariantInterval {
  PLLifting lifting;
  Rational a, b;
  DegreeCase kase;
  std::size_t iterations = 0;  // growth steps until the hull of F^n(J) stabilized
  std::vector<InclusionCheck> checks;
};

namespace detail {

inline bool interval_subset(const std::pair<Rational, Rational>& in, const Rational& lo,
                            const Rational& hi) {
  return lo <= in.first && in.second <= hi;
}

inline std::vector<InclusionCheck> invariant_interval_checks(const PLLifting& F, const Rational& a,
                                                             const Rational& b, DegreeCase kase) {
  std::vector<InclusionCheck> out;
  auto img = image_interval(F, a, b);
  out.push_back({"1 <= b-a < 2", b - a >= 1 && b - a < 2});
  out.push_back({"F([a,b]) in [a,b]", interval_subset(img, a, b)});
  switch (kase) {
    case DegreeCase::Deg0:
      out.push_back({"b-a = 1", b - a == 1});
      out.push_back({"|F([a,b])| < 1", img.second - img.first < 1});
      break;
    case DegreeCase::Deg1:
      out.push_back({"F([a,b]) = [a,b]", img.first == a && img.second == b});
      out.push_back({"F([a,b-1]) in [a,b-1]", interval_subset(image_interval(F, a, b - 1), a, b - 1)});
      out.push_back({"F([a+1,b]) in [a+1,b]", interval_subset(image_interval(F, a + 1, b), a + 1, b)});
      break;
    case DegreeCase::DegMinus1:
      out.push_back({"F([a,b]) = [a,b]", img.first == a && img.second == b});
      out.push_back({"F([a,b-1]) in [a+1,b]", interval_subset(image_interval(F, a, b - 1), a + 1, b)});
      out.push_back({"F([a+1,b]) in [a,b-1]", interval_subset(image_interval(F, a + 1, b), a, b - 1)});
      break;
  }
  return out;
}

}  // namespace detail

/// Builds the invariant interval for a non-extensible map with |deg| <= 1 and a
/// fixed point (degree 0 needs no fixed point). For degree +-1 the interval is
/// the hull K of the growing images F^n([x, x+1]) of a fixed point's unit
/// interval; K is detected exactly when one more image adds nothing.
inline InvariantInterval invariant_interval(const PLLifting& F0, std::size_t ext_horizon = 8,
                                            std::size_t max_iterations = 10'000,
                                            std::size_t budget = kDefaultBreakpointBudget) {
  const Integer& deg = F0.degree();
  if (deg > 1 || deg < -1) throw Error(ErrorKind::WrongDegree, "invariant interval needs |deg| <= 1");
  auto ext = is_extensible(F0, ext_horizon, budget);
  if (ext.extensible)
    throw Error(ErrorKind::ExtensibleMap, "extensible at n = " + std::to_string(ext.n) +
                                              ", r = " + to_string(ext.r));
  if (deg == 0) {
    Rational a = F0(0);
    for (const auto& b : F0.breakpoints())
      if (b.y < a) a = b.y;
    InvariantInterval out{F0, a, a + 1, DegreeCase::Deg0, 0, {}};
    out.checks = detail::invariant_interval_checks(F0, out.a, out.b, out.kase);
    for (const auto& c : out.checks)
      if (!c.holds) throw Error(ErrorKind::NonStabilizing, "postcondition failed: " + c.name);
    return out;
  }
  ArcSet fix = fixed_point_set(F0);
  if (fix.is_empty()) throw Error(ErrorKind::NoFixedPoint, "circle map has no fixed point");
  Rational x = fix.intervals().front().lo;
  Integer k = Rational(F0(x) - x).get_num();
  PLLifting F = F0.shifted(-k);
  DegreeCase kase = deg == 1 ? DegreeCase::Deg1 : DegreeCase::DegMinus1;
  if (kase == DegreeCase::DegMinus1) F = F.shifted(1);
  Rational a = x, b = x + 1;
  std::size_t it = 0;
  for (;; ++it) {
    if (it >= max_iterations)
      throw Error(ErrorKind::NonStabilizing, "hull of F^n(J) did not stabilize");
    auto [lo, hi] = image_interval(F, a, b);
    Rational na = lo < a ? lo : a;
    Rational nb = hi > b ? hi : b;
    if (nb - na > 2)
      throw Error(ErrorKind::ExtensibleMap, "F^n(J) longer than 2 after " + std::to_string(it + 1) + " steps");
    if (na == a && nb == b) break;
    a = na;
    b = nb;
  }
  if (b - a == 2) {
    if (kase == DegreeCase::DegMinus1) F = F.shifted(-1);
    b = a + 1;
  }
  InvariantInterval out{F, a, b, kase, it, {}};
  out.checks = detail::invariant_interval_checks(F, a, b, kase);
  for (const auto& c : out.checks)
    if (!c.holds) throw Error(ErrorKind::NonStabilizing, "postcondition failed: " + c.name);
  return out;
}

/// {x in [a, b] : G(x) = x} as lifted closed intervals.
inline std::vector<std::pair<Rational, Rational>> real_fixed_points(const PLLifting& G,
                                                                    const Rational& a,
                                                                    const Rational& b) {
  std::vector<std::pair<Rational, Rational>> out;
  auto add = [&](const Rational& lo, const Rational& hi) {
    if (!out.empty() && lo <= out.back().second) {
      if (hi > out.back().second) out.back().second = hi;
    } else {
      out.emplace_back(lo, hi);
    }
  };
  for (const auto& p : G.pieces(a, b)) {
    Rational h0 = p.y0 - p.x0, h1 = p.y1 - p.x1;
    if (h0 == h1) {
      if (h0 == 0) add(p.x0, p.x1);
      continue;
    }
    if ((h0 <= 0 && h1 >= 0) || (h0 >= 0 && h1 <= 0)) {
      Rational x = p.x0 - h0 * (p.x1 - p.x0) / (h1 - h0);
      add(x, x);
    }
  }
  return out;
}

struct PeriodicCorrespondence {
  ArcSet projected_lift;  // e(Per(F|_I)), periods <= N
  ArcSet circle;          // Per(f), periods <= N
  bool equal = false;
  std::optional<CirclePoint> counterexample;
};

inline PeriodicCorrespondence lifted_periodic_correspondence(const PLLifting& f_lift,
                                                             const InvariantInterval& inv,
                                                             std::size_t N,
                                                             std::size_t budget = kDefaultBreakpointBudget) {
  PowerCache fp(f_lift, budget);
  PowerCache Fp(inv.lifting, budget);
  PeriodicCorrespondence out;
  std::vector<ArcSet::Interval> raw;
  for (std::size_t n = 1; n <= N; ++n) {
    out.circle = unite(out.circle, periodic_points(fp, n));
    for (auto& [lo, hi] : real_fixed_points(Fp.power(n), inv.a, inv.b))
      ArcSet::append_lifted(raw, lo, hi);
  }
  out.projected_lift = ArcSet::from_intervals(std::move(raw));
  out.equal = out.projected_lift == out.circle;
  if (!out.equal) {
    for (const auto* pair : {&out.projected_lift, &out.circle}) {
      const ArcSet& other = pair == &out.projected_lift ? out.circle : out.projected_lift;
      for (const auto& c : pair->components()) {
        if (!ArcSet::of(c).subset_of(other)) {
          out.counterexample = CirclePoint(c.start());
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace cdyn
