#pragma once

// Orbits, omega-limit approximation, periodic-interval cycles, nested
// period-doubling chains and the separable / non-separable pair test.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/lifting.hpp"
#include "cdyn/periodic.hpp"

namespace cdyn {

inline constexpr std::size_t kDefaultOrbitBitBudget = 1 << 14;

struct Orbit {
  std::vector<CirclePoint> points;  // x, f(x), ..., f^n(x) (possibly truncated)
  bool truncated = false;           // precision budget hit
};

/// Exact orbit. Stops early, flagged, once a point needs more than
/// `bit_budget` bits.
inline Orbit orbit(const PLLifting& F, const CirclePoint& x, std::size_t n,
                   std::size_t bit_budget = kDefaultOrbitBitBudget) {
  Orbit out;
  out.points.reserve(n + 1);
  out.points.push_back(x);
  CirclePoint cur = x;
  for (std::size_t i = 0; i < n; ++i) {
    cur = CirclePoint(F(cur.position()));
    if (bit_size(cur.position()) > bit_budget) {
      out.truncated = true;
      break;
    }
    out.points.push_back(cur);
  }
  return out;
}

enum class OmegaClass { PeriodicOrbit, InfiniteEvidence };

struct OmegaApprox {
  std::vector<CirclePoint> tail_points;
  ArcSet cluster;
  OmegaClass classification = OmegaClass::InfiniteEvidence;
  std::size_t period = 0;           // set for PeriodicOrbit
  bool forward_invariant = false;   // f(cluster) inside cluster fattened by delta
  bool truncated = false;
  std::string note;
};

/// Window {f^B(x), ..., f^{B+W}(x)} clustered at tolerance delta. A periodic
/// orbit is declared only on an exact return inside the window.
inline OmegaApprox omega_approx(const PLLifting& F, const CirclePoint& x, std::size_t burn_in,
                                std::size_t window, const Rational& delta,
                                std::size_t bit_budget = kDefaultOrbitBitBudget) {
  Orbit orb = orbit(F, x, burn_in + window, bit_budget);
  OmegaApprox out;
  out.truncated = orb.truncated;
  std::size_t start = std::min(burn_in, orb.points.size() - 1);
  out.tail_points.assign(orb.points.begin() + static_cast<std::ptrdiff_t>(start), orb.points.end());
  std::map<Rational, std::size_t> seen;
  for (std::size_t i = 0; i < out.tail_points.size(); ++i) {
    auto [it, inserted] = seen.emplace(out.tail_points[i].position(), i);
    if (!inserted) {
      out.classification = OmegaClass::PeriodicOrbit;
      out.period = i - it->second;
      out.tail_points.resize(i);
      break;
    }
  }
  out.cluster = fattened_points(out.tail_points, delta);
  out.forward_invariant = image_arcset(F, out.cluster).subset_of(out.cluster.fattened(delta));
  if (out.classification == OmegaClass::InfiniteEvidence) {
    auto comps = out.cluster.components();
    if (comps.size() == 1 && !intersect(out.cluster, fixed_point_set(F)).is_empty())
      out.note = "converging-to-fixed";
  }
  return out;
}

/// J, f(J), ..., f^{period-1}(J) pairwise disjoint with f^period(J) = J.
struct PeriodicIntervalCycle {
  Arc base;
  std::size_t period = 0;
  std::vector<Arc> iterates;  // iterates[0] == base

  ArcSet union_set() const { return ArcSet::of_arcs(iterates); }

  /// Index of the member containing p, if any.
  std::optional<std::size_t> member_containing(const CirclePoint& p) const {
    for (std::size_t i = 0; i < iterates.size(); ++i)
      if (iterates[i].contains(p)) return i;
    return std::nullopt;
  }
};

/// Exact check; returns the cycle when `base` is a periodic interval of period m.
inline std::optional<PeriodicIntervalCycle> verify_cycle(const PLLifting& F, const Arc& base,
                                                         std::size_t m) {
  if (base.is_point()) return std::nullopt;
  PeriodicIntervalCycle c{base, m, {base}};
  Arc cur = base;
  for (std::size_t i = 1; i <= m; ++i) {
    cur = image_arc(F, cur);
    if (i < m) {
      ArcSet cs = ArcSet::of(cur);
      for (const auto& prev : c.iterates)
        if (!intersect(cs, ArcSet::of(prev)).is_empty()) return std::nullopt;
      c.iterates.push_back(cur);
    }
  }
  if (!(cur == base)) return std::nullopt;
  return c;
}

namespace detail {

/// Drops every cycle whose base sits strictly inside a member of another.
inline std::vector<PeriodicIntervalCycle> maximal_cycles(const std::vector<PeriodicIntervalCycle>& found) {
  std::vector<PeriodicIntervalCycle> maximal;
  for (const auto& c : found) {
    ArcSet cb = ArcSet::of(c.base);
    bool dominated = false;
    for (const auto& o : found) {
      if (&o == &c) continue;
      for (const auto& it : o.iterates) {
        ArcSet os = ArcSet::of(it);
        if (cb.subset_of(os) && !(cb == os)) { dominated = true; break; }
      }
      if (dominated) break;
    }
    if (!dominated) maximal.push_back(c);
  }
  return maximal;
}

}  // namespace detail

/// Cycles of intervals of period exactly m. Candidate endpoints are the
/// solutions of f^m(x) = x, their f^m-preimages, and the f^m-images of the
/// breakpoints of f^m (an endpoint of an f^m-invariant arc is the image of an
/// endpoint or of a turning point). Only maximal cycles are returned, one per
/// family, represented by the member with the smallest start, unless
/// `maximal_only` is off.
inline std::vector<PeriodicIntervalCycle> periodic_interval_cycles(PowerCache& powers, std::size_t m,
                                                                   std::size_t candidate_cap = 2048,
                                                                   bool maximal_only = true) {
  if (m < 1) throw Error(ErrorKind::DegenerateInput, "period must be >= 1");
  const PLLifting& F = powers.base();
  const PLLifting& G = powers.power(m);
  ArcSet sol = fixed_point_set(G);
  std::vector<Arc> candidates;
  std::vector<Rational> ends;
  ArcSet point_sol;
  for (const auto& c : sol.components()) {
    if (c.is_point()) {
      ends.push_back(c.start());
      point_sol = unite(point_sol, ArcSet::of(c));
    } else {
      candidates.push_back(c);
      ends.push_back(c.start());
      ends.push_back(frac(c.lifted_end()));
    }
  }
  for (const auto& c : preimage_arcset(G, point_sol).components()) {
    ends.push_back(c.start());
    ends.push_back(frac(c.lifted_end()));
  }
  for (const auto& b : G.breakpoints()) ends.push_back(frac(b.y));
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  if (ends.size() > candidate_cap) throw BudgetError("too many candidate endpoints for cycles");
  // f^m(J) = J forces both endpoint images into J; m disjoint members means
  // length at most 1/m
  std::vector<CirclePoint> img;
  for (const auto& e : ends) img.emplace_back(G(e));
  const Rational max_len = ratio(1, static_cast<long>(m));
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = 0; j < ends.size(); ++j) {
      if (i == j) continue;
      Rational len = frac(Rational(ends[j] - ends[i]));
      if (len > max_len) continue;
      Arc J(ends[i], len);
      if (J.contains(img[i]) && J.contains(img[j])) candidates.push_back(std::move(J));
    }

  std::vector<PeriodicIntervalCycle> found;
  for (const auto& cand : candidates) {
    auto c = verify_cycle(F, cand, m);
    if (!c) continue;
    // canonical representative: member with the smallest start
    auto best = std::min_element(c->iterates.begin(), c->iterates.end(),
                                 [](const Arc& a, const Arc& b) { return a.start() < b.start(); });
    if (best != c->iterates.begin()) {
      c = verify_cycle(F, *best, m);
      if (!c) continue;
    }
    bool dup = std::any_of(found.begin(), found.end(),
                           [&](const PeriodicIntervalCycle& o) { return o.base == c->base; });
    if (!dup) found.push_back(std::move(*c));
  }
  if (!maximal_only) return found;
  return detail::maximal_cycles(found);
}

/// Periodic-interval cycles with periods k | k2 | ..., each level's member
/// containing the reference points nested in the previous level's member.
struct NestedChain {
  std::vector<PeriodicIntervalCycle> levels;
  std::vector<std::size_t> members;  // member index holding the reference points, per level
  bool budget_hit = false;           // stopped on the candidate budget, not on a missing level

  std::size_t depth() const { return levels.size(); }
  Arc member(std::size_t level) const { return levels[level].iterates[members[level]]; }
};

/// Exact re-check of the nesting and divisibility conditions.
inline bool verify_chain(const PLLifting& F, const NestedChain& ch) {
  for (std::size_t i = 0; i < ch.depth(); ++i) {
    if (!verify_cycle(F, ch.levels[i].base, ch.levels[i].period)) return false;
    if (i == 0) continue;
    const auto& prev = ch.levels[i - 1];
    const auto& cur = ch.levels[i];
    if (cur.period <= prev.period || cur.period % prev.period != 0) return false;
    if (!ArcSet::of(ch.member(i)).subset_of(ArcSet::of(ch.member(i - 1)))) return false;
    if (!cur.union_set().subset_of(prev.union_set())) return false;
  }
  return true;
}

namespace detail {

inline std::optional<std::pair<PeriodicIntervalCycle, std::size_t>> cycle_holding(
    const std::vector<PeriodicIntervalCycle>& cycles, const std::vector<CirclePoint>& refs,
    const std::optional<Arc>& inside) {
  std::optional<std::pair<PeriodicIntervalCycle, std::size_t>> best;
  for (const auto& c : cycles) {
    if (c.iterates.size() != c.period) continue;
    auto idx = c.member_containing(refs.front());
    if (!idx) continue;
    const Arc& mem = c.iterates[*idx];
    bool all = std::all_of(refs.begin(), refs.end(), [&](const CirclePoint& p) { return mem.contains(p); });
    if (!all) continue;
    if (inside && !ArcSet::of(mem).subset_of(ArcSet::of(*inside))) continue;
    if (!best || mem.length() > best->first.iterates[best->second].length()) best = {{c, *idx}};
  }
  return best;
}

}  // namespace detail

/// periodic_interval_cycles memoized by period.
class CycleCache {
 public:
  explicit CycleCache(PowerCache& powers) : powers_(powers) {}

  PowerCache& powers() { return powers_; }

  const std::vector<PeriodicIntervalCycle>& cycles(std::size_t m) {
    auto it = memo_.find(m);
    if (it == memo_.end()) it = memo_.emplace(m, detail::maximal_cycles(all_cycles(m))).first;
    return it->second;
  }

  /// Every verified cycle, nested ones included.
  const std::vector<PeriodicIntervalCycle>& all_cycles(std::size_t m) {
    auto it = all_.find(m);
    if (it == all_.end()) it = all_.emplace(m, periodic_interval_cycles(powers_, m, 2048, false)).first;
    return it->second;
  }

 private:
  PowerCache& powers_;
  std::map<std::size_t, std::vector<PeriodicIntervalCycle>> memo_, all_;
};

/// Period-doubling ladder k, 2k, 4k, ... (k >= 2, the smallest period <=
/// horizon with a cycle member holding every reference point). Stops at depth
/// D, at the horizon, or when the next level is missing.
inline NestedChain nested_chain(CycleCache& cc, const std::vector<CirclePoint>& refs,
                                std::size_t depth, std::size_t horizon) {
  NestedChain ch;
  if (refs.empty() || depth == 0) return ch;
  std::size_t k = 0;
  try {
    for (std::size_t m = 2; m <= horizon && k == 0; ++m) {
      auto hit = detail::cycle_holding(cc.cycles(m), refs, std::nullopt);
      if (hit) {
        k = m;
        ch.levels.push_back(hit->first);
        ch.members.push_back(hit->second);
      }
    }
    if (k == 0) return ch;
    for (std::size_t m = 2 * k; ch.depth() < depth && m <= horizon; m *= 2) {
      auto hit = detail::cycle_holding(cc.cycles(m), refs, ch.member(ch.depth() - 1));
      if (!hit || !hit->first.union_set().subset_of(ch.levels.back().union_set())) break;
      ch.levels.push_back(hit->first);
      ch.members.push_back(hit->second);
    }
  } catch (const BudgetError&) {
    ch.budget_hit = true;
  }
  return ch;
}

enum class SeparabilityKind { Separable, NonSeparableEvidence, NotComparable };

inline const char* to_string(SeparabilityKind k) {
  switch (k) {
    case SeparabilityKind::Separable: return "Separable";
    case SeparabilityKind::NonSeparableEvidence: return "NonSeparableEvidence";
    case SeparabilityKind::NotComparable: return "NotComparable";
  }
  return "?";
}

struct SeparabilityOptions {
  Rational delta{1, 10000};     // omega shadowing tolerance
  std::size_t burn_in = 0;
  std::size_t tail = 10000;
};

struct SeparabilityVerdict {
  SeparabilityKind kind = SeparabilityKind::NotComparable;
  // Separable
  std::optional<PeriodicIntervalCycle> cycle_x, cycle_y;
  std::optional<Arc> J1, J2;
  // NonSeparableEvidence
  NestedChain chain;
  std::optional<CirclePoint> omega_seed;
  bool budget_hit = false;  // some period was skipped on the candidate budget
};

namespace detail {

inline bool shadowed(const std::vector<CirclePoint>& tail, const CirclePoint& p, const Rational& delta) {
  return std::any_of(tail.begin(), tail.end(),
                     [&](const CirclePoint& q) { return circle_metric(p, q) <= delta; });
}

}  // namespace detail

/// Separable: disjoint periodic intervals (periods <= horizon) hold x and y.
/// NonSeparableEvidence: a depth-D ladder has x and y in one member at every
/// level and one orbit tail delta-shadows both points. Otherwise
/// NotComparable. Seeds for the common omega-limit are x, y and the
/// breakpoints of F.
inline SeparabilityVerdict separability_test(CycleCache& cc, const CirclePoint& x,
                                             const CirclePoint& y, std::size_t depth,
                                             std::size_t horizon,
                                             const SeparabilityOptions& opt = {}) {
  if (x == y) throw Error(ErrorKind::DegenerateInput, "separability test needs x != y");
  const PLLifting& F = cc.powers().base();
  SeparabilityVerdict v;
  // nested cycles too: a maximal cycle may touch the other point's cycle
  // while a smaller one inside it does not
  std::vector<PeriodicIntervalCycle> all;
  for (std::size_t m = 1; m <= horizon; ++m) {
    try {
      const auto& cs = cc.all_cycles(m);
      all.insert(all.end(), cs.begin(), cs.end());
    } catch (const BudgetError&) {
      v.budget_hit = true;
    }
  }
  for (const auto& cx : all) {
    auto ix = cx.member_containing(x);
    if (!ix) continue;
    for (const auto& cy : all) {
      auto iy = cy.member_containing(y);
      if (!iy) continue;
      const Arc& a = cx.iterates[*ix];
      const Arc& b = cy.iterates[*iy];
      if (intersect(ArcSet::of(a), ArcSet::of(b)).is_empty()) {
        v.kind = SeparabilityKind::Separable;
        v.cycle_x = cx;
        v.cycle_y = cy;
        v.J1 = a;
        v.J2 = b;
        return v;
      }
    }
  }
  NestedChain ch = nested_chain(cc, {x, y}, depth, horizon);
  if (ch.depth() >= depth && depth > 0) {
    std::vector<CirclePoint> seeds{x, y};
    for (const auto& r : breakpoint_positions(F)) seeds.emplace_back(r);
    for (const auto& z : seeds) {
      Orbit orb = orbit(F, z, opt.burn_in + opt.tail);
      std::vector<CirclePoint> tail(
          orb.points.begin() + static_cast<std::ptrdiff_t>(std::min(opt.burn_in, orb.points.size())),
          orb.points.end());
      if (detail::shadowed(tail, x, opt.delta) && detail::shadowed(tail, y, opt.delta)) {
        v.kind = SeparabilityKind::NonSeparableEvidence;
        v.chain = std::move(ch);
        v.omega_seed = z;
        return v;
      }
    }
  }
  v.budget_hit = v.budget_hit || ch.budget_hit;
  v.chain = std::move(ch);
  return v;
}

struct NsPowerReport {
  struct Row {
    CirclePoint x, y;
    SeparabilityKind under_f, under_fp;
    bool conflict;
  };
  std::vector<Row> rows;
  bool consistent = true;
};

/// Runs the test for f and f^p. Under f^p every doubling level below p
/// collapses onto a period-1 interval, so the ladder depth asked of f^p is
/// D - floor(log2 p) and the period horizon is horizon / p.
inline NsPowerReport ns_power_consistency(const PLLifting& F, std::size_t p,
                                          const std::vector<std::pair<CirclePoint, CirclePoint>>& pairs,
                                          std::size_t depth, std::size_t horizon,
                                          const SeparabilityOptions& opt = {}) {
  if (p < 1) throw Error(ErrorKind::DegenerateInput, "power must be >= 1");
  PowerCache pf(F);
  PowerCache pg(power(F, p));
  CycleCache cf(pf), cg(pg);
  std::size_t log2p = 0;
  while ((std::size_t{1} << (log2p + 1)) <= p) ++log2p;
  std::size_t depth_p = depth > log2p ? depth - log2p : 1;
  std::size_t horizon_p = std::max<std::size_t>(1, horizon / p);
  NsPowerReport rep;
  for (const auto& [x, y] : pairs) {
    auto a = separability_test(cf, x, y, depth, horizon, opt).kind;
    auto b = separability_test(cg, x, y, depth_p, horizon_p, opt).kind;
    bool conflict = (a == SeparabilityKind::Separable && b == SeparabilityKind::NonSeparableEvidence) ||
                    (b == SeparabilityKind::Separable && a == SeparabilityKind::NonSeparableEvidence);
    rep.rows.push_back({x, y, a, b, conflict});
    if (conflict) rep.consistent = false;
  }
  return rep;
}

}  // namespace cdyn
