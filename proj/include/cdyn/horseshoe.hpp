#pragma once

// Horizon-bounded extensibility verdicts and horseshoe certificates.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/lifting.hpp"

namespace cdyn {

/// Either a witness (n, r) with |F^n([r, r+1])| >= |deg| + 1, or the statement
/// that no such witness exists for n <= horizon. The per-n check is exact: the
/// window length is convex in r between breakpoint crossings, so the sup is
/// attained with r at a breakpoint of F^n.
struct ExtensibilityVerdict {
  bool extensible = false;
  std::size_t horizon = 0;
  std::size_t n = 0;
  Rational r;
  Rational image_lo, image_hi;
};

inline ExtensibilityVerdict is_extensible(PowerCache& powers, std::size_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::DegenerateInput, "horizon must be >= 1");
  const PLLifting& F = powers.base();
  Rational threshold = Rational(abs(Rational(F.degree())) + 1);
  ExtensibilityVerdict v;
  v.horizon = horizon;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const PLLifting& G = powers.power(n);
    for (const auto& r : breakpoint_positions(G)) {
      auto [lo, hi] = image_interval(G, r, r + 1);
      if (hi - lo >= threshold) {
        v.extensible = true;
        v.n = n;
        v.r = r;
        v.image_lo = lo;
        v.image_hi = hi;
        return v;
      }
    }
  }
  return v;
}

inline ExtensibilityVerdict is_extensible(const PLLifting& F, std::size_t horizon,
                                          std::size_t budget = kDefaultBreakpointBudget) {
  PowerCache powers(F, budget);
  return is_extensible(powers, horizon);
}

/// Points of [a, b] where G equals `level`, as closed intervals (points or flat
/// segments), in increasing order.
inline std::vector<std::pair<Rational, Rational>> level_set(const PLLifting& G, const Rational& a,
                                                            const Rational& b,
                                                            const Rational& level) {
  std::vector<std::pair<Rational, Rational>> out;
  auto add = [&](const Rational& lo, const Rational& hi) {
    if (!out.empty() && lo <= out.back().second) {
      if (hi > out.back().second) out.back().second = hi;
    } else {
      out.emplace_back(lo, hi);
    }
  };
  if (a == b) {
    if (G(a) == level) add(a, a);
    return out;
  }
  for (const auto& p : G.pieces(a, b)) {
    if (p.y0 == p.y1) {
      if (p.y0 == level) add(p.x0, p.x1);
      continue;
    }
    const Rational& lo = p.y0 < p.y1 ? p.y0 : p.y1;
    const Rational& hi = p.y0 < p.y1 ? p.y1 : p.y0;
    if (level < lo || level > hi) continue;
    Rational x = p.x0 + (level - p.y0) * (p.x1 - p.x0) / (p.y1 - p.y0);
    add(x, x);
  }
  return out;
}

/// A sub-interval [s, t] of [a, b] with G([s, t]) = [c, d] exactly (c < d), if
/// the image of [a, b] contains [c, d].
inline std::optional<std::pair<Rational, Rational>> covering_subinterval(
    const PLLifting& G, const Rational& a, const Rational& b, const Rational& c,
    const Rational& d) {
  auto low = level_set(G, a, b, c);
  auto high = level_set(G, a, b, d);
  struct Event {
    Rational lo, hi;
    bool is_high;
  };
  std::vector<Event> ev;
  for (auto& [l, h] : low) ev.push_back({l, h, false});
  for (auto& [l, h] : high) ev.push_back({l, h, true});
  std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
    if (ev[i].is_high != ev[i + 1].is_high) return std::make_pair(ev[i].hi, ev[i + 1].lo);
  }
  return std::nullopt;
}

struct HorseshoeCertificate {
  std::size_t n = 0;
  std::array<Arc, 2> K;
  /// sub[i][j] is a sub-arc of K[i] mapped by f^n exactly onto K[j].
  std::array<std::array<Arc, 2>, 2> sub;
};

namespace detail {

// Lifted K_i = [a, b] and target lifted [c, d] of K_j; finds the exact sub-arc.
inline std::optional<Arc> sub_arc_onto(const PLLifting& G, const Rational& a, const Rational& b,
                                       const Rational& c, const Rational& d) {
  auto [lo, hi] = image_interval(G, a, b);
  for (Integer k = ceil_int(lo - c); Rational(k) <= hi - d; ++k) {
    Rational kr(k);
    auto st = covering_subinterval(G, a, b, c + kr, d + kr);
    if (!st) continue;
    auto [s, t] = *st;
    auto [ilo, ihi] = image_interval(G, s, t);
    if (ilo == c + kr && ihi == d + kr && s < t) return Arc::from_lifted(s, t);
  }
  return std::nullopt;
}

inline std::optional<HorseshoeCertificate> try_pair(const PLLifting& G, std::size_t n,
                                                    const Rational& u, const Rational& v,
                                                    const Rational& w) {
  // K1 = [u, v], K2 = [v, w] lifted, u < v < w <= u + 1.
  if (!(u < v && v < w && w <= u + 1)) return std::nullopt;
  std::array<std::pair<Rational, Rational>, 2> K{{{u, v}, {v, w}}};
  HorseshoeCertificate cert;
  cert.n = n;
  for (int i = 0; i < 2; ++i) cert.K[i] = Arc::from_lifted(K[i].first, K[i].second);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      auto s = sub_arc_onto(G, K[i].first, K[i].second, K[j].first, K[j].second);
      if (!s) return std::nullopt;
      cert.sub[i][j] = *s;
    }
  }
  return cert;
}

}  // namespace detail

/// Exact re-check of a certificate: nondegenerate arcs, disjoint interiors,
/// sub-arcs inside their parents, and f^n(sub[i][j]) == K[j].
inline bool verify_horseshoe(const PLLifting& F, const HorseshoeCertificate& c) {
  PLLifting G = power(F, c.n);
  for (const auto& k : c.K)
    if (k.is_point() || k.is_full()) return false;
  ArcSet overlap = intersect(ArcSet::of(c.K[0]), ArcSet::of(c.K[1]));
  if (overlap.measure() != 0) return false;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!ArcSet::of(c.sub[i][j]).subset_of(ArcSet::of(c.K[i]))) return false;
      if (!(image_arc(G, c.sub[i][j]) == c.K[j])) return false;
    }
  }
  return true;
}

/// Searches n = 1..horizon. Absence of a certificate is not evidence of zero
/// entropy. Candidates, in order: the min/max split for degree-0 iterates, the
/// greedy unit-range split from each breakpoint, then adjacent arc pairs cut
/// from breakpoints of F^n and points of period <= 2.
std::optional<HorseshoeCertificate> find_horseshoe(const PLLifting& F, std::size_t horizon,
                                                   std::size_t budget = kDefaultBreakpointBudget);

namespace detail {

// Smallest t in [r, r+1] with max F - min F over [r, t] >= L.
inline std::optional<Rational> first_range_reach(const PLLifting& G, const Rational& r,
                                                 const Rational& L) {
  Rational m = G(r), M = m;
  for (const auto& p : G.pieces(r, r + 1)) {
    Rational s = p.slope();
    if (s > 0) {
      Rational target = m + L;
      if (p.y1 >= target) return p.x0 + (target - p.y0) / s;
      if (p.y1 > M) M = p.y1;
    } else if (s < 0) {
      Rational target = M - L;
      if (p.y1 <= target) return p.x0 + (target - p.y0) / s;
      if (p.y1 < m) m = p.y1;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<HorseshoeCertificate> find_horseshoe(const PLLifting& F, std::size_t horizon,
                                                          std::size_t budget) {
  if (horizon < 1) throw Error(ErrorKind::DegenerateInput, "horizon must be >= 1");
  PowerCache powers(F, budget);
  for (std::size_t n = 1; n <= horizon; ++n) {
    const PLLifting& G = powers.power(n);
    auto bx = breakpoint_positions(G);

    if (G.degree() == 0) {
      // x = argmin, y = argmax in (x, x + 1)
      Rational xmin = bx[0], vmin = G(bx[0]);
      for (const auto& x : bx) {
        Rational v = G(x);
        if (v < vmin) { vmin = v; xmin = x; }
      }
      Rational ymax = xmin, vmax = vmin;
      for (const auto& x : bx) {
        Rational y = x > xmin ? x : x + 1;
        Rational v = G(y);
        if (v > vmax) { vmax = v; ymax = y; }
      }
      if (vmax - vmin >= 1) {
        auto c = detail::try_pair(G, n, xmin, ymax, xmin + 1);
        if (c && verify_horseshoe(F, *c)) return c;
      }
    }

    for (const auto& r : bx) {
      auto t = detail::first_range_reach(G, r, 1);
      if (!t || *t >= r + 1) continue;
      auto c = detail::try_pair(G, n, r, *t, r + 1);
      if (c && verify_horseshoe(F, *c)) return c;
    }

    std::vector<Rational> cand = bx;
    for (std::size_t m = 1; m <= 2; ++m) {
      PLLifting Gm = powers.power(m);
      for (const auto& p : Gm.pieces(0, 1)) {
        Rational h0 = p.y0 - p.x0, h1 = p.y1 - p.x1;
        if (h0 == h1) {
          if (is_integer(h0)) { cand.push_back(p.x0); cand.push_back(p.x1); }
          continue;
        }
        const Rational& lo = h0 < h1 ? h0 : h1;
        const Rational& hi = h0 < h1 ? h1 : h0;
        for (Integer k = ceil_int(lo); Rational(k) <= hi; ++k)
          cand.push_back(p.x0 + (Rational(k) - h0) * (p.x1 - p.x0) / (h1 - h0));
      }
    }
    for (auto& c : cand) c = frac(c);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // all triples when few cuts, otherwise K1, K2 each spanning at most 4 laps
    const std::size_t P = cand.size();
    const std::size_t span = P > 32 ? 4 : P;
    auto lift = [&](std::size_t i, std::size_t d) { return cand[(i + d) % P] + (i + d >= P ? 1 : 0); };
    auto width = [&](const Rational& a, const Rational& b) {
      auto [lo, hi] = image_interval(G, a, b);
      return Rational(hi - lo);
    };
    for (std::size_t i = 0; i < P; ++i) {
      for (std::size_t dj = 1; dj < P && dj <= span; ++dj) {
        Rational u = cand[i], v = lift(i, dj);
        Rational w1 = width(u, v);
        if (w1 < v - u) continue;  // K1 must cover itself
        for (std::size_t dk = dj + 1; dk <= P && dk - dj <= span; ++dk) {
          Rational w = lift(i, dk);
          Rational need = v - u > w - v ? Rational(v - u) : Rational(w - v);
          if (w1 < need || width(v, w) < need) continue;
          auto c = detail::try_pair(G, n, u, v, w);
          if (c && verify_horseshoe(F, *c)) return c;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace cdyn
