#pragma once

// Piecewise-linear liftings F: R -> R with F(x + 1) = F(x) + degree, the
// circle maps they induce, composition, exact images and exact preimages.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/errors.hpp"
#include "cdyn/rational.hpp"

namespace cdyn {

/// Default cap on breakpoints produced by composition.
inline constexpr std::size_t kDefaultBreakpointBudget = 1'000'000;

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint& a, const Breakpoint& b) { return a.x == b.x && a.y == b.y; }
};

/// One linear piece [x0, x1] -> [y0, y1] of a lifting on the real line.
struct Piece {
  Rational x0, x1, y0, y1;
  Rational slope() const { return (y1 - y0) / (x1 - x0); }
  Rational at(const Rational& x) const { return y0 + (x - x0) * slope(); }
};

class PLLifting {
 public:
  /// Breakpoints on [0, 1]: x strictly increasing from 0 to 1, y_last - y_first
  /// an integer (the degree).
  explicit PLLifting(std::vector<Breakpoint> bps) : bps_(std::move(bps)) {
    if (bps_.size() < 2) throw Error(ErrorKind::InvalidLifting, "need at least two breakpoints");
    if (bps_.front().x != 0) throw Error(ErrorKind::InvalidLifting, "first breakpoint must have x = 0");
    if (bps_.back().x != 1) throw Error(ErrorKind::InvalidLifting, "last breakpoint must have x = 1");
    for (std::size_t i = 1; i < bps_.size(); ++i)
      if (!(bps_[i - 1].x < bps_[i].x))
        throw Error(ErrorKind::InvalidLifting, "breakpoint x values must be strictly increasing");
    Rational d = bps_.back().y - bps_.front().y;
    if (!is_integer(d)) throw Error(ErrorKind::InvalidLifting, "y_last - y_first is not an integer");
    degree_ = d.get_num();
  }

  static PLLifting linear(const Rational& slope, const Rational& offset) {
    return PLLifting({{Rational(0), offset}, {Rational(1), offset + slope}});
  }
  static PLLifting identity() { return linear(1, 0); }
  static PLLifting rotation(const Rational& alpha) { return linear(1, alpha); }

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  const Integer& degree() const { return degree_; }
  std::size_t size() const { return bps_.size(); }

  Rational operator()(const Rational& x) const {
    Integer k = floor_int(x);
    Rational r = x - Rational(k);
    Rational shift = Rational(k * degree_);
    auto it = std::upper_bound(bps_.begin(), bps_.end(), r,
                               [](const Rational& v, const Breakpoint& b) { return v < b.x; });
    // r in [0,1), so it points past bps_[0]
    const Breakpoint& right = *it;
    const Breakpoint& left = *(it - 1);
    if (r == left.x) return left.y + shift;
    return left.y + (r - left.x) * (right.y - left.y) / (right.x - left.x) + shift;
  }

  /// Pieces covering [lo, hi] (lo < hi), clipped at the ends.
  std::vector<Piece> pieces(const Rational& lo, const Rational& hi) const {
    std::vector<Piece> out;
    Integer k = floor_int(lo);
    for (;; ++k) {
      Rational kx(k);
      if (kx >= hi) break;
      Rational ky(k * degree_);
      for (std::size_t i = 0; i + 1 < bps_.size(); ++i) {
        Rational a = bps_[i].x + kx, b = bps_[i + 1].x + kx;
        if (b <= lo) continue;
        if (a >= hi) break;
        Piece p{a, b, bps_[i].y + ky, bps_[i + 1].y + ky};
        if (a < lo) {
          p.y0 = p.at(lo);
          p.x0 = lo;
        }
        if (b > hi) {
          p.y1 = (*this)(hi);
          p.x1 = hi;
        }
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  bool non_decreasing() const {
    for (std::size_t i = 1; i < bps_.size(); ++i)
      if (bps_[i].y < bps_[i - 1].y) return false;
    return true;
  }

  /// Same map with collinear interior breakpoints removed.
  PLLifting simplified() const {
    std::vector<Breakpoint> out;
    out.reserve(bps_.size());
    out.push_back(bps_.front());
    for (std::size_t i = 1; i + 1 < bps_.size(); ++i) {
      const auto& a = out.back();
      const auto& b = bps_[i];
      const auto& c = bps_[i + 1];
      if ((b.y - a.y) * (c.x - b.x) != (c.y - b.y) * (b.x - a.x)) out.push_back(b);
    }
    out.push_back(bps_.back());
    return PLLifting(std::move(out));
  }

  /// F + c for an integer c: another lifting of the same circle map.
  PLLifting shifted(const Integer& c) const {
    std::vector<Breakpoint> out(bps_);
    for (auto& b : out) b.y += Rational(c);
    return PLLifting(std::move(out));
  }

  friend bool operator==(const PLLifting& a, const PLLifting& b) { return a.bps_ == b.bps_; }

 private:
  std::vector<Breakpoint> bps_;
  Integer degree_;
};

/// Exact [min F, max F] over [a, b].
inline std::pair<Rational, Rational> image_interval(const PLLifting& F, const Rational& a,
                                                    const Rational& b) {
  if (b < a) throw Error(ErrorKind::DegenerateInput, "image_interval needs a <= b");
  Rational fa = F(a);
  Rational lo = fa, hi = fa;
  if (a == b) return {lo, hi};
  for (const auto& p : F.pieces(a, b)) {
    if (p.y1 < lo) lo = p.y1;
    if (p.y1 > hi) hi = p.y1;
  }
  return {lo, hi};
}

/// F o G. Breakpoints of the result refine G's breakpoints with the G-preimages
/// of F's breakpoints; collinear points are then dropped.
inline PLLifting compose(const PLLifting& F, const PLLifting& G,
                         std::size_t budget = kDefaultBreakpointBudget) {
  const auto& gb = G.breakpoints();
  const auto& fb = F.breakpoints();
  std::vector<Rational> xs;
  xs.reserve(gb.size() * 2);
  for (std::size_t i = 0; i + 1 < gb.size(); ++i) {
    const auto& x0 = gb[i].x;
    const auto& x1 = gb[i + 1].x;
    const auto& y0 = gb[i].y;
    const auto& y1 = gb[i + 1].y;
    xs.push_back(x0);
    if (y0 == y1) continue;
    const Rational& lo = y0 < y1 ? y0 : y1;
    const Rational& hi = y0 < y1 ? y1 : y0;
    Rational inv = (x1 - x0) / (y1 - y0);
    for (Integer k = floor_int(lo); Rational(k) < hi; ++k) {
      Rational kx(k);
      for (std::size_t j = 0; j + 1 < fb.size(); ++j) {
        Rational t = fb[j].x + kx;
        if (t <= lo) continue;
        if (t >= hi) break;
        xs.push_back(x0 + (t - y0) * inv);
      }
    }
    if (xs.size() > budget) throw BudgetError("composition exceeds breakpoint budget");
  }
  xs.push_back(Rational(1));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> out;
  out.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = F(G(x));
    out.push_back({std::move(x), std::move(y)});
  }
  PLLifting result = PLLifting(std::move(out)).simplified();
  if (result.size() > budget) throw BudgetError("composition exceeds breakpoint budget");
  return result;
}

/// The circle map induced by a lifting.
class CircleMapPL {
 public:
  explicit CircleMapPL(PLLifting lifting) : lift_(std::move(lifting)) {}

  const PLLifting& lifting() const { return lift_; }
  const Integer& degree() const { return lift_.degree(); }

  CirclePoint operator()(const CirclePoint& p) const { return CirclePoint(lift_(p.position())); }

 private:
  PLLifting lift_;
};

/// Lazily computed iterates F^n, shared across the searches that need many
/// powers of one map.
class PowerCache {
 public:
  explicit PowerCache(PLLifting F, std::size_t budget = kDefaultBreakpointBudget)
      : budget_(budget) {
    powers_.push_back(PLLifting::identity());
    powers_.push_back(std::move(F));
  }

  const PLLifting& base() const { return powers_[1]; }
  std::size_t budget() const { return budget_; }

  const PLLifting& power(std::size_t n) {
    while (powers_.size() <= n) powers_.push_back(compose(powers_[1], powers_.back(), budget_));
    return powers_[n];
  }

 private:
  std::deque<PLLifting> powers_;  // stable references across growth
  std::size_t budget_;
};

inline PLLifting power(const PLLifting& F, std::size_t n,
                       std::size_t budget = kDefaultBreakpointBudget) {
  PLLifting out = PLLifting::identity();
  for (std::size_t i = 0; i < n; ++i) out = compose(F, out, budget);
  return out;
}

/// Exact f^{-1}(A): each linear piece of F on [0,1] is inverted against every
/// integer translate of A that meets its range.
inline ArcSet preimage_arcset(const PLLifting& F, const ArcSet& A) {
  if (A.is_empty()) return A;
  if (A.is_full()) return A;
  std::vector<ArcSet::Interval> raw;
  const auto& bps = F.breakpoints();
  const auto& ivs = A.intervals();
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const auto& x0 = bps[i].x;
    const auto& x1 = bps[i + 1].x;
    const auto& y0 = bps[i].y;
    const auto& y1 = bps[i + 1].y;
    if (y0 == y1) {
      if (A.contains(CirclePoint(y0))) raw.push_back({x0, x1});
      continue;
    }
    const Rational& lo = y0 < y1 ? y0 : y1;
    const Rational& hi = y0 < y1 ? y1 : y0;
    Rational inv = (x1 - x0) / (y1 - y0);
    for (Integer k = floor_int(lo); Rational(k) <= hi; ++k) {
      Rational kx(k);
      for (const auto& iv : ivs) {
        Rational l = iv.lo + kx, h = iv.hi + kx;
        if (h < lo) continue;
        if (l > hi) break;
        Rational tl = l > lo ? l : lo;
        Rational th = h < hi ? h : hi;
        Rational a = x0 + (tl - y0) * inv;
        Rational b = x0 + (th - y0) * inv;
        if (b < a) std::swap(a, b);
        raw.push_back({std::move(a), std::move(b)});
      }
    }
  }
  return ArcSet::from_intervals(std::move(raw));
}

inline ArcSet preimage_arcset(const CircleMapPL& f, const ArcSet& A) {
  return preimage_arcset(f.lifting(), A);
}

/// Exact f(A).
inline ArcSet image_arcset(const PLLifting& F, const ArcSet& A) {
  std::vector<ArcSet::Interval> raw;
  for (const auto& c : A.components()) {
    auto [lo, hi] = image_interval(F, c.start(), c.lifted_end());
    ArcSet::append_lifted(raw, lo, hi);
  }
  return ArcSet::from_intervals(std::move(raw));
}

/// Image of a closed arc as an arc (image of a connected set is connected).
inline Arc image_arc(const PLLifting& F, const Arc& K) {
  auto [lo, hi] = image_interval(F, K.start(), K.lifted_end());
  return Arc::from_lifted(lo, hi);
}

/// Breakpoint x-coordinates in [0, 1).
inline std::vector<Rational> breakpoint_positions(const PLLifting& F) {
  std::vector<Rational> out;
  const auto& b = F.breakpoints();
  for (std::size_t i = 0; i + 1 < b.size(); ++i) out.push_back(b[i].x);
  return out;
}

}  // namespace cdyn
