#pragma once

// The circle realized as [0,1) mod 1: points, closed arcs, and normalized
// finite unions of closed arcs (ArcSet) with exact Boolean operations.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cdyn/errors.hpp"
#include "cdyn/rational.hpp"

namespace cdyn {

class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(const Rational& x) : pos_(frac(x)) {}

  const Rational& position() const { return pos_; }

  friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.pos_ == b.pos_; }
  friend bool operator<(const CirclePoint& a, const CirclePoint& b) { return a.pos_ < b.pos_; }

 private:
  Rational pos_{0};
};

inline std::ostream& operator<<(std::ostream& os, const CirclePoint& p) {
  return os << to_string(p.position());
}

/// Distance on the circle; always in [0, 1/2].
inline Rational circle_metric(const CirclePoint& a, const CirclePoint& b) {
  Rational diff = abs(Rational(a.position() - b.position()));
  if (diff <= Rational(1, 2)) return diff;
  return Rational(1) - diff;
}

/// Ordering of `points` seen counterclockwise from `base`: returns the
/// 1-based permutation sigma with base < x_sigma(1) < ... < base + 1.
inline std::vector<std::size_t> circular_order(const CirclePoint& base,
                                               const std::vector<CirclePoint>& points) {
  std::vector<Rational> lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) {
    Rational d = frac(Rational(p.position() - base.position()));
    if (d == 0) throw Error(ErrorKind::DegenerateInput, "point coincides with base");
    lifted.push_back(d);
  }
  std::vector<std::size_t> sigma(points.size());
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::sort(sigma.begin(), sigma.end(),
            [&](std::size_t i, std::size_t j) { return lifted[i] < lifted[j]; });
  for (std::size_t i = 1; i < sigma.size(); ++i)
    if (lifted[sigma[i]] == lifted[sigma[i - 1]])
      throw Error(ErrorKind::DegenerateInput, "duplicate points");
  for (auto& s : sigma) ++s;
  return sigma;
}

/// Closed arc [start, start + length] mod 1. Length 1 is the full circle.
/// Length 0 (a single point) is allowed so that exact intersections of closed
/// arcs stay representable; ArcPair and Cover reject it where it matters.
class Arc {
 public:
  Arc() = default;
  Arc(const Rational& start, const Rational& length) : start_(frac(start)), length_(length) {
    if (length < 0 || length > 1) throw Error(ErrorKind::DegenerateInput, "arc length outside [0,1]");
    if (length == 1) start_ = 0;
  }

  /// Closed lifted interval [a, b] projected to the circle (b - a >= 1 gives the full circle).
  static Arc from_lifted(const Rational& a, const Rational& b) {
    if (b < a) throw Error(ErrorKind::DegenerateInput, "reversed interval");
    Rational len = b - a;
    if (len >= 1) return Arc(0, 1);
    return Arc(a, len);
  }

  const Rational& start() const { return start_; }
  const Rational& length() const { return length_; }
  Rational lifted_end() const { return start_ + length_; }
  bool is_full() const { return length_ == 1; }
  bool is_point() const { return length_ == 0; }

  bool contains(const CirclePoint& p) const {
    if (is_full()) return true;
    Rational d = frac(Rational(p.position() - start_));
    return d <= length_;
  }

  Rational midpoint() const { return frac(Rational(start_ + length_ / 2)); }

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.start_ == b.start_ && a.length_ == b.length_;
  }

 private:
  Rational start_{0};
  Rational length_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Arc& a) {
  return os << "[" << to_string(a.start()) << ", " << to_string(a.lifted_end()) << "]";
}

/// Normalized finite union of closed arcs.
///
/// Stored as sorted closed intervals [lo, hi] of [0, 1] separated by positive
/// gaps. The point 0 = 1 is in the set exactly when both a leading interval
/// starting at 0 and a trailing interval ending at 1 are present; this keeps
/// the representation unique, so structural equality is set equality.
class ArcSet {
 public:
  struct Interval {
    Rational lo;
    Rational hi;
    friend bool operator==(const Interval& a, const Interval& b) {
      return a.lo == b.lo && a.hi == b.hi;
    }
  };

  ArcSet() = default;

  static ArcSet empty() { return ArcSet(); }
  static ArcSet full() {
    ArcSet s;
    s.iv_.push_back({Rational(0), Rational(1)});
    return s;
  }
  static ArcSet of(const Arc& arc) {
    std::vector<Interval> raw;
    append_arc(raw, arc.start(), arc.lifted_end());
    return from_intervals(std::move(raw));
  }
  static ArcSet point(const CirclePoint& p) { return of(Arc(p.position(), 0)); }
  static ArcSet of_arcs(const std::vector<Arc>& arcs) {
    std::vector<Interval> raw;
    for (const auto& a : arcs) append_arc(raw, a.start(), a.lifted_end());
    return from_intervals(std::move(raw));
  }
  /// Projection of a closed interval of the real line.
  static ArcSet of_lifted(const Rational& a, const Rational& b) {
    std::vector<Interval> raw;
    append_lifted(raw, a, b);
    return from_intervals(std::move(raw));
  }

  /// Builds a normalized set from intervals already clipped to [0, 1].
  static ArcSet from_intervals(std::vector<Interval> raw) {
    ArcSet s;
    if (raw.empty()) return s;
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    merged.reserve(raw.size());
    for (auto& iv : raw) {
      if (!merged.empty() && iv.lo <= merged.back().hi) {
        if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(std::move(iv));
      }
    }
    bool has_zero = merged.front().lo == 0 || merged.back().hi == 1;
    if (has_zero) {
      if (merged.front().lo != 0) merged.insert(merged.begin(), Interval{Rational(0), Rational(0)});
      if (merged.back().hi != 1) merged.push_back(Interval{Rational(1), Rational(1)});
    }
    s.iv_ = std::move(merged);
    return s;
  }

  /// Appends the projection of the lifted interval [a, b] as [0,1]-clipped pieces.
  static void append_lifted(std::vector<Interval>& out, const Rational& a, const Rational& b) {
    if (b - a >= 1) {
      out.push_back({Rational(0), Rational(1)});
      return;
    }
    Rational shift(floor_int(a));
    append_arc(out, a - shift, b - shift);
  }

  const std::vector<Interval>& intervals() const { return iv_; }
  bool is_empty() const { return iv_.empty(); }
  bool is_full() const { return iv_.size() == 1 && iv_[0].lo == 0 && iv_[0].hi == 1; }

  Rational measure() const {
    Rational m(0);
    for (const auto& iv : iv_) m += iv.hi - iv.lo;
    return m;
  }

  bool contains(const CirclePoint& p) const {
    const Rational& x = p.position();
    auto it = std::upper_bound(iv_.begin(), iv_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == iv_.begin()) return false;
    --it;
    return x <= it->hi;
  }

  /// Connected components as arcs, sorted by start; the wrap component (if
  /// any) starts at its position left of 1.
  std::vector<Arc> components() const {
    std::vector<Arc> out;
    if (iv_.empty()) return out;
    if (is_full()) return {Arc(0, 1)};
    bool wraps = iv_.size() >= 2 && iv_.front().lo == 0 && iv_.back().hi == 1;
    std::size_t first = wraps ? 1 : 0;
    std::size_t last = wraps ? iv_.size() - 1 : iv_.size();
    for (std::size_t i = first; i < last; ++i) out.emplace_back(iv_[i].lo, iv_[i].hi - iv_[i].lo);
    if (wraps) {
      Rational len = (Rational(1) - iv_.back().lo) + iv_.front().hi;
      // a wrap starting at 1 is really a component starting at 0
      if (iv_.back().lo == 1) out.insert(out.begin(), Arc(iv_.back().lo, len));
      else out.emplace_back(iv_.back().lo, len);
    }
    return out;
  }

  friend ArcSet unite(const ArcSet& a, const ArcSet& b) {
    std::vector<Interval> raw(a.iv_);
    raw.insert(raw.end(), b.iv_.begin(), b.iv_.end());
    return from_intervals(std::move(raw));
  }

  friend ArcSet intersect(const ArcSet& a, const ArcSet& b) {
    std::vector<Interval> raw;
    std::size_t i = 0, j = 0;
    while (i < a.iv_.size() && j < b.iv_.size()) {
      const auto& x = a.iv_[i];
      const auto& y = b.iv_[j];
      const Rational& lo = x.lo > y.lo ? x.lo : y.lo;
      const Rational& hi = x.hi < y.hi ? x.hi : y.hi;
      if (lo <= hi) raw.push_back({lo, hi});
      if (x.hi < y.hi) ++i; else ++j;
    }
    return from_intervals(std::move(raw));
  }

  /// Closure of the complement.
  ArcSet complement() const {
    std::vector<Interval> raw;
    Rational prev(0);
    for (const auto& iv : iv_) {
      if (iv.lo > prev) raw.push_back({prev, iv.lo});
      if (iv.hi > prev) prev = iv.hi;
    }
    if (prev < 1) raw.push_back({prev, Rational(1)});
    return from_intervals(std::move(raw));
  }

  bool subset_of(const ArcSet& other) const { return intersect(*this, other) == *this; }

  /// Every component widened by delta on both sides.
  ArcSet fattened(const Rational& delta) const {
    std::vector<Interval> raw;
    for (const auto& c : components())
      append_lifted(raw, c.start() - delta, c.lifted_end() + delta);
    return from_intervals(std::move(raw));
  }

  friend bool operator==(const ArcSet& a, const ArcSet& b) { return a.iv_ == b.iv_; }
  friend bool operator!=(const ArcSet& a, const ArcSet& b) { return !(a == b); }

 private:
  static void append_arc(std::vector<Interval>& out, const Rational& lo, const Rational& hi) {
    // lo in [0,1), hi - lo <= 1
    if (hi - lo >= 1) {
      out.push_back({Rational(0), Rational(1)});
    } else if (hi <= 1) {
      out.push_back({lo, hi});
    } else {
      out.push_back({lo, Rational(1)});
      out.push_back({Rational(0), hi - 1});
    }
  }

  std::vector<Interval> iv_;
};

inline std::ostream& operator<<(std::ostream& os, const ArcSet& s) {
  if (s.is_empty()) return os << "{}";
  bool first = true;
  for (const auto& a : s.components()) {
    if (!first) os << " u ";
    os << a;
    first = false;
  }
  return os;
}

/// Union of closed delta-balls around the points, built by one sort and merge.
inline ArcSet fattened_points(std::vector<CirclePoint> pts, const Rational& delta) {
  std::vector<ArcSet::Interval> raw;
  raw.reserve(pts.size() * 2);
  for (const auto& p : pts) ArcSet::append_lifted(raw, p.position() - delta, p.position() + delta);
  return ArcSet::from_intervals(std::move(raw));
}

}  // namespace cdyn
