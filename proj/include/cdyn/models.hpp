#pragma once

// Standard example maps.

#include <cstddef>
#include <vector>

#include "cdyn/lifting.hpp"

namespace cdyn::models {

inline PLLifting doubling() { return PLLifting::linear(2, 0); }

inline PLLifting rotation(const Rational& alpha) { return PLLifting::rotation(alpha); }

/// Degree 0 bump of height h at x = 1/2.
inline PLLifting bump(const Rational& h) {
  return PLLifting({{Rational(0), Rational(0)}, {Rational(1, 2), h}, {Rational(1), Rational(0)}});
}

/// Degree 1 with fixed point 0 and invariant lifted interval [0, 5/4].
inline PLLifting deg1_with_fixed_point() {
  return PLLifting({{Rational(0), Rational(0)},
                    {Rational(1, 4), Rational(1, 8)},
                    {Rational(1, 2), Rational(5, 4)},
                    {Rational(1), Rational(1)}});
}

/// x -> -x.
inline PLLifting reflection() { return PLLifting::linear(-1, 0); }

/// Degree 0 tent of slopes +-2 truncated at height h:
/// x -> min(2x, h, 2 - 2x) on [0, 1].
inline PLLifting truncated_tent(const Rational& h) {
  return PLLifting({{Rational(0), Rational(0)},
                    {h / 2, h},
                    {Rational(1) - h / 2, h},
                    {Rational(1), Rational(0)}});
}

/// Interval maps on [0, 1] given by breakpoints (values in [0, 1]).
using IntervalMap = std::vector<Breakpoint>;

inline IntervalMap full_tent() {
  return {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1)}, {Rational(1), Rational(0)}};
}

/// The map f on [0, 1] with J1 = [0, 1/3] -> J2 = [2/3, 1] by translation,
/// J2 -> J1 by g scaled into J2 x J1, and a linear middle branch. f^2 on J1 is
/// g scaled by 1/3, and J1, J2 form a cycle of period 2.
inline IntervalMap period_double(const IntervalMap& g) {
  IntervalMap f{{Rational(0), Rational(2, 3)}, {Rational(1, 3), Rational(1)}};
  for (const auto& b : g) f.push_back({Rational(2, 3) + b.x / 3, b.y / 3});
  return f;
}

/// Circle map of degree 0: the interval map compressed onto [0, 1/2],
/// closed up by a linear branch on [1/2, 1].
inline PLLifting embed_interval_map(const IntervalMap& f) {
  std::vector<Breakpoint> bps;
  for (const auto& b : f) bps.push_back({b.x / 2, b.y / 2});
  bps.push_back({Rational(1), f.front().y / 2});
  return PLLifting(std::move(bps)).simplified();
}

/// Period-doubling ladder of the given depth over a full tent: cycles of
/// intervals of periods 2, 4, ..., 2^depth, the bottom one carrying a map
/// conjugate to the full tent.
inline PLLifting period_doubling(std::size_t depth) {
  IntervalMap f = full_tent();
  for (std::size_t i = 0; i < depth; ++i) f = period_double(f);
  return embed_interval_map(f);
}

}  // namespace cdyn::models
