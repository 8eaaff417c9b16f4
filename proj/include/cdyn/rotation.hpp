#pragma once

// Rotation numbers of degree-one liftings and the classification of circle
// maps without periodic points.

#include <cstddef>
#include <optional>
#include <string>

#include "cdyn/circle.hpp"
#include "cdyn/lifting.hpp"
#include "cdyn/omega.hpp"
#include "cdyn/periodic.hpp"

namespace cdyn {

/// Interval [lower, upper] holding every limit of (F^k(x) - x) / k. With
/// G = F^n and m <= G(x) - x <= M for all x, F^{jn}(x) - x lies in [jm, jM],
/// so [m/n, M/n] is a valid enclosure; for non-decreasing F, M - m < 1 and
/// the width is below 1/n.
struct RotationEstimate {
  Rational lower, upper;
  std::optional<Rational> exact;  // F^n is a translation; every orbit is periodic
  std::size_t n_used = 0;
  bool monotone = false;
  bool converges = false;  // monotone liftings have a single rotation number
};

inline RotationEstimate rotation_bounds(PowerCache& powers, std::size_t n) {
  const PLLifting& F = powers.base();
  if (F.degree() != 1) throw Error(ErrorKind::WrongDegree, "rotation number needs degree 1");
  if (n < 1) throw Error(ErrorKind::DegenerateInput, "n must be >= 1");
  const PLLifting& G = powers.power(n);
  Rational m = G.breakpoints().front().y - G.breakpoints().front().x, M = m;
  for (const auto& b : G.breakpoints()) {
    Rational h = b.y - b.x;
    if (h < m) m = h;
    if (h > M) M = h;
  }
  RotationEstimate r;
  r.n_used = n;
  r.lower = m / Rational(n);
  r.upper = M / Rational(n);
  r.monotone = F.non_decreasing();
  r.converges = r.monotone;
  if (m == M) r.exact = r.lower;
  return r;
}

inline RotationEstimate rotation_bounds(const PLLifting& F, std::size_t n,
                                        std::size_t budget = kDefaultBreakpointBudget) {
  PowerCache powers(F, budget);
  return rotation_bounds(powers, n);
}

struct RationalRotation {
  Rational rho;    // p/q in lowest terms
  std::size_t q = 0;
  Integer p;
  CirclePoint witness;  // F^q(w) = w + p
};

/// For non-decreasing degree-one liftings: rho = p/q as soon as some x has
/// F^q(x) = x + p, q <= q_max.
inline std::optional<RationalRotation> exact_rational_rotation(PowerCache& powers, std::size_t q_max) {
  const PLLifting& F = powers.base();
  if (F.degree() != 1) throw Error(ErrorKind::WrongDegree, "rotation number needs degree 1");
  if (!F.non_decreasing())
    throw Error(ErrorKind::DegenerateInput, "exact rotation needs a non-decreasing lifting");
  for (std::size_t q = 1; q <= q_max; ++q) {
    const PLLifting& G = powers.power(q);
    ArcSet sol = fixed_point_set(G);
    if (sol.is_empty()) continue;
    Rational x = sol.intervals().front().lo;
    Rational d = G(x) - x;
    RationalRotation out{Rational(d / Rational(q)), q, d.get_num(), CirclePoint(x)};
    return out;
  }
  return std::nullopt;
}

enum class NoPeriodicClass { HasPeriodicPoints, TransitiveLike, DenjoyLike };

inline const char* to_string(NoPeriodicClass c) {
  switch (c) {
    case NoPeriodicClass::HasPeriodicPoints: return "HasPeriodicPoints";
    case NoPeriodicClass::TransitiveLike: return "TransitiveLike";
    case NoPeriodicClass::DenjoyLike: return "DenjoyLike";
  }
  return "?";
}

struct NoPeriodicReport {
  NoPeriodicClass kind = NoPeriodicClass::HasPeriodicPoints;
  std::vector<std::size_t> periods;  // periods <= horizon when present
  Rational cluster_measure;
  std::size_t iterates = 0;
};

struct ClassifyOptions {
  std::size_t iterates = 10'000;
  Rational delta{1, 10000};
  Rational full_measure{99, 100};
};

/// Periods <= horizon decide HasPeriodicPoints. Otherwise the orbit of 0 is
/// fattened by delta: measure >= 99/100 reads as a dense orbit, less as a
/// wandering-interval (Denjoy-type) map.
inline NoPeriodicReport classify_no_periodic_point_map(const PLLifting& F, std::size_t horizon,
                                                       const ClassifyOptions& opt = {},
                                                       std::size_t budget = kDefaultBreakpointBudget) {
  PowerCache powers(F, budget);
  NoPeriodicReport rep;
  rep.periods = period_set(powers, horizon);
  if (!rep.periods.empty()) return rep;
  auto om = omega_approx(F, CirclePoint(0), 0, opt.iterates, opt.delta);
  rep.iterates = om.tail_points.size();
  rep.cluster_measure = om.cluster.measure();
  rep.kind = rep.cluster_measure >= opt.full_measure ? NoPeriodicClass::TransitiveLike
                                                     : NoPeriodicClass::DenjoyLike;
  return rep;
}

}  // namespace cdyn
