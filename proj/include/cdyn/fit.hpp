#pragma once

// Growth classification of integer sequences by least squares in
// outward-rounded interval arithmetic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cdyn/errors.hpp"

namespace cdyn {

/// Closed interval of doubles; every operation rounds outward by one ulp.
struct Interval {
  double lo = 0, hi = 0;

  static Interval point(double x) { return {x, x}; }
  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

  friend Interval operator+(Interval a, Interval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
  friend Interval operator-(Interval a, Interval b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }
  friend Interval operator*(Interval a, Interval b) {
    double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = c[0], hi = c[0];
    for (double v : c) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {down(lo), up(hi)};
  }
  friend Interval operator/(Interval a, Interval b) {
    if (b.lo <= 0 && b.hi >= 0) throw Error(ErrorKind::PrecisionBudgetExceeded, "interval division by zero");
    return a * Interval{down(1.0 / b.hi), up(1.0 / b.lo)};
  }
  double mid() const { return 0.5 * (lo + hi); }
};

/// log with a two-ulp enclosure (libm log is accurate to within one ulp).
inline Interval interval_log(double x) {
  double v = std::log(x);
  return {Interval::down(Interval::down(v)), Interval::up(Interval::up(v))};
}

enum class GrowthVerdict { Polynomial, SuperPolynomial };

inline const char* to_string(GrowthVerdict v) {
  return v == GrowthVerdict::Polynomial ? "polynomial" : "super-polynomial";
}

struct LineFit {
  Interval slope, intercept;
  double rss = 0;  // residual sum of squares at the midpoint coefficients
};

/// Least squares y = intercept + slope * x.
inline LineFit fit_line(const std::vector<Interval>& xs, const std::vector<Interval>& ys) {
  const std::size_t n = xs.size();
  Interval sx = Interval::point(0), sy = Interval::point(0);
  for (std::size_t i = 0; i < n; ++i) {
    sx = sx + xs[i];
    sy = sy + ys[i];
  }
  Interval N = Interval::point(static_cast<double>(n));
  Interval mx = sx / N, my = sy / N;
  Interval sxx = Interval::point(0), sxy = Interval::point(0);
  for (std::size_t i = 0; i < n; ++i) {
    Interval dx = xs[i] - mx;
    sxx = sxx + dx * dx;
    sxy = sxy + dx * (ys[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ys[i].mid() - (f.intercept.mid() + f.slope.mid() * xs[i].mid());
    f.rss += r * r;
  }
  return f;
}

struct GrowthFit {
  GrowthVerdict verdict = GrowthVerdict::Polynomial;
  LineFit loglog;   // log c against log n: slope is the fitted exponent
  LineFit loglin;   // log c against n: slope is the exponential rate
  double threshold = 1.5;
};

/// Polynomial when the log-log slope is certified <= threshold and the
/// exponential model does not fit strictly better.
inline GrowthFit poly_order_fit(const std::vector<std::pair<std::size_t, std::size_t>>& data,
                                double threshold = 1.5) {
  if (data.size() < 4) throw Error(ErrorKind::DegenerateInput, "growth fit needs at least 4 points");
  std::vector<Interval> ln, n, lc;
  for (const auto& [x, c] : data) {
    if (x < 1 || c < 1) throw Error(ErrorKind::DegenerateInput, "growth fit needs positive data");
    ln.push_back(interval_log(static_cast<double>(x)));
    n.push_back(Interval::point(static_cast<double>(x)));
    lc.push_back(interval_log(static_cast<double>(c)));
  }
  GrowthFit g;
  g.threshold = threshold;
  g.loglog = fit_line(ln, lc);
  g.loglin = fit_line(n, lc);
  const double tol = 1e-9;
  bool exp_better = g.loglin.rss + tol < g.loglog.rss;
  g.verdict = g.loglog.slope.hi <= threshold && !exp_better ? GrowthVerdict::Polynomial
                                                             : GrowthVerdict::SuperPolynomial;
  return g;
}

}  // namespace cdyn
