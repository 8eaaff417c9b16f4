#pragma once

// Cover joins N(f^{-t_1}U v ... v f^{-t_n}U), maximal pattern complexity p*,
// (A, n, eps)-separated and spanning numbers, and entropy growth.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/cover.hpp"
#include "cdyn/fit.hpp"
#include "cdyn/lifting.hpp"

namespace cdyn {

inline constexpr std::size_t kDefaultTupleCap = 1'000'000;

namespace detail {

inline bool arcset_less(const ArcSet& a, const ArcSet& b) {
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](const ArcSet::Interval& p, const ArcSet::Interval& q) {
                                        return p.lo < q.lo || (p.lo == q.lo && p.hi < q.hi);
                                      });
}

inline void dedupe_cells(std::vector<ArcSet>& cells) {
  std::sort(cells.begin(), cells.end(), arcset_less);
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 40)) return r;
  }
  return r;
}

}  // namespace detail

/// Joins of preimages of a fixed cover under one map. Preimages f^{-t}U are
/// built one step at a time and cached.
class JoinEngine {
 public:
  JoinEngine(PLLifting F, Cover U, SubcoverOptions opt = {}, std::size_t cell_cap = 1'000'000)
      : F_(std::move(F)), U_(std::move(U)), opt_(opt), cell_cap_(cell_cap) {
    pre_.push_back(U_.elements());
  }

  const PLLifting& map() const { return F_; }
  const Cover& cover() const { return U_; }

  const std::vector<ArcSet>& preimages(std::size_t t) {
    while (pre_.size() <= t) {
      std::vector<ArcSet> next;
      for (const auto& e : pre_.back()) next.push_back(preimage_arcset(F_, e));
      pre_.push_back(std::move(next));
    }
    return pre_[t];
  }

  /// cells v f^{-t}U, keeping only elements of positive measure.
  std::vector<ArcSet> refine(const std::vector<ArcSet>& cells, std::size_t t) {
    const auto& p = preimages(t);
    std::vector<ArcSet> out;
    for (const auto& c : cells)
      for (const auto& e : p) {
        ArcSet x = intersect(c, e);
        if (x.measure() > 0) out.push_back(std::move(x));
      }
    detail::dedupe_cells(out);
    if (out.size() > cell_cap_) throw BudgetError("join has too many elements");
    return out;
  }

  std::vector<ArcSet> cells(std::vector<std::size_t> times) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<ArcSet> c{ArcSet::full()};
    for (auto t : times) c = refine(c, t);
    return c;
  }

  std::size_t count(const std::vector<ArcSet>& cells) const { return min_subcover_count(cells, opt_); }
  std::size_t join_count(const std::vector<std::size_t>& times) { return count(cells(times)); }
  SubcoverBounds join_bounds(const std::vector<std::size_t>& times) { return subcover_bounds(cells(times), opt_); }

 private:
  PLLifting F_;
  Cover U_;
  SubcoverOptions opt_;
  std::size_t cell_cap_;
  std::vector<std::vector<ArcSet>> pre_;
};

inline std::size_t join_count(const PLLifting& F, const Cover& U, const std::vector<std::size_t>& times) {
  JoinEngine e(F, U);
  return e.join_count(times);
}

/// Rational approximation (denominator 1000) of a double, for reports.
inline Rational approx_rational(double x) {
  return Rational(static_cast<long>(std::llround(x * 1000)), 1000);
}

struct GrowthReport {
  std::vector<std::pair<std::size_t, std::size_t>> values;  // (n, count)
  std::optional<GrowthFit> fit;  // present with at least 4 values
  Rational fitted_exponent;
  bool lower_bounds = false;  // values are certified lower bounds of a supremum

  bool monotone() const {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i].second < values[i - 1].second) return false;
    return true;
  }

  void finish() {
    if (values.size() >= 4) {
      fit = poly_order_fit(values);
      fitted_exponent = approx_rational(fit->loglog.slope.mid());
    }
  }
};

struct PatternResult {
  std::size_t value = 0;  // lower bound of p*(n): times capped at T
  std::vector<std::size_t> argmax;  // lexicographically smallest maximizing sorted tuple
};

/// max N over sorted tuples 0 <= t_1 <= ... <= t_n <= T. The join depends
/// only on the set of distinct times and only grows with that set, so the
/// maximum is attained on sets of size min(n, T+1).
inline PatternResult pattern_complexity(JoinEngine& eng, std::size_t n, std::size_t T,
                                        std::size_t tuple_cap = kDefaultTupleCap) {
  if (n < 1) throw Error(ErrorKind::DegenerateInput, "n must be >= 1");
  if (T > 62) throw BudgetError("time cap too large");
  if (detail::binomial(T + n, n) > tuple_cap) throw BudgetError("tuple count exceeds cap");
  const std::size_t k = std::min(n, T + 1);
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::vector<std::vector<ArcSet>> stack{{ArcSet::full()}};
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == k) {
      best = std::max(best, eng.count(stack.back()));
      return;
    }
    for (std::size_t t = from; t + (k - chosen.size()) <= T + 1; ++t) {
      chosen.push_back(t);
      stack.push_back(eng.refine(stack.back(), t));
      self(self, t + 1);
      stack.pop_back();
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);

  std::map<std::uint64_t, std::size_t> cache;
  auto value_of = [&](const std::vector<std::size_t>& tuple) {
    std::uint64_t mask = 0;
    for (auto t : tuple) mask |= std::uint64_t{1} << t;
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    std::size_t v = eng.join_count(tuple);
    cache.emplace(mask, v);
    return v;
  };
  std::vector<std::size_t> tuple(n, 0);
  for (;;) {
    if (value_of(tuple) == best) return {best, tuple};
    // next non-decreasing tuple in lexicographic order
    std::size_t i = n;
    while (i > 0 && tuple[i - 1] == T) --i;
    if (i == 0) break;
    std::size_t v = tuple[i - 1] + 1;
    for (std::size_t j = i - 1; j < n; ++j) tuple[j] = v;
  }
  throw Error(ErrorKind::DegenerateInput, "maximizing tuple not found");
}

inline GrowthReport pattern_growth(JoinEngine& eng, std::size_t n_max, std::size_t T,
                                   std::size_t tuple_cap = kDefaultTupleCap) {
  GrowthReport rep;
  rep.lower_bounds = true;
  for (std::size_t n = 1; n <= n_max; ++n)
    rep.values.emplace_back(n, pattern_complexity(eng, n, T, tuple_cap).value);
  rep.finish();
  return rep;
}

/// N(f^{-1}U v ... v f^{-n}U) for n = 1..n_max, with log(count)/n.
struct EntropyReport {
  GrowthReport growth;
  std::vector<double> rates;
};

inline EntropyReport entropy_growth(JoinEngine& eng, std::size_t n_max) {
  EntropyReport rep;
  std::vector<ArcSet> cells{ArcSet::full()};
  for (std::size_t n = 1; n <= n_max; ++n) {
    cells = eng.refine(cells, n);
    std::size_t c = eng.count(cells);
    rep.growth.values.emplace_back(n, c);
    rep.rates.push_back(std::log(static_cast<double>(c)) / static_cast<double>(n));
  }
  rep.growth.finish();
  return rep;
}

namespace detail {

// Maximum clique with greedy-colouring bounds.
class MaxClique {
 public:
  MaxClique(std::vector<Bits> adj, std::size_t node_budget) : adj_(std::move(adj)), budget_(node_budget) {}

  std::vector<std::size_t> solve() {
    const std::size_t N = adj_.size();
    std::vector<std::size_t> order(N);
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return adj_[a].count() > adj_[b].count(); });
    std::vector<std::size_t> cur;
    expand(cur, order);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(std::vector<std::size_t>& cur, std::vector<std::size_t> cand) {
    if (++nodes_ > budget_) throw BudgetError("clique search exceeded node budget");
    // colour classes in candidate order; colour bounds clique size within suffixes
    std::vector<std::size_t> ordered, colour;
    std::vector<std::vector<std::size_t>> classes;
    for (auto v : cand) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool ok = std::none_of(classes[c].begin(), classes[c].end(),
                               [&](std::size_t u) { return adj_[v].test(u); });
        if (ok) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (auto v : classes[c]) {
        ordered.push_back(v);
        colour.push_back(c + 1);
      }
    for (std::size_t i = ordered.size(); i-- > 0;) {
      if (cur.size() + colour[i] <= best_.size()) return;
      std::size_t v = ordered[i];
      cur.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < i; ++j)
        if (adj_[v].test(ordered[j])) next.push_back(ordered[j]);
      if (next.empty()) {
        if (cur.size() > best_.size()) best_ = cur;
      } else {
        expand(cur, next);
      }
      cur.pop_back();
    }
  }

  std::vector<Bits> adj_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> best_;
};

inline void check_sequence(const std::vector<std::size_t>& A, std::size_t n) {
  if (A.size() < n || n < 1) throw Error(ErrorKind::DegenerateInput, "sequence shorter than n");
  for (std::size_t i = 1; i < A.size(); ++i)
    if (A[i] <= A[i - 1]) throw Error(ErrorKind::DegenerateInput, "sequence must be strictly increasing");
}

}  // namespace detail

struct SeparatedResult {
  std::size_t value = 0;
  std::vector<CirclePoint> points;
  std::size_t candidates = 0;
};

struct SeparatedOptions {
  std::size_t candidate_cap = 4096;
  std::size_t node_budget = 20'000'000;
};

/// Largest (A, n, eps)-separated set among the breakpoints of F^{a_i} and the
/// delta-grid: a maximum clique of the exact separation graph.
inline SeparatedResult separated_number(PowerCache& powers, const std::vector<std::size_t>& A,
                                        std::size_t n, const Rational& eps, const Rational& delta,
                                        const SeparatedOptions& opt = {}) {
  detail::check_sequence(A, n);
  if (eps <= 0 || delta <= 0) throw Error(ErrorKind::DegenerateInput, "eps and delta must be positive");
  std::vector<Rational> cand;
  for (std::size_t i = 0; i < n; ++i)
    for (auto& x : breakpoint_positions(powers.power(A[i]))) cand.push_back(x);
  for (Rational x = 0; x < 1; x += delta) {
    cand.push_back(x);
    if (cand.size() > 4 * opt.candidate_cap) break;
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (cand.size() > opt.candidate_cap) throw BudgetError("too many separated-set candidates");
  const std::size_t N = cand.size();
  std::vector<std::vector<CirclePoint>> pos(N);
  for (std::size_t c = 0; c < N; ++c)
    for (std::size_t i = 0; i < n; ++i) pos[c].emplace_back(powers.power(A[i])(cand[c]));
  std::vector<detail::Bits> adj(N, detail::Bits(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b)
      for (std::size_t i = 0; i < n; ++i)
        if (circle_metric(pos[a][i], pos[b][i]) >= eps) {
          adj[a].set(b);
          adj[b].set(a);
          break;
        }
  detail::MaxClique mc(std::move(adj), opt.node_budget);
  SeparatedResult r;
  r.candidates = N;
  for (auto v : mc.solve()) r.points.emplace_back(cand[v]);
  r.value = r.points.size();
  return r;
}

/// Exact re-check that the points form an (A, n, eps)-separated set.
inline bool is_separated(PowerCache& powers, const std::vector<std::size_t>& A, std::size_t n,
                         const Rational& eps, const std::vector<CirclePoint>& pts) {
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      bool sep = false;
      for (std::size_t i = 0; i < n && !sep; ++i)
        sep = circle_metric(CirclePoint(powers.power(A[i])(pts[a].position())),
                            CirclePoint(powers.power(A[i])(pts[b].position()))) >= eps;
      if (!sep) return false;
    }
  return true;
}

/// n * (floor(1/eps) + 1): the separated-set bound for orientation-preserving
/// homeomorphisms.
inline std::size_t homeomorphism_separated_bound(std::size_t n, const Rational& eps) {
  return n * (static_cast<std::size_t>(floor_int(Rational(1 / eps)).get_ui()) + 1);
}

struct SstarReport {
  GrowthReport growth;
  std::vector<std::vector<std::size_t>> argmax;  // maximizing A per n
  std::vector<std::size_t> homeomorphism_bound;  // n * (floor(1/eps) + 1)
  bool bound_holds = true;
};

/// s*(n, eps) restricted to A inside {0..T}: max of separated_number over all
/// strictly increasing A of length n. Sequences are split across `threads`
/// workers; the reduction keeps the first maximizer, so the result does not
/// depend on the worker count.
inline SstarReport sstar_bounded(const PLLifting& F, std::size_t n_max, const Rational& eps,
                                 std::size_t T, const Rational& delta, std::size_t threads = 1,
                                 std::size_t budget = kDefaultBreakpointBudget) {
  if (T + 1 < n_max) throw Error(ErrorKind::DegenerateInput, "T must be >= n - 1");
  PowerCache powers(F, budget);
  for (std::size_t t = 0; t <= T; ++t) powers.power(t);
  SstarReport rep;
  rep.growth.lower_bounds = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::vector<std::size_t>> seqs;
    std::vector<std::size_t> cur;
    auto gen = [&](auto&& self, std::size_t from) -> void {
      if (cur.size() == n) { seqs.push_back(cur); return; }
      for (std::size_t t = from; t + (n - cur.size()) <= T + 1; ++t) {
        cur.push_back(t);
        self(self, t + 1);
        cur.pop_back();
      }
    };
    gen(gen, 0);
    if (seqs.size() > kDefaultTupleCap) throw BudgetError("sequence count exceeds cap");
    std::vector<std::size_t> vals(seqs.size(), 0);
    std::size_t W = std::max<std::size_t>(1, std::min(threads, seqs.size()));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(W);
    for (std::size_t w = 0; w < W; ++w) {
      auto job = [&, w] {
        try {
          PowerCache local = powers;
          for (std::size_t s = w; s < seqs.size(); s += W)
            vals[s] = separated_number(local, seqs[s], n, eps, delta).value;
        } catch (...) {
          errs[w] = std::current_exception();
        }
      };
      if (W == 1) job(); else pool.emplace_back(job);
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    std::size_t bi = 0;
    for (std::size_t s = 1; s < seqs.size(); ++s)
      if (vals[s] > vals[bi]) bi = s;
    rep.growth.values.emplace_back(n, vals[bi]);
    rep.argmax.push_back(seqs[bi]);
    std::size_t bound = homeomorphism_separated_bound(n, eps);
    rep.homeomorphism_bound.push_back(bound);
    if (vals[bi] > bound) rep.bound_holds = false;
  }
  rep.growth.finish();
  return rep;
}

struct SpanningResult {
  std::size_t value = 0;  // size of a verified spanning set: upper bound of r_A(n, eps)
  std::vector<CirclePoint> points;
  std::size_t cells = 0;
  bool verified = false;
  // N(join of a cover with Lebesgue number 2 eps) <= r_A(n, eps) <= value
  SubcoverBounds lebesgue_join;
  // separated lower bound <= s_A(n, eps) <= N(join of a cover by arcs shorter than eps)
  std::size_t separated = 0;
  SubcoverBounds fine_join;
  bool lower_sandwich_holds = false;
  bool upper_sandwich_holds = false;
};

namespace detail {

// Largest distance from p to a point of the arc.
inline Rational max_distance_to_arc(const CirclePoint& p, const Arc& a) {
  CirclePoint antipode(p.position() + Rational(1, 2));
  if (a.contains(antipode)) return Rational(1, 2);
  Rational d0 = circle_metric(p, CirclePoint(a.start()));
  Rational d1 = circle_metric(p, CirclePoint(a.lifted_end()));
  return d0 > d1 ? d0 : d1;
}

inline SubcoverBounds join_bounds_at(const PLLifting& F, const Cover& U, const std::vector<std::size_t>& A,
                                     std::size_t n) {
  JoinEngine e(F, U);
  return e.join_bounds(std::vector<std::size_t>(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(n)));
}

}  // namespace detail

/// Spanning set built over the exact join partition of the arcs
/// [j/m, (j+1)/m], m = ceil(2/eps): one candidate per cell (its first
/// component's midpoint), then a greedy choice of candidates until every cell
/// lies inside the eps-balls of one chosen point at every time.
inline SpanningResult spanning_number(PowerCache& powers, const std::vector<std::size_t>& A,
                                      std::size_t n, const Rational& eps, const Rational& delta) {
  detail::check_sequence(A, n);
  if (eps <= 0) throw Error(ErrorKind::DegenerateInput, "eps must be positive");
  const PLLifting& F = powers.base();
  std::size_t m = static_cast<std::size_t>(ceil_int(Rational(2 / eps)).get_ui());
  std::vector<Arc> parts;
  for (std::size_t j = 0; j < m; ++j) parts.emplace_back(ratio(j, m), ratio(1, m));

  struct Cell {
    ArcSet set;
    std::vector<std::size_t> label;
  };
  std::vector<Cell> cells{{ArcSet::full(), {}}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ArcSet> pre;
    for (const auto& p : parts) pre.push_back(preimage_arcset(powers.power(A[i]), ArcSet::of(p)));
    std::vector<Cell> next;
    for (const auto& c : cells)
      for (std::size_t j = 0; j < m; ++j) {
        ArcSet x = intersect(c.set, pre[j]);
        if (x.measure() == 0) continue;
        auto lab = c.label;
        lab.push_back(j);
        next.push_back({std::move(x), std::move(lab)});
      }
    if (next.size() > kDefaultTupleCap) throw BudgetError("spanning partition too large");
    cells = std::move(next);
  }
  std::vector<CirclePoint> cand;
  for (const auto& c : cells) cand.emplace_back(c.set.components().front().midpoint());
  std::vector<std::vector<CirclePoint>> pos(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) pos[k].emplace_back(powers.power(A[i])(cand[k].position()));
  auto spans = [&](std::size_t k, const Cell& c) {
    for (std::size_t i = 0; i < n; ++i)
      if (detail::max_distance_to_arc(pos[k][i], parts[c.label[i]]) >= eps) return false;
    return true;
  };
  std::vector<detail::Bits> cov(cand.size(), detail::Bits(cells.size()));
  for (std::size_t k = 0; k < cand.size(); ++k)
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (spans(k, cells[c])) cov[k].set(c);
  detail::Bits left(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) left.set(c);
  SpanningResult r;
  r.cells = cells.size();
  while (left.any()) {
    std::size_t bk = 0, bc = 0;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      detail::Bits t = cov[k];
      t &= left;
      if (t.count() > bc) { bc = t.count(); bk = k; }
    }
    if (bc == 0) break;
    left = left.minus(cov[bk]);
    r.points.push_back(cand[bk]);
  }
  r.verified = !left.any();
  r.value = r.points.size();
  if (!r.verified) throw Error(ErrorKind::DegenerateInput, "spanning construction left a cell unspanned");

  std::size_t m1 = static_cast<std::size_t>(ceil_int(Rational(1 / eps)).get_ui());
  Rational sigma(1, m1);
  std::vector<Arc> leb;
  for (std::size_t k = 0; k < m1; ++k)
    leb.push_back(Arc::from_lifted(Rational(k) * sigma, Rational(k) * sigma + sigma + 2 * eps));
  r.lebesgue_join = detail::join_bounds_at(F, Cover::of_arcs(leb), A, n);
  std::size_t m2 = static_cast<std::size_t>(floor_int(Rational(1 / eps)).get_ui()) + 1;
  std::vector<Arc> fine;
  for (std::size_t k = 0; k < m2; ++k) fine.emplace_back(ratio(k, m2), ratio(1, m2));
  r.fine_join = detail::join_bounds_at(F, Cover::of_arcs(fine), A, n);
  r.separated = separated_number(powers, A, n, eps, delta).value;
  // each direction is certified by the side of the bounds it needs
  r.lower_sandwich_holds = r.lebesgue_join.upper <= r.value;
  r.upper_sandwich_holds = r.separated <= r.fine_join.lower;
  return r;
}

}  // namespace cdyn
