#pragma once

// Finite closed covers of the circle and the exact minimal subcover count N(U).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/errors.hpp"

namespace cdyn {

/// Finite family of nonempty ArcSets whose union is the circle.
class Cover {
 public:
  explicit Cover(std::vector<ArcSet> elements) : el_(std::move(elements)) {
    if (el_.empty()) throw Error(ErrorKind::DegenerateInput, "empty cover");
    ArcSet u;
    for (const auto& e : el_) {
      if (e.is_empty() || e.measure() == 0)
        throw Error(ErrorKind::DegenerateInput, "cover elements need positive measure");
      u = unite(u, e);
    }
    if (!u.is_full()) throw Error(ErrorKind::DegenerateInput, "elements do not cover the circle");
  }

  static Cover of_arcs(const std::vector<Arc>& arcs) {
    std::vector<ArcSet> el;
    for (const auto& a : arcs) el.push_back(ArcSet::of(a));
    return Cover(std::move(el));
  }

  /// k arcs [j/k - t, (j+1)/k + t].
  static Cover thickened_equal(std::size_t k, const Rational& thickness) {
    std::vector<Arc> arcs;
    for (std::size_t j = 0; j < k; ++j)
      arcs.push_back(Arc::from_lifted(ratio(j, k) - thickness, ratio(j + 1, k) + thickness));
    return of_arcs(arcs);
  }
  static Cover halves(const Rational& thickness = Rational(1, 100)) { return thickened_equal(2, thickness); }
  static Cover quarters(const Rational& thickness = Rational(1, 100)) { return thickened_equal(4, thickness); }

  const std::vector<ArcSet>& elements() const { return el_; }
  std::size_t size() const { return el_.size(); }

 private:
  std::vector<ArcSet> el_;
};

struct SubcoverOptions {
  std::size_t kernel_cap = 40;      // elements left after exact reductions
  std::size_t node_budget = 50'000'000;
};

namespace detail {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0), n_(n) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w != 0; });
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
    return r;
  }
  std::size_t size() const { return n_; }
  template <class Fn>
  void for_each(Fn fn) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        fn(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w)));
        w &= w - 1;
      }
    }
  }
  friend bool operator==(const Bits& a, const Bits& b) { return a.w_ == b.w_; }
  friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

 private:
  std::vector<std::uint64_t> w_;
  std::size_t n_ = 0;
};

// Circular greedy for covers by single arcs: some arc of an optimal cover
// holds the point 0; fix it, then extend by the farthest-reaching arc.
// Exact for closed arcs.
inline std::size_t single_arc_cover(const std::vector<Arc>& arcs) {
  for (const auto& a : arcs)
    if (a.is_full()) return 1;
  std::size_t best = arcs.size() + 1;
  for (const auto& first : arcs) {
    if (!first.contains(CirclePoint(0))) continue;
    Rational end = first.lifted_end();
    Rational target = first.start() + 1;
    std::size_t count = 1;
    while (end < target && count < best) {
      Rational reach = end;
      for (const auto& a : arcs) {
        for (int lift = 0; lift <= 1; ++lift) {
          Rational s = a.start() + lift;
          if (s <= end && s + a.length() > reach) reach = s + a.length();
        }
      }
      if (reach == end) { count = arcs.size() + 1; break; }
      end = reach;
      ++count;
    }
    if (end >= target && count < best) best = count;
  }
  if (best > arcs.size()) throw Error(ErrorKind::DegenerateInput, "arcs do not cover the circle");
  return best;
}

class SubcoverSolver {
 public:
  SubcoverSolver(std::vector<Bits> sets, std::size_t universe, const SubcoverOptions& opt)
      : sets_(std::move(sets)), universe_(universe), opt_(opt) {}

  /// [lower, upper] on the optimum; equal when the search finished.
  std::pair<std::size_t, std::size_t> bounds() {
    Bits uncovered(universe_);
    for (std::size_t i = 0; i < universe_; ++i) uncovered.set(i);
    std::size_t forced = reduce(uncovered);
    if (!uncovered.any()) return {forced, forced};
    std::size_t lo = std::max<std::size_t>(lower_bound(uncovered), 1);
    best_ = greedy(uncovered);
    if (sets_.size() <= opt_.kernel_cap) {
      try {
        search(uncovered, 0);
        return {forced + best_, forced + best_};
      } catch (const BudgetError&) {
      }
    }
    return {forced + lo, forced + best_};
  }

  std::size_t solve() {
    Bits uncovered(universe_);
    for (std::size_t i = 0; i < universe_; ++i) uncovered.set(i);
    std::size_t forced = reduce(uncovered);
    if (!uncovered.any()) return forced;
    if (sets_.size() > opt_.kernel_cap)
      throw BudgetError("set-cover kernel has " + std::to_string(sets_.size()) + " elements");
    best_ = greedy(uncovered);
    search(uncovered, 0);
    return forced + best_;
  }

 private:
  // Forced picks, dominated elements and dominated segments; returns the
  // number of forced elements taken.
  std::size_t reduce(Bits& uncovered) {
    std::size_t forced = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& s : sets_) s &= uncovered;
      sets_.erase(std::remove_if(sets_.begin(), sets_.end(), [](const Bits& b) { return !b.any(); }),
                  sets_.end());
      std::sort(sets_.begin(), sets_.end(),
                [](const Bits& a, const Bits& b) { return a.count() > b.count(); });
      std::vector<Bits> kept;
      for (const auto& s : sets_) {
        bool dom = std::any_of(kept.begin(), kept.end(), [&](const Bits& k) { return s.subset_of(k); });
        if (!dom) kept.push_back(s);
      }
      if (kept.size() != sets_.size()) changed = true;
      sets_ = std::move(kept);
      if (!uncovered.any()) break;

      // element sets per segment
      std::vector<std::size_t> segs;
      uncovered.for_each([&](std::size_t i) { segs.push_back(i); });
      std::vector<Bits> who(segs.size(), Bits(sets_.size()));
      std::vector<std::size_t> pos(universe_, 0);
      for (std::size_t k = 0; k < segs.size(); ++k) pos[segs[k]] = k;
      for (std::size_t e = 0; e < sets_.size(); ++e) sets_[e].for_each([&](std::size_t i) { who[pos[i]].set(e); });
      // all forced picks of this round in one pass
      for (std::size_t k = 0; k < segs.size(); ++k) {
        if (!who[k].any()) throw Error(ErrorKind::DegenerateInput, "segment not covered");
        if (who[k].count() != 1 || !uncovered.test(segs[k])) continue;
        std::size_t e = 0;
        who[k].for_each([&](std::size_t i) { e = i; });
        uncovered = uncovered.minus(sets_[e]);
        ++forced;
        changed = true;
      }
      if (changed) continue;
      // segment t dominates s when every element covering t covers s: drop s
      std::map<Bits, std::size_t> uniq;
      for (std::size_t k = 0; k < segs.size(); ++k) uniq.emplace(who[k], segs[k]);
      std::vector<std::pair<Bits, std::size_t>> rows(uniq.begin(), uniq.end());
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) { return a.first.count() < b.first.count(); });
      Bits keep(universe_);
      std::vector<const Bits*> kept_rows;
      for (const auto& [w, s] : rows) {
        bool dom = std::any_of(kept_rows.begin(), kept_rows.end(), [&](const Bits* k) { return k->subset_of(w); });
        if (!dom) {
          kept_rows.push_back(&w);
          keep.set(s);
        }
      }
      if (keep.count() != segs.size()) {
        uncovered &= keep;
        changed = true;
      }
    }
    return forced;
  }

  std::size_t greedy(Bits uncovered) const {
    std::size_t n = 0;
    while (uncovered.any()) {
      std::size_t bi = 0, bc = 0;
      for (std::size_t e = 0; e < sets_.size(); ++e) {
        Bits t = sets_[e];
        t &= uncovered;
        std::size_t c = t.count();
        if (c > bc) { bc = c; bi = e; }
      }
      uncovered = uncovered.minus(sets_[bi]);
      ++n;
    }
    return n;
  }

  // Segments with pairwise disjoint covering families each need their own element.
  std::size_t lower_bound(const Bits& uncovered) const {
    std::size_t lb = 0;
    Bits used(sets_.size());
    uncovered.for_each([&](std::size_t i) {
      Bits w(sets_.size());
      for (std::size_t e = 0; e < sets_.size(); ++e)
        if (sets_[e].test(i)) w.set(e);
      if (!w.intersects(used)) {
        ++lb;
        w.for_each([&](std::size_t e) { used.set(e); });
      }
    });
    return lb;
  }

  void search(const Bits& uncovered, std::size_t depth) {
    if (++nodes_ > opt_.node_budget) throw BudgetError("set-cover search exceeded node budget");
    if (!uncovered.any()) {
      best_ = std::min(best_, depth);
      return;
    }
    if (depth + lower_bound(uncovered) >= best_) return;
    // branch on the uncovered segment with the fewest covering elements
    std::size_t pick = 0, fewest = SIZE_MAX;
    uncovered.for_each([&](std::size_t i) {
      std::size_t c = 0;
      for (const auto& s : sets_) c += s.test(i);
      if (c < fewest) { fewest = c; pick = i; }
    });
    for (const auto& s : sets_)
      if (s.test(pick)) search(uncovered.minus(s), depth + 1);
  }

  std::vector<Bits> sets_;
  std::size_t universe_;
  SubcoverOptions opt_;
  std::size_t best_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace detail

namespace detail {

// Elements as bitsets over the elementary segments cut by all endpoints.
inline SubcoverSolver make_solver(const std::vector<const ArcSet*>& el, const SubcoverOptions& opt) {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto* e : el)
    for (const auto& iv : e->intervals()) {
      cuts.push_back(iv.lo);
      cuts.push_back(iv.hi);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::size_t nseg = cuts.size() - 1;
  std::vector<Bits> sets(el.size(), Bits(nseg));
  for (std::size_t e = 0; e < el.size(); ++e) {
    std::size_t k = 0;
    for (const auto& iv : el[e]->intervals()) {
      if (iv.lo == iv.hi) continue;
      while (cuts[k] < iv.lo) ++k;
      for (std::size_t s = k; s < nseg && cuts[s + 1] <= iv.hi; ++s) sets[e].set(s);
    }
  }
  return SubcoverSolver(std::move(sets), nseg, opt);
}

// Positive-measure elements; nullopt when one of them is the whole circle.
inline std::optional<std::vector<const ArcSet*>> useful_elements(const std::vector<ArcSet>& elements) {
  std::vector<const ArcSet*> el;
  for (const auto& e : elements) {
    if (e.is_full()) return std::nullopt;
    if (e.measure() > 0) el.push_back(&e);
  }
  if (el.empty()) throw Error(ErrorKind::DegenerateInput, "elements do not cover the circle");
  return el;
}

inline std::optional<std::size_t> single_arc_fast_path(const std::vector<const ArcSet*>& el) {
  bool single = std::all_of(el.begin(), el.end(), [](const ArcSet* e) {
    return e->components().size() == 1;
  });
  if (!single) return std::nullopt;
  std::vector<Arc> arcs;
  for (const auto* e : el) arcs.push_back(e->components().front());
  return single_arc_cover(arcs);
}

}  // namespace detail

/// Exact minimal number of elements whose union is the circle. Elements of
/// measure zero never help and are ignored. Single-arc families go through
/// the circular greedy; general families through elementary segments and
/// branch-and-bound after exact reductions.
inline std::size_t min_subcover_count(const std::vector<ArcSet>& elements,
                                      const SubcoverOptions& opt = {}) {
  auto el = detail::useful_elements(elements);
  if (!el) return 1;
  if (auto fast = detail::single_arc_fast_path(*el)) return *fast;
  return detail::make_solver(*el, opt).solve();
}

/// Like min_subcover_count, but degrades to [lower, upper] instead of
/// throwing when the kernel is too large for the exact search.
struct SubcoverBounds {
  std::size_t lower = 0, upper = 0;
  bool exact() const { return lower == upper; }
};

inline SubcoverBounds subcover_bounds(const std::vector<ArcSet>& elements, const SubcoverOptions& opt = {}) {
  auto el = detail::useful_elements(elements);
  if (!el) return {1, 1};
  if (auto fast = detail::single_arc_fast_path(*el)) return {*fast, *fast};
  auto [lo, hi] = detail::make_solver(*el, opt).bounds();
  return {lo, hi};
}

inline std::size_t min_subcover_count(const Cover& c, const SubcoverOptions& opt = {}) {
  return min_subcover_count(c.elements(), opt);
}

}  // namespace cdyn
