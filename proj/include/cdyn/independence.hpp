#pragma once

// Independence sets for a pair of arcs: pattern cells, exhaustive checks,
// maximal sets, IN-pair scans and the f / f^p transfer.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdyn/circle.hpp"
#include "cdyn/lifting.hpp"

namespace cdyn {

inline constexpr std::size_t kDefaultPatternCap = 20;

class ArcPair {
 public:
  ArcPair(Arc U1, Arc U2) : u_{std::move(U1), std::move(U2)} {
    if (u_[0].is_point() || u_[1].is_point())
      throw Error(ErrorKind::DegenerateInput, "arc pair needs arcs of positive length");
  }
  /// s in {1, 2}
  const Arc& operator[](int s) const { return u_[static_cast<std::size_t>(s - 1)]; }

 private:
  std::array<Arc, 2> u_;
};

/// f^{-i}U_1 and f^{-i}U_2, computed one step at a time and cached.
class PreimageTower {
 public:
  PreimageTower(PLLifting F, const ArcPair& pair) : F_(std::move(F)), pair_(pair) {
    pre_.push_back({ArcSet::of(pair[1]), ArcSet::of(pair[2])});
  }

  const PLLifting& map() const { return F_; }
  const ArcPair& pair() const { return pair_; }

  const ArcSet& at(std::size_t i, int s) {
    while (pre_.size() <= i)
      pre_.push_back({preimage_arcset(F_, pre_.back()[0]), preimage_arcset(F_, pre_.back()[1])});
    return pre_[i][static_cast<std::size_t>(s - 1)];
  }

 private:
  PLLifting F_;
  ArcPair pair_;
  std::vector<std::array<ArcSet, 2>> pre_;
};

using Pattern = std::vector<int>;  // S(i) in {1, 2}, aligned with the index set

/// Midpoint of the lowest-start component of positive length; isolated
/// points only when nothing else is left.
inline CirclePoint witness_point(const ArcSet& cell) {
  auto comps = cell.components();
  for (const auto& a : comps)
    if (!a.is_point()) return CirclePoint(a.midpoint());
  return CirclePoint(comps.front().midpoint());
}

/// f^i(x) in U_{S(i)} for every i of J, by exact iteration.
inline bool check_witness(const PLLifting& F, const ArcPair& pair, const std::vector<std::size_t>& J,
                          const Pattern& S, const CirclePoint& x) {
  Rational cur = x.position();
  std::size_t t = 0;
  for (std::size_t k = 0; k < J.size(); ++k) {
    for (; t < J[k]; ++t) cur = F(cur);
    if (!pair[S[k]].contains(CirclePoint(cur))) return false;
  }
  return true;
}

namespace detail {

inline void check_index_set(const std::vector<std::size_t>& J, std::size_t cap) {
  if (J.size() > cap) throw BudgetError("index set larger than pattern cap");
  for (std::size_t k = 1; k < J.size(); ++k)
    if (J[k] <= J[k - 1]) throw Error(ErrorKind::DegenerateInput, "index set must be strictly increasing");
}

}  // namespace detail

/// The cell of (J, S) as an exact ArcSet.
inline ArcSet pattern_cell(PreimageTower& tw, const std::vector<std::size_t>& J, const Pattern& S) {
  if (J.size() != S.size()) throw Error(ErrorKind::DegenerateInput, "pattern length mismatch");
  ArcSet cell = ArcSet::full();
  for (std::size_t k = 0; k < J.size() && !cell.is_empty(); ++k) {
    if (S[k] != 1 && S[k] != 2) throw Error(ErrorKind::DegenerateInput, "pattern values must be 1 or 2");
    cell = intersect(cell, tw.at(J[k], S[k]));
  }
  return cell;
}

inline std::optional<CirclePoint> pattern_nonempty(PreimageTower& tw, const std::vector<std::size_t>& J,
                                                   const Pattern& S,
                                                   std::size_t cap = kDefaultPatternCap) {
  detail::check_index_set(J, cap);
  ArcSet cell = pattern_cell(tw, J, S);
  if (cell.is_empty()) return std::nullopt;
  return witness_point(cell);
}

struct IndependenceWitness {
  std::vector<std::size_t> index_set;
  std::size_t patterns_verified = 0;
  std::vector<std::pair<Pattern, CirclePoint>> samples;  // one per full pattern
};

struct IndependenceCheck {
  bool independent = false;
  IndependenceWitness witness;
  std::optional<Pattern> empty_pattern;  // first empty pattern in lexicographic order
};

/// All 2^|I| full patterns on I. Sub-pattern cells contain full-pattern
/// cells, so this decides every finite J inside I.
inline IndependenceCheck is_independence_set(PreimageTower& tw, const std::vector<std::size_t>& I,
                                             std::size_t cap = kDefaultPatternCap) {
  detail::check_index_set(I, cap);
  IndependenceCheck out;
  out.witness.index_set = I;
  Pattern S;
  auto dfs = [&](auto&& self, const ArcSet& cell) -> bool {
    if (S.size() == I.size()) {
      CirclePoint w = witness_point(cell);
      if (!check_witness(tw.map(), tw.pair(), I, S, w))
        throw Error(ErrorKind::DegenerateInput, "witness failed exact re-check");
      out.witness.samples.emplace_back(S, w);
      ++out.witness.patterns_verified;
      return true;
    }
    for (int s = 1; s <= 2; ++s) {
      S.push_back(s);
      ArcSet next = intersect(cell, tw.at(I[S.size() - 1], s));
      bool ok = !next.is_empty() && self(self, next);
      if (!ok && !out.empty_pattern) {
        if (next.is_empty()) {
          Pattern p = S;
          p.resize(I.size(), 1);
          out.empty_pattern = p;
        }
      }
      S.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  out.independent = dfs(dfs, ArcSet::full());
  if (!out.independent) out.witness.samples.clear();
  return out;
}

inline IndependenceCheck is_independence_set(const PLLifting& F, const ArcPair& pair,
                                             const std::vector<std::size_t>& I,
                                             std::size_t cap = kDefaultPatternCap) {
  PreimageTower tw(F, pair);
  return is_independence_set(tw, I, cap);
}

struct MaxIndependence {
  std::vector<std::size_t> best;  // lexicographically least among maximum sets found
  bool cap_hit = false;           // search stopped at m_cap
  IndependenceWitness witness;
};

/// Depth-first over index sets in lexicographic order, adding the smallest
/// unused index first and pruning as soon as one pattern cell is empty.
inline MaxIndependence max_independence(PreimageTower& tw, std::size_t T, std::size_t m_cap,
                                        std::size_t node_budget = 10'000'000) {
  if (m_cap < 1 || m_cap > kDefaultPatternCap) throw BudgetError("m_cap outside [1, 20]");
  MaxIndependence out;
  std::vector<std::size_t> cur;
  std::size_t nodes = 0;
  bool done = false;
  auto dfs = [&](auto&& self, const std::vector<ArcSet>& cells, std::size_t from) -> void {
    if (cur.size() > out.best.size()) out.best = cur;
    if (cur.size() >= m_cap) {
      out.cap_hit = true;
      done = true;
      return;
    }
    for (std::size_t i = from; i <= T && !done; ++i) {
      if (cur.size() + (T - i + 1) <= out.best.size()) return;
      if (++nodes > node_budget) throw BudgetError("independence search exceeded node budget");
      std::vector<ArcSet> next;
      next.reserve(cells.size() * 2);
      bool ok = true;
      for (const auto& c : cells) {
        for (int s = 1; s <= 2 && ok; ++s) {
          ArcSet x = intersect(c, tw.at(i, s));
          if (x.is_empty()) ok = false;
          else next.push_back(std::move(x));
        }
        if (!ok) break;
      }
      if (!ok) continue;
      cur.push_back(i);
      self(self, next, i + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, {ArcSet::full()}, 0);
  out.witness = is_independence_set(tw, out.best).witness;
  return out;
}

inline MaxIndependence max_independence(const PLLifting& F, const ArcPair& pair, std::size_t T,
                                        std::size_t m_cap) {
  PreimageTower tw(F, pair);
  return max_independence(tw, T, m_cap);
}

struct InPairReport {
  struct Row {
    Rational radius;
    std::size_t size;
    std::vector<std::size_t> index_set;
    bool cap_hit;
  };
  std::vector<Row> rows;
  std::size_t level = 0;  // min over radii of the largest set found
  bool consistent = false;  // every radius reached m_target
};

inline const std::vector<Rational>& default_in_radii() {
  static const std::vector<Rational> r{Rational(1, 8), Rational(1, 32), Rational(1, 128)};
  return r;
}

/// Independence around x and y at each radius of a shrinking schedule.
inline InPairReport in_pair_scan(const PLLifting& F, const CirclePoint& x, const CirclePoint& y,
                                 const std::vector<Rational>& radii, std::size_t m_target, std::size_t T,
                                 std::size_t m_cap = kDefaultPatternCap) {
  if (x == y) throw Error(ErrorKind::DegenerateInput, "IN-pairs are off the diagonal: x must differ from y");
  if (radii.empty()) throw Error(ErrorKind::DegenerateInput, "empty radius schedule");
  InPairReport rep;
  rep.level = SIZE_MAX;
  for (const auto& r : radii) {
    if (r <= 0 || r >= Rational(1, 2)) throw Error(ErrorKind::DegenerateInput, "radius outside (0, 1/2)");
    ArcPair pair(Arc(x.position() - r, 2 * r), Arc(y.position() - r, 2 * r));
    auto m = max_independence(F, pair, T, std::min(m_cap, T + 1));
    rep.rows.push_back({r, m.best.size(), m.best, m.cap_hit});
    rep.level = std::min(rep.level, m.best.size());
  }
  rep.consistent = rep.level >= m_target;
  return rep;
}

struct PowerTransformReport {
  // (a): I independent for f^p, p * I checked for f
  std::vector<std::size_t> forward_set;
  bool forward_holds = false;
  // (b): I independent for f, residue class r of size >= m mapped to (q - r) / p for f^p
  std::size_t residue = 0;
  std::vector<std::size_t> residue_class;
  std::vector<std::size_t> backward_set;
  bool backward_holds = false;
  // cell of (r + pL, S) under f equals f^{-r} of the cell of (L, S) under f^p, for every S
  bool factorization_holds = false;
  std::optional<Pattern> counterexample;
};

inline PowerTransformReport power_transform_forward(const PLLifting& F, std::size_t p, const ArcPair& pair,
                                                    const std::vector<std::size_t>& I) {
  if (p < 1) throw Error(ErrorKind::DegenerateInput, "power must be >= 1");
  PowerTransformReport rep;
  PLLifting G = power(F, p);
  if (!is_independence_set(G, pair, I).independent)
    throw Error(ErrorKind::DegenerateInput, "I is not an independence set for f^p");
  for (auto i : I) rep.forward_set.push_back(p * i);
  auto chk = is_independence_set(F, pair, rep.forward_set);
  rep.forward_holds = chk.independent;
  if (!chk.independent) rep.counterexample = chk.empty_pattern;
  return rep;
}

/// Both directions of the f / f^p transfer: (a) applied to I viewed as an
/// independence set of f^p when it is one, (b) applied to I as an
/// independence set of f with m = |I| / p.
inline PowerTransformReport power_transform_check(const PLLifting& F, std::size_t p, const ArcPair& pair,
                                                  const std::vector<std::size_t>& I) {
  if (p < 1) throw Error(ErrorKind::DegenerateInput, "power must be >= 1");
  PLLifting G = power(F, p);
  PowerTransformReport rep;
  if (is_independence_set(G, pair, I).independent) rep = power_transform_forward(F, p, pair, I);
  if (!is_independence_set(F, pair, I).independent) return rep;
  std::size_t m = I.size() / p;
  if (m == 0) return rep;
  for (std::size_t r = 0; r < p; ++r) {
    std::vector<std::size_t> Q;
    for (auto q : I)
      if (q % p == r) Q.push_back(q);
    if (Q.size() >= m) {
      Q.resize(m);
      rep.residue = r;
      rep.residue_class = Q;
      break;
    }
  }
  for (auto q : rep.residue_class) rep.backward_set.push_back((q - rep.residue) / p);
  PreimageTower tf(F, pair), tg(G, pair);
  auto chk = is_independence_set(tg, rep.backward_set);
  rep.backward_holds = chk.independent;
  if (!chk.independent) rep.counterexample = chk.empty_pattern;
  rep.factorization_holds = true;
  const std::size_t L = rep.backward_set.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
    Pattern S(L);
    for (std::size_t k = 0; k < L; ++k) S[k] = (mask >> (L - 1 - k)) & 1U ? 2 : 1;
    ArcSet lhs = pattern_cell(tf, rep.residue_class, S);
    ArcSet rhs = pattern_cell(tg, rep.backward_set, S);
    for (std::size_t k = 0; k < rep.residue; ++k) rhs = preimage_arcset(F, rhs);
    if (!(lhs == rhs)) {
      rep.factorization_holds = false;
      rep.counterexample = S;
      break;
    }
  }
  return rep;
}

}  // namespace cdyn
