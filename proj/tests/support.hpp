#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.
// Nothing here calls the library routine it is used to check.

#include "scatterlab/closure.hpp"
#include "scatterlab/cut_space.hpp"
#include "scatterlab/order_term.hpp"
#include "scatterlab/words.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace scatterlab::oracle {

// ---------------------------------------------------------------------------
// Order terms

// Canonical scattered terms of depth at most 3 (atoms have depth 1), deduplicated
// by canonical form.
inline std::vector<OrderTerm> term_corpus() {
  using T = OrderTerm;
  const std::vector<T> d1{T::one(), T::finite(2), T::finite(3)};
  std::vector<T> d2;
  for (const auto& a : d1) {
    d2.push_back(T::omega(a));
    d2.push_back(T::omega_star(a));
  }
  std::vector<T> candidates = d1;
  candidates.insert(candidates.end(), d2.begin(), d2.end());
  for (const auto& x : d2) {
    candidates.push_back(T::omega(x));
    candidates.push_back(T::omega_star(x));
  }
  std::vector<T> small = d1;
  small.insert(small.end(), d2.begin(), d2.end());
  for (const auto& a : small) {
    for (const auto& b : small) {
      candidates.push_back(T::sum({a, b}));
      candidates.push_back(T::sum({a, b, T::one()}));
    }
  }
  std::map<std::string, T> seen;
  for (const auto& t : candidates) {
    auto c = canonicalize(t);
    if (is_empty(c) || term_depth(c) > 3) continue;
    seen.emplace(to_string(c), c);
  }
  std::vector<T> out;
  for (auto& [_, t] : seen) out.push_back(t);
  return out;
}

// Random terms, not canonicalized, possibly containing Zero (and Eta when allowed).
inline OrderTerm random_term(std::mt19937& rng, int depth, bool allow_eta = false) {
  using T = OrderTerm;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 7);
  switch (pick(rng)) {
    case 0: return T::zero();
    case 1: return T::one();
    case 2: return T::finite(std::uniform_int_distribution<int>(2, 4)(rng));
    case 3: return allow_eta && rng() % 5 == 0 ? T::eta() : T::one();
    case 4: return T::omega(random_term(rng, depth - 1, allow_eta));
    case 5: return T::omega_star(random_term(rng, depth - 1, allow_eta));
    default: {
      const int n = std::uniform_int_distribution<int>(2, 3)(rng);
      std::vector<T> parts;
      for (int i = 0; i < n; ++i) parts.push_back(random_term(rng, depth - 1, allow_eta));
      return T::sum(std::move(parts));
    }
  }
}

// ---------------------------------------------------------------------------
// Geometric oracle for embedded sets
//
// Points present at copy depth d are judged against depths 2d+2 and 4d+4, where the
// true neighbours of every depth-d point already appear. A point is a left limit when
// its distance to the nearest point on its left still shrinks between the two finer
// depths, and likewise on the right. Only coordinates are used, never layout flags.

struct GeometricPoint {
  Rational coord;
  bool left_limit = false;
  bool right_limit = false;
  std::optional<Rational> left;   // nearest left neighbour at depth 2d+2
  std::optional<Rational> right;
};

inline std::set<Rational> coordinates(const EmbeddedSet& set, unsigned depth) {
  std::set<Rational> out;
  for (const auto& p : set.points_at_depth(depth)) out.insert(p.coord);
  return out;
}

inline std::vector<GeometricPoint> geometric_flags(const EmbeddedSet& set, unsigned depth) {
  const auto base = coordinates(set, depth);
  const auto fine = coordinates(set, 2 * depth + 2);
  const auto finer = coordinates(set, 4 * depth + 4);
  auto left_of = [](const std::set<Rational>& s, const Rational& x) -> std::optional<Rational> {
    auto it = s.find(x);
    if (it == s.begin()) return std::nullopt;
    return *std::prev(it);
  };
  auto right_of = [](const std::set<Rational>& s, const Rational& x) -> std::optional<Rational> {
    auto it = std::next(s.find(x));
    if (it == s.end()) return std::nullopt;
    return *it;
  };
  std::vector<GeometricPoint> out;
  for (const auto& x : base) {
    GeometricPoint p{x};
    p.left = left_of(fine, x);
    p.right = right_of(fine, x);
    auto l2 = left_of(finer, x);
    auto r2 = right_of(finer, x);
    p.left_limit = p.left && *l2 > *p.left;
    p.right_limit = p.right && *r2 < *p.right;
    out.push_back(std::move(p));
  }
  return out;
}

// Local type of a point x of L: whether x has an immediate predecessor and an
// immediate successor inside L.
struct LocalType {
  bool pred = false;
  bool succ = false;
  bool operator==(const LocalType&) const = default;
};

// Local types of L's points in increasing order, read off the coordinates of
// 1 + L + 1 so that L may lack endpoints.
inline std::vector<LocalType> enumerate_local_types(const OrderTerm& l, unsigned depth) {
  const auto framed = embed(OrderTerm::sum({OrderTerm::one(), l, OrderTerm::one()}));
  const auto lo = *framed.min(), hi = *framed.max();
  std::vector<LocalType> out;
  for (const auto& p : geometric_flags(framed, depth)) {
    if (p.coord == lo || p.coord == hi) continue;
    out.push_back({!p.left_limit && *p.left != lo, !p.right_limit && *p.right != hi});
  }
  return out;
}

// Local type of the element of L sitting in a gap (lo, hi) of K = cuts(L): it has a
// predecessor iff the lower cut is not a limit from the left and is not min K.
inline std::vector<LocalType> gap_local_types(const EmbeddedSet& k, const GapList& gs) {
  unsigned coarse = 1;
  for (const auto& g : gs) coarse = std::max(coarse, g.level);
  std::map<Rational, GeometricPoint> at;
  for (auto& p : geometric_flags(k, coarse)) at.emplace(p.coord, p);
  GapList sorted = gs;
  std::sort(sorted.begin(), sorted.end(), [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  std::vector<LocalType> out;
  for (const auto& g : sorted) {
    const auto& lo = at.at(g.lo);
    const auto& hi = at.at(g.hi);
    out.push_back({g.lo != *k.min() && !lo.left_limit, g.hi != *k.max() && !hi.right_limit});
  }
  return out;
}

// Greedy order-preserving embedding of `sub` into `host` respecting local types.
inline bool embeds_in_order(const std::vector<LocalType>& sub, const std::vector<LocalType>& host) {
  std::size_t j = 0;
  for (const auto& t : sub) {
    while (j < host.size() && !(host[j] == t)) ++j;
    if (j == host.size()) return false;
    ++j;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Words

inline WordTerm random_word(std::mt19937& rng, int depth) {
  using W = WordTerm;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  auto letter = [&] {
    return W::letter(std::uniform_int_distribution<int>(1, 6)(rng), rng() % 2 ? 1 : -1);
  };
  switch (pick(rng)) {
    case 0: return rng() % 8 == 0 ? W::epsilon() : letter();
    case 1: return letter();
    case 2: return W::omega_prod(random_word(rng, depth - 1), std::uniform_int_distribution<int>(1, 3)(rng));
    case 3: return W::omega_star_prod(random_word(rng, depth - 1), std::uniform_int_distribution<int>(1, 3)(rng));
    default: {
      const int n = std::uniform_int_distribution<int>(2, 3)(rng);
      std::vector<W> parts;
      for (int i = 0; i < n; ++i) parts.push_back(random_word(rng, depth - 1));
      return W::concat(std::move(parts));
    }
  }
}

// Truncation by literal expansion: OmegaProd copies are unrolled while their first
// letter index stays at or below the stage, which bounds every contributing factor.
inline void expand_truncation(const WordTerm& w, std::int64_t stage, std::vector<Syllable>& out) {
  switch (w.kind()) {
    case WordTerm::Kind::Epsilon: return;
    case WordTerm::Kind::Letter:
      if (w.index() <= stage) out.push_back({w.index(), w.sign()});
      return;
    case WordTerm::Kind::Concat:
      for (const auto& p : w.parts()) expand_truncation(p, stage, out);
      return;
    case WordTerm::Kind::OmegaProd:
    case WordTerm::Kind::OmegaStarProd: {
      std::vector<std::vector<Syllable>> copies;
      auto base = w.base();
      for (int k = 0; k <= stage + 1; ++k) {
        std::vector<Syllable> c;
        expand_truncation(base, stage, c);
        copies.push_back(std::move(c));
        base = shift(base, w.shift());
      }
      if (w.is(WordTerm::Kind::OmegaStarProd)) std::reverse(copies.begin(), copies.end());
      for (auto& c : copies) out.insert(out.end(), c.begin(), c.end());
      return;
    }
  }
}

// Stack-free reduction written independently of FreeWord::reduce.
inline std::vector<Syllable> naive_reduce(std::vector<Syllable> s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i].index == s[i + 1].index && s[i].sign == -s[i + 1].sign) {
        s.erase(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Closure lab

inline std::vector<CorpusEntry> group_corpus() {
  std::vector<FiniteGroup> groups;
  for (int n = 1; n <= 12; ++n) groups.push_back(cyclic_group(n));
  groups.push_back(symmetric_group_3());
  groups.push_back(dihedral_group_4());
  groups.push_back(quaternion_group());
  std::vector<CorpusEntry> out;
  for (const auto& g : groups) {
    for (const auto& h : all_subgroups(g)) out.push_back({g, h});
  }
  return out;
}

inline std::vector<ClosurePair> pair_pool() {
  const auto z4 = cyclic_group(4), z2 = cyclic_group(2), z6 = cyclic_group(6), s3 = symmetric_group_3();
  // In the lexicographic listing of S3, element 1 is the transposition fixing 0
  // and elements 3, 4 generate A3.
  return {
      ClosurePair::make(z4, {0, 2}, 1), ClosurePair::make(z4, {0}, 2),     ClosurePair::make(z4, {0}, 1),
      ClosurePair::make(z4, {0, 2}, 2), ClosurePair::make(z2, {0}, 1),     ClosurePair::make(z6, {0, 2, 4}, 1),
      ClosurePair::make(z6, {0, 3}, 1), ClosurePair::make(s3, {0}, 1),     ClosurePair::make(s3, {0, 3, 4}, 1),
      ClosurePair::make(z6, {0}, 2),
  };
}

// Subgroup generated by a set, by closing under multiplication until stable.
inline std::set<Element> naive_generated(const FiniteGroup& g, std::set<Element> s) {
  s.insert(g.identity());
  for (;;) {
    std::set<Element> next = s;
    for (Element a : s) {
      for (Element b : s) next.insert(g.mul(a, b));
    }
    if (next == s) return s;
    s = std::move(next);
  }
}

// Every function P -> G checked against the full table. Only for small |G|^|P|.
inline std::vector<std::vector<Element>> brute_force_homs(const FiniteGroup& p, const FiniteGroup& g) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> f(static_cast<std::size_t>(p.order()), 0);
  for (;;) {
    bool ok = true;
    for (Element a = 0; a < p.order() && ok; ++a) {
      for (Element b = 0; b < p.order() && ok; ++b) ok = f[p.mul(a, b)] == g.mul(f[a], f[b]);
    }
    if (ok) out.push_back(f);
    std::size_t i = 0;
    while (i < f.size() && ++f[i] == g.order()) f[i++] = 0;
    if (i == f.size()) return out;
  }
}

}  // namespace scatterlab::oracle
