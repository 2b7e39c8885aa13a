#pragma once

// Cut spaces of scattered orders, their embeddings as compact subsets of an interval,
// the gap order I(K), and Cantor-Bendixson style derivatives.
//
// Embedding layout on [a, b]:
//   Sum of k nonempty parts   part i on [a + (b-a)(i-1)/k, a + (b-a)i/k]
//   OmegaSum(T)               copy k on [b - (b-a)2^{-(k-1)}, b - (b-a)2^{-k}]
//   OmegaStarSum(T)           copy k on [a + (b-a)2^{-k}, a + (b-a)2^{-(k-1)}]
//   One                       the left endpoint, or the right endpoint when pinned
// A part whose successor has no minimum is "pinned": its maximum is placed on the
// shared block boundary, which is where the successor accumulates. A pinned single
// point takes a zero-width block, so the minimum stays at a. Every point therefore
// sits at the accumulation point it is the limit of, and the embedded set of a
// complete order (any cuts() output) is closed.

#include "scatterlab/error.hpp"
#include "scatterlab/order_term.hpp"
#include "scatterlab/ordinal.hpp"
#include "scatterlab/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scatterlab {

// ---------------------------------------------------------------------------
// Cuts

namespace detail {

inline OrderTerm cuts_raw(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero: return OrderTerm::one();
    case K::One:
    case K::Finite: return OrderTerm::finite(t.count() + 1);
    case K::Sum: {
      OrderTerm acc = cuts_raw(t.parts().front());
      for (std::size_t i = 1; i < t.parts().size(); ++i) {
        acc = OrderTerm::sum({acc, trim(cuts_raw(t.parts()[i]), End::Min)});
      }
      return acc;
    }
    case K::OmegaSum:
      return OrderTerm::sum(
          {OrderTerm::one(), OrderTerm::omega(trim(cuts_raw(t.body()), End::Min)), OrderTerm::one()});
    case K::OmegaStarSum:
      return OrderTerm::sum(
          {OrderTerm::one(), OrderTerm::omega_star(trim(cuts_raw(t.body()), End::Max)), OrderTerm::one()});
    case K::Eta: break;
  }
  throw Error(ErrorKind::NonScattered, "the cut space of eta is uncountable");
}

}  // namespace detail

// Term denoting the order of initial segments C(L).
inline OrderTerm cuts(const OrderTerm& order) {
  require_scattered(order);
  return canonicalize(detail::cuts_raw(canonicalize(order)));
}

// ---------------------------------------------------------------------------
// Layout

struct Point {
  Rational coord;
  bool left_limit = false;   // no immediate predecessor and not the minimum
  bool right_limit = false;  // no immediate successor and not the maximum
  unsigned level = 0;
};

struct Gap {
  Rational lo;
  Rational hi;
  unsigned level = 0;
};

using GapList = std::vector<Gap>;

namespace detail {

struct Frame {
  Rational a;
  Rational b;
  bool left_limit = false;
  bool right_limit = false;
  bool pin = false;
  unsigned level = 0;
};

inline std::pair<Rational, Rational> omega_block(const Rational& a, const Rational& b, unsigned k) {
  const Rational w = b - a;
  return {b - w * inverse_power_of_two(k - 1), b - w * inverse_power_of_two(k)};
}

inline std::pair<Rational, Rational> omega_star_block(const Rational& a, const Rational& b, unsigned k) {
  const Rational w = b - a;
  return {a + w * inverse_power_of_two(k), a + w * inverse_power_of_two(k - 1)};
}

inline std::vector<OrderTerm> nonempty_parts(const OrderTerm& t) {
  std::vector<OrderTerm> out;
  for (const auto& p : t.parts()) {
    if (!is_empty(p)) out.push_back(p);
  }
  return out;
}

inline bool sum_part_pinned(const std::vector<OrderTerm>& parts, std::size_t i, const Frame& f) {
  return i + 1 == parts.size() ? f.pin : !has_min(parts[i + 1]);
}

// A pinned single point occupies a degenerate block; every other part gets an equal share.
inline long sum_part_weight(const std::vector<OrderTerm>& parts, std::size_t i, const Frame& f) {
  return cardinality(parts[i]) == Cardinality::finite(1) && sum_part_pinned(parts, i, f) ? 0 : 1;
}

inline Frame sum_part_frame(const std::vector<OrderTerm>& parts, std::size_t i, const Frame& f) {
  long before = 0;
  long total = 0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const long w = sum_part_weight(parts, j, f);
    if (j < i) before += w;
    total += w;
  }
  const long mine = sum_part_weight(parts, i, f);
  const Rational width = f.b - f.a;
  Frame c;
  if (total == 0) {
    c.a = c.b = f.b;
  } else {
    c.a = f.a + width * Rational(before, total);
    c.b = f.a + width * Rational(before + mine, total);
  }
  const bool first = i == 0;
  const bool last = i + 1 == parts.size();
  c.left_limit = first ? f.left_limit : !has_max(parts[i - 1]);
  c.right_limit = last ? f.right_limit : !has_min(parts[i + 1]);
  c.pin = sum_part_pinned(parts, i, f);
  c.level = f.level;
  return c;
}

inline Frame omega_copy_frame(const OrderTerm& body, unsigned k, const Frame& f) {
  auto [lo, hi] = omega_block(f.a, f.b, k);
  Frame c;
  c.a = lo;
  c.b = hi;
  c.left_limit = k == 1 ? f.left_limit : !has_max(body);
  c.right_limit = !has_min(body);
  c.pin = !has_min(body);
  c.level = std::max(f.level, k);
  return c;
}

inline Frame omega_star_copy_frame(const OrderTerm& body, unsigned k, const Frame& f) {
  auto [lo, hi] = omega_star_block(f.a, f.b, k);
  Frame c;
  c.a = lo;
  c.b = hi;
  c.left_limit = !has_max(body);
  c.right_limit = k == 1 ? f.right_limit : !has_min(body);
  c.pin = k == 1 ? f.pin : !has_min(body);
  c.level = std::max(f.level, k);
  return c;
}

inline Rational finite_coord(std::uint64_t n, std::uint64_t i, const Frame& f) {
  if (f.pin && i + 1 == n) return f.b;
  return f.a + (f.b - f.a) * Rational(static_cast<long>(i), static_cast<long>(n));
}

inline std::optional<Rational> min_coord(const OrderTerm& t, const Frame& f) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::One:
    case K::Finite: return finite_coord(t.count(), 0, f);
    case K::Sum: {
      auto parts = nonempty_parts(t);
      if (parts.empty()) return std::nullopt;
      return min_coord(parts.front(), sum_part_frame(parts, 0, f));
    }
    case K::OmegaSum:
      if (is_empty(t.body())) return std::nullopt;
      return min_coord(t.body(), omega_copy_frame(t.body(), 1, f));
    default: return std::nullopt;
  }
}

inline std::optional<Rational> max_coord(const OrderTerm& t, const Frame& f) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::One:
    case K::Finite: return finite_coord(t.count(), t.count() - 1, f);
    case K::Sum: {
      auto parts = nonempty_parts(t);
      if (parts.empty()) return std::nullopt;
      return max_coord(parts.back(), sum_part_frame(parts, parts.size() - 1, f));
    }
    case K::OmegaStarSum:
      if (is_empty(t.body())) return std::nullopt;
      return max_coord(t.body(), omega_star_copy_frame(t.body(), 1, f));
    default: return std::nullopt;
  }
}

inline void maybe_gap(const OrderTerm& left, const Frame& lf, const OrderTerm& right, const Frame& rf,
                      GapList& out) {
  auto x = max_coord(left, lf);
  auto y = min_coord(right, rf);
  if (x && y) out.push_back(Gap{*x, *y, std::max(lf.level, rf.level)});
}

// Emits all points and gaps whose omega copy indices are at most `depth`.
inline void walk(const OrderTerm& t, const Frame& f, unsigned depth, std::vector<Point>* points,
                 GapList* gaps) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero: return;
    case K::Eta: throw Error(ErrorKind::NonScattered, "cannot embed eta");
    case K::One:
    case K::Finite: {
      const auto n = t.count();
      for (std::uint64_t i = 0; i < n; ++i) {
        if (points) {
          points->push_back(Point{finite_coord(n, i, f), i == 0 && f.left_limit,
                                  i + 1 == n && f.right_limit, f.level});
        }
        if (gaps && i + 1 < n) gaps->push_back(Gap{finite_coord(n, i, f), finite_coord(n, i + 1, f), f.level});
      }
      return;
    }
    case K::Sum: {
      auto parts = nonempty_parts(t);
      std::vector<Frame> frames;
      for (std::size_t i = 0; i < parts.size(); ++i) frames.push_back(sum_part_frame(parts, i, f));
      for (std::size_t i = 0; i < parts.size(); ++i) {
        walk(parts[i], frames[i], depth, points, gaps);
        if (gaps && i + 1 < parts.size()) maybe_gap(parts[i], frames[i], parts[i + 1], frames[i + 1], *gaps);
      }
      return;
    }
    case K::OmegaSum:
    case K::OmegaStarSum: {
      const auto& body = t.body();
      if (is_empty(body)) return;
      const bool forward = t.is(K::OmegaSum);
      auto frame = [&](unsigned k) {
        return forward ? omega_copy_frame(body, k, f) : omega_star_copy_frame(body, k, f);
      };
      for (unsigned k = 1; k <= depth; ++k) {
        const Frame fk = frame(k);
        walk(body, fk, depth, points, gaps);
        if (gaps && k + 1 <= depth) {
          const Frame next = frame(k + 1);
          if (forward) {
            maybe_gap(body, fk, body, next, *gaps);
          } else {
            maybe_gap(body, next, body, fk, *gaps);
          }
        }
      }
      return;
    }
  }
}

constexpr unsigned kMaxEnumerationDepth = 1u << 16;

}  // namespace detail

// ---------------------------------------------------------------------------
// Embedded sets

// A compact scattered subset of [lo, hi] described by a generator term.
class EmbeddedSet {
 public:
  EmbeddedSet(OrderTerm generator, Rational lo, Rational hi)
      : generator_(std::move(generator)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  const OrderTerm& generator() const { return generator_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool finite() const { return !cardinality(generator_).infinite; }

  // All points of copy index at most `depth`, sorted by coordinate.
  std::vector<Point> points_at_depth(unsigned depth) const {
    std::vector<Point> out;
    detail::walk(generator_, root_frame(), depth, &out, nullptr);
    std::sort(out.begin(), out.end(), [](const Point& x, const Point& y) { return x.coord < y.coord; });
    return out;
  }

  GapList gaps_at_depth(unsigned depth) const {
    GapList out;
    detail::walk(generator_, root_frame(), depth, nullptr, &out);
    return out;
  }

  // At least `budget` points (all of them when the set is finite), sorted by coordinate.
  // The copy depth doubles until the budget is met.
  std::vector<Point> points(std::size_t budget) const {
    if (finite()) return points_at_depth(1);
    for (unsigned depth = 1;; depth *= 2) {
      auto pts = points_at_depth(depth);
      if (pts.size() >= budget || depth >= detail::kMaxEnumerationDepth) return pts;
    }
  }

  std::optional<Rational> min() const { return detail::min_coord(generator_, root_frame()); }
  std::optional<Rational> max() const { return detail::max_coord(generator_, root_frame()); }

  detail::Frame root_frame() const {
    detail::Frame f;
    f.a = lo_;
    f.b = hi_;
    return f;
  }

 private:
  OrderTerm generator_;
  Rational lo_;
  Rational hi_;
};

inline EmbeddedSet embed(const OrderTerm& set_term, Rational lo = 0, Rational hi = 1) {
  require_scattered(set_term);
  if (!has_min(set_term) || !has_max(set_term)) {
    throw Error(ErrorKind::NoEndpoints, "embedding needs a minimum and a maximum: " + to_string(set_term));
  }
  return EmbeddedSet(set_term, std::move(lo), std::move(hi));
}

// The first `budget` components of [min K, max K] \ K in discovery order (depth,
// then coordinate), returned sorted by left endpoint. Each one joins a point to its
// immediate successor.
inline GapList gaps(const EmbeddedSet& set, std::size_t budget) {
  auto order = [](const Gap& x, const Gap& y) {
    if (x.level != y.level) return x.level < y.level;
    return x.lo < y.lo;
  };
  GapList all;
  if (set.finite()) {
    all = set.gaps_at_depth(1);
  } else {
    for (unsigned depth = 1;; depth *= 2) {
      all = set.gaps_at_depth(depth);
      if (all.size() >= budget || depth >= detail::kMaxEnumerationDepth) break;
    }
  }
  std::sort(all.begin(), all.end(), order);
  if (all.size() > budget) all.resize(budget);
  std::sort(all.begin(), all.end(), [](const Gap& x, const Gap& y) { return x.lo < y.lo; });
  return all;
}

// Order term of I(K) computed from the generator's adjacency structure.
inline OrderTerm gap_order(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero:
    case K::One:
    case K::Finite: return OrderTerm::finite(t.count() == 0 ? 0 : t.count() - 1);
    case K::Eta: throw Error(ErrorKind::NonScattered, "gap order of eta");
    case K::Sum: {
      auto parts = detail::nonempty_parts(t);
      std::vector<OrderTerm> out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0 && has_max(parts[i - 1]) && has_min(parts[i])) out.push_back(OrderTerm::one());
        out.push_back(gap_order(parts[i]));
      }
      return canonicalize(OrderTerm::sum(std::move(out)));
    }
    case K::OmegaSum:
    case K::OmegaStarSum: {
      const auto& body = t.body();
      if (is_empty(body)) return OrderTerm::zero();
      auto jump = OrderTerm::finite(has_min(body) && has_max(body) ? 1 : 0);
      if (t.is(K::OmegaSum)) return canonicalize(OrderTerm::omega(OrderTerm::sum({gap_order(body), jump})));
      return canonicalize(OrderTerm::omega_star(OrderTerm::sum({jump, gap_order(body)})));
    }
  }
  return OrderTerm::zero();
}

// ---------------------------------------------------------------------------
// Derivatives

namespace detail {

struct DeriveContext {
  bool left_limit = false;
  bool right_limit = false;
  bool keep_min = false;
  bool keep_max = false;
};

inline OrderTerm derive(const OrderTerm& t, const DeriveContext& c) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero: return t;
    case K::Eta: throw Error(ErrorKind::NonScattered, "derivative of eta");
    case K::One:
      return OrderTerm::finite(c.left_limit || c.right_limit || c.keep_min || c.keep_max ? 1 : 0);
    case K::Finite: {
      const bool first = c.left_limit || c.keep_min;
      const bool last = c.right_limit || c.keep_max;
      return OrderTerm::finite((first ? 1 : 0) + (last ? 1 : 0));
    }
    case K::Sum: {
      auto parts = nonempty_parts(t);
      std::vector<OrderTerm> out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const bool first = i == 0;
        const bool last = i + 1 == parts.size();
        DeriveContext pc;
        pc.left_limit = first ? c.left_limit : !has_max(parts[i - 1]);
        pc.right_limit = last ? c.right_limit : !has_min(parts[i + 1]);
        pc.keep_min = first && c.keep_min;
        pc.keep_max = last && c.keep_max;
        out.push_back(derive(parts[i], pc));
      }
      return OrderTerm::sum(std::move(out));
    }
    case K::OmegaSum:
    case K::OmegaStarSum: {
      const auto& body = t.body();
      if (is_empty(body)) return OrderTerm::zero();
      const DeriveContext inner{!has_max(body), !has_min(body), false, false};
      DeriveContext outer = inner;
      const auto rest = derive(body, inner);
      if (t.is(K::OmegaSum)) {
        outer.left_limit = c.left_limit;
        outer.keep_min = c.keep_min;
        return OrderTerm::sum({derive(body, outer), OrderTerm::omega(rest)});
      }
      outer.right_limit = c.right_limit;
      outer.keep_max = c.keep_max;
      return OrderTerm::sum({OrderTerm::omega_star(rest), derive(body, outer)});
    }
  }
  return OrderTerm::zero();
}

constexpr std::uint64_t kMaxDerivativeSteps = 1u << 20;

}  // namespace detail

// Term for the non-isolated points of the embedded set.
inline OrderTerm derived_set(const OrderTerm& set_term) {
  require_scattered(set_term);
  return canonicalize(detail::derive(set_term, {}));
}

// Least k whose k-th derivative is empty; a nonempty finite set has rank 1.
inline Ordinal cb_rank(const OrderTerm& set_term) {
  require_scattered(set_term);
  OrderTerm current = canonicalize(set_term);
  std::uint64_t steps = 0;
  while (!is_empty(current)) {
    current = canonicalize(detail::derive(current, {}));
    if (++steps > detail::kMaxDerivativeSteps) throw Error(ErrorKind::BudgetExceeded, "derivative chain");
  }
  return Ordinal::natural(steps);
}

struct DerivedStage {
  Ordinal index;
  EmbeddedSet set;
};

struct DerivedSequence {
  std::vector<DerivedStage> stages;
  Ordinal rank;
};

// S_{k+1} = {min, max} together with the non-isolated points of S_k, iterated until
// only the two endpoints remain. Each stage is re-embedded on the interval of S_0.
inline DerivedSequence derived_sequence(const EmbeddedSet& s0) {
  const auto& term = s0.generator();
  require_scattered(term);
  if (!has_min(term) || !has_max(term)) {
    throw Error(ErrorKind::EndpointsMissing, "set lacks a least or greatest point: " + to_string(term));
  }
  DerivedSequence seq;
  OrderTerm current = canonicalize(term);
  std::uint64_t k = 0;
  for (;;) {
    seq.stages.push_back(DerivedStage{Ordinal::natural(k), EmbeddedSet(current, s0.lo(), s0.hi())});
    const auto card = cardinality(current);
    if (!card.infinite && card.value <= 2) break;
    current = canonicalize(detail::derive(current, {false, false, true, true}));
    if (++k > detail::kMaxDerivativeSteps) throw Error(ErrorKind::BudgetExceeded, "derived sequence");
  }
  seq.rank = Ordinal::natural(k);
  return seq;
}

// ---------------------------------------------------------------------------
// Membership and slicing

namespace detail {

inline bool contains(const OrderTerm& t, const Frame& f, const Rational& x) {
  using K = OrderTerm::Kind;
  if (x < f.a || x > f.b) return false;
  switch (t.kind()) {
    case K::One:
    case K::Finite:
      for (std::uint64_t i = 0; i < t.count(); ++i) {
        if (finite_coord(t.count(), i, f) == x) return true;
      }
      return false;
    case K::Sum: {
      auto parts = nonempty_parts(t);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (contains(parts[i], sum_part_frame(parts, i, f), x)) return true;
      }
      return false;
    }
    case K::OmegaSum: {
      if (is_empty(t.body()) || x >= f.b) return false;
      for (unsigned k = 1;; ++k) {
        auto fk = omega_copy_frame(t.body(), k, f);
        if (fk.a > x) return false;
        if (x <= fk.b && contains(t.body(), fk, x)) return true;
      }
    }
    case K::OmegaStarSum: {
      if (is_empty(t.body()) || x <= f.a) return false;
      for (unsigned k = 1;; ++k) {
        auto fk = omega_star_copy_frame(t.body(), k, f);
        if (fk.b < x) return false;
        if (x >= fk.a && contains(t.body(), fk, x)) return true;
      }
    }
    default: return false;
  }
}

inline OrderTerm slice(const OrderTerm& t, const Frame& f, const Rational& lo, const Rational& hi) {
  using K = OrderTerm::Kind;
  if (is_empty(t) || hi < f.a || lo > f.b) return OrderTerm::zero();
  if (lo <= f.a && f.b <= hi) return t;
  switch (t.kind()) {
    case K::One:
    case K::Finite: {
      std::uint64_t n = 0;
      for (std::uint64_t i = 0; i < t.count(); ++i) {
        const auto c = finite_coord(t.count(), i, f);
        if (lo <= c && c <= hi) ++n;
      }
      return OrderTerm::finite(n);
    }
    case K::Sum: {
      auto parts = nonempty_parts(t);
      std::vector<OrderTerm> out;
      for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(slice(parts[i], sum_part_frame(parts, i, f), lo, hi));
      return OrderTerm::sum(std::move(out));
    }
    case K::OmegaSum: {
      if (lo >= f.b) return OrderTerm::zero();
      std::vector<OrderTerm> out;
      for (unsigned k = 1;; ++k) {
        auto fk = omega_copy_frame(t.body(), k, f);
        if (fk.a > hi) break;
        if (fk.b < lo) continue;
        if (lo <= fk.a && f.b <= hi) {
          out.push_back(t);
          break;
        }
        out.push_back(slice(t.body(), fk, lo, hi));
      }
      return OrderTerm::sum(std::move(out));
    }
    case K::OmegaStarSum: {
      if (hi <= f.a) return OrderTerm::zero();
      std::vector<OrderTerm> reversed;
      for (unsigned k = 1;; ++k) {
        auto fk = omega_star_copy_frame(t.body(), k, f);
        if (fk.b < lo) break;
        if (fk.a > hi) continue;
        if (fk.b <= hi && lo <= f.a) {
          reversed.push_back(t);
          break;
        }
        reversed.push_back(slice(t.body(), fk, lo, hi));
      }
      return OrderTerm::sum(std::vector<OrderTerm>(reversed.rbegin(), reversed.rend()));
    }
    default: return OrderTerm::zero();
  }
}

}  // namespace detail

inline bool contains(const EmbeddedSet& set, const Rational& x) {
  return detail::contains(set.generator(), set.root_frame(), x);
}

// Term for the points of the set inside [lo, hi].
inline OrderTerm slice(const EmbeddedSet& set, const Rational& lo, const Rational& hi) {
  return canonicalize(detail::slice(set.generator(), set.root_frame(), lo, hi));
}

struct RestrictionReport {
  Ordinal rank_inside;
  Ordinal rank_outside;
  bool ok = false;
};

// Rank of S_0 restricted to [a, b] (with endpoints a, b) against the rank of S_0.
inline RestrictionReport rank_restriction_check(const EmbeddedSet& s0, const Rational& a, const Rational& b) {
  if (!(a < b) || !contains(s0, a) || !contains(s0, b)) {
    throw Error(ErrorKind::EndpointsNotInSet, "slice endpoints must be points of the set with a < b");
  }
  RestrictionReport report;
  report.rank_outside = derived_sequence(s0).rank;
  report.rank_inside = derived_sequence(EmbeddedSet(slice(s0, a, b), a, b)).rank;
  report.ok = report.rank_inside <= report.rank_outside;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const EmbeddedSet& set, const std::vector<Point>& points) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"coord", to_string(p.coord)}, {"left_limit", p.left_limit}, {"right_limit", p.right_limit}});
  }
  return {{"generator", to_string(set.generator())},
          {"interval", {to_string(set.lo()), to_string(set.hi())}},
          {"points", pts}};
}

inline nlohmann::json to_json(const EmbeddedSet& set, const GapList& gap_list) {
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : gap_list) gs.push_back({{"lo", to_string(g.lo)}, {"hi", to_string(g.hi)}});
  return {{"generator", to_string(set.generator())},
          {"interval", {to_string(set.lo()), to_string(set.hi())}},
          {"gaps", gs}};
}

}  // namespace scatterlab
