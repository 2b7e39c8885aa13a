#pragma once

// Finite terms denoting countable linear orders.
//
// Atoms are the empty order, a single point, and eta (the rationals). Terms combine
// by finite ordered sums and by constant w- and w*-indexed sums of a single body.
// Canonical forms are produced by a small set of safe rewrites; canonical equality
// implies order isomorphism, but not conversely.

#include "scatterlab/error.hpp"
#include "scatterlab/ordinal.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace scatterlab {

class OrderTerm {
 public:
  enum class Kind { Zero, One, Finite, Eta, Sum, OmegaSum, OmegaStarSum };

  OrderTerm() : OrderTerm(Kind::Zero, 0, {}) {}

  static OrderTerm zero() { return OrderTerm(); }
  static OrderTerm one() { return OrderTerm(Kind::One, 1, {}); }
  static OrderTerm eta() { return OrderTerm(Kind::Eta, 0, {}); }
  // finite(0) is Zero and finite(1) is One.
  static OrderTerm finite(std::uint64_t n) {
    if (n == 0) return zero();
    if (n == 1) return one();
    return OrderTerm(Kind::Finite, n, {});
  }
  // Raw sum; no rewriting beyond collapsing 0- and 1-element sums.
  static OrderTerm sum(std::vector<OrderTerm> parts) {
    if (parts.empty()) return zero();
    if (parts.size() == 1) return parts.front();
    return OrderTerm(Kind::Sum, 0, std::move(parts));
  }
  static OrderTerm omega(OrderTerm body) { return OrderTerm(Kind::OmegaSum, 0, {std::move(body)}); }
  static OrderTerm omega_star(OrderTerm body) {
    return OrderTerm(Kind::OmegaStarSum, 0, {std::move(body)});
  }
  static OrderTerm zeta() { return sum({omega_star(one()), omega(one())}); }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  // Number of points of a Zero/One/Finite node.
  std::uint64_t count() const { return node_->count; }
  std::span<const OrderTerm> parts() const { return node_->children; }
  const OrderTerm& body() const { return node_->children.front(); }

  friend std::strong_ordering operator<=>(const OrderTerm& a, const OrderTerm& b);
  friend bool operator==(const OrderTerm& a, const OrderTerm& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Kind kind;
    std::uint64_t count;
    std::vector<OrderTerm> children;
  };

  OrderTerm(Kind kind, std::uint64_t count, std::vector<OrderTerm> children)
      : node_(std::make_shared<const Node>(Node{kind, count, std::move(children)})) {}

  std::shared_ptr<const Node> node_;
};

inline std::strong_ordering operator<=>(const OrderTerm& a, const OrderTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.count() <=> b.count(); c != 0) return c;
  const auto& x = a.node_->children;
  const auto& y = b.node_->children;
  const auto n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return x.size() <=> y.size();
}

// Surface syntax: 0, 1, n, eta, E + E, omega(E), omegastar(E).
inline std::string to_string(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero: return "0";
    case K::One: return "1";
    case K::Finite: return std::to_string(t.count());
    case K::Eta: return "eta";
    case K::OmegaSum: return "omega(" + to_string(t.body()) + ")";
    case K::OmegaStarSum: return "omegastar(" + to_string(t.body()) + ")";
    case K::Sum: {
      std::string out;
      for (const auto& p : t.parts()) {
        if (!out.empty()) out += " + ";
        out += p.is(K::Sum) ? "(" + to_string(p) + ")" : to_string(p);
      }
      return out;
    }
  }
  return "?";
}

struct Cardinality {
  bool infinite = false;
  std::uint64_t value = 0;

  static Cardinality finite(std::uint64_t n) { return {false, n}; }
  static Cardinality countably_infinite() { return {true, 0}; }
  bool is_empty() const { return !infinite && value == 0; }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
  std::string str() const { return infinite ? "countably infinite" : std::to_string(value); }
};

inline Cardinality cardinality(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero:
    case K::One:
    case K::Finite: return Cardinality::finite(t.count());
    case K::Eta: return Cardinality::countably_infinite();
    case K::Sum: {
      Cardinality total;
      for (const auto& p : t.parts()) {
        auto c = cardinality(p);
        if (c.infinite) return c;
        total.value += c.value;
      }
      return total;
    }
    case K::OmegaSum:
    case K::OmegaStarSum:
      return cardinality(t.body()).is_empty() ? Cardinality::finite(0) : Cardinality::countably_infinite();
  }
  return {};
}

inline bool is_empty(const OrderTerm& t) { return cardinality(t).is_empty(); }

inline bool contains_eta(const OrderTerm& t) {
  if (t.is(OrderTerm::Kind::Eta)) return true;
  for (const auto& p : t.parts()) {
    if (contains_eta(p)) return true;
  }
  return false;
}

namespace detail {

inline bool is_finite_block(const OrderTerm& t) {
  return t.is(OrderTerm::Kind::One) || t.is(OrderTerm::Kind::Finite);
}

inline bool is_plain_omega(const OrderTerm& t) {
  return t.is(OrderTerm::Kind::OmegaSum) && t.body().is(OrderTerm::Kind::One);
}

inline bool is_plain_omega_star(const OrderTerm& t) {
  return t.is(OrderTerm::Kind::OmegaStarSum) && t.body().is(OrderTerm::Kind::One);
}

inline void flatten_into(const OrderTerm& t, std::vector<OrderTerm>& out);

}  // namespace detail

inline OrderTerm canonicalize(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Zero:
    case K::One:
    case K::Finite:
    case K::Eta: return t;
    case K::OmegaSum:
    case K::OmegaStarSum: {
      auto body = canonicalize(t.body());
      if (body.is(K::Zero)) return OrderTerm::zero();
      return t.is(K::OmegaSum) ? OrderTerm::omega(std::move(body)) : OrderTerm::omega_star(std::move(body));
    }
    case K::Sum: {
      std::vector<OrderTerm> flat;
      for (const auto& p : t.parts()) detail::flatten_into(canonicalize(p), flat);
      // Stack pass: n+m -> (n+m), n+w -> w, w*+n -> w*.
      std::vector<OrderTerm> out;
      for (auto& p : flat) {
        if (detail::is_finite_block(p)) {
          if (!out.empty() && detail::is_finite_block(out.back())) {
            out.back() = OrderTerm::finite(out.back().count() + p.count());
            continue;
          }
          if (!out.empty() && detail::is_plain_omega_star(out.back())) continue;
        } else if (detail::is_plain_omega(p)) {
          if (!out.empty() && detail::is_finite_block(out.back())) out.pop_back();
        }
        out.push_back(std::move(p));
      }
      return OrderTerm::sum(std::move(out));
    }
  }
  return t;
}

inline void detail::flatten_into(const OrderTerm& t, std::vector<OrderTerm>& out) {
  if (t.is(OrderTerm::Kind::Zero)) return;
  if (t.is(OrderTerm::Kind::Sum)) {
    for (const auto& p : t.parts()) flatten_into(p, out);
    return;
  }
  out.push_back(t);
}

inline bool canonically_equal(const OrderTerm& a, const OrderTerm& b) {
  return canonicalize(a) == canonicalize(b);
}

inline OrderTerm reverse(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Sum: {
      std::vector<OrderTerm> parts;
      for (auto it = t.parts().rbegin(); it != t.parts().rend(); ++it) parts.push_back(reverse(*it));
      return OrderTerm::sum(std::move(parts));
    }
    case K::OmegaSum: return OrderTerm::omega_star(reverse(t.body()));
    case K::OmegaStarSum: return OrderTerm::omega(reverse(t.body()));
    default: return t;
  }
}

// Scattered as an order: no eta survives canonicalization.
inline bool is_scattered(const OrderTerm& t) { return !contains_eta(canonicalize(t)); }

inline void require_scattered(const OrderTerm& t) {
  if (!is_scattered(t)) throw Error(ErrorKind::NonScattered, "term contains eta: " + to_string(t));
}

// Upper bound on the Hausdorff rank of the denoted order.
inline Ordinal syntactic_rank(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::Eta: throw Error(ErrorKind::NonScattered, "rank of a non-scattered term");
    case K::Sum: {
      Ordinal r;
      for (const auto& p : t.parts()) r = max(r, syntactic_rank(p));
      return r;
    }
    case K::OmegaSum:
    case K::OmegaStarSum: {
      auto inner = syntactic_rank(t.body());
      return is_empty(t.body()) ? Ordinal{} : inner.successor();
    }
    default: return Ordinal{};
  }
}

inline bool has_min(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::One:
    case K::Finite: return true;
    case K::Sum:
      for (const auto& p : t.parts()) {
        if (!is_empty(p)) return has_min(p);
      }
      return false;
    case K::OmegaSum: return has_min(t.body());
    default: return false;
  }
}

inline bool has_max(const OrderTerm& t) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::One:
    case K::Finite: return true;
    case K::Sum:
      for (auto it = t.parts().rbegin(); it != t.parts().rend(); ++it) {
        if (!is_empty(*it)) return has_max(*it);
      }
      return false;
    case K::OmegaStarSum: return has_max(t.body());
    default: return false;
  }
}

enum class End { Min, Max };

namespace detail {

inline OrderTerm trim_raw(const OrderTerm& t, End end) {
  using K = OrderTerm::Kind;
  switch (t.kind()) {
    case K::One:
    case K::Finite: return OrderTerm::finite(t.count() - 1);
    case K::Sum: {
      std::vector<OrderTerm> parts(t.parts().begin(), t.parts().end());
      if (end == End::Min) {
        for (auto& p : parts) {
          if (is_empty(p)) continue;
          p = trim_raw(p, end);
          break;
        }
      } else {
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
          if (is_empty(*it)) continue;
          *it = trim_raw(*it, end);
          break;
        }
      }
      return OrderTerm::sum(std::move(parts));
    }
    case K::OmegaSum: return OrderTerm::sum({trim_raw(t.body(), End::Min), t});
    case K::OmegaStarSum: return OrderTerm::sum({t, trim_raw(t.body(), End::Max)});
    default: return t;
  }
}

}  // namespace detail

// Removes the least (Min) or greatest (Max) point; the result is canonicalized.
inline OrderTerm trim(const OrderTerm& t, End end) {
  const bool present = end == End::Min ? has_min(t) : has_max(t);
  if (!present) {
    throw Error(ErrorKind::NoSuchEndpoint,
                std::string(end == End::Min ? "no minimum in " : "no maximum in ") + to_string(t));
  }
  return canonicalize(detail::trim_raw(t, end));
}

// Depth of the term tree; atoms have depth 1.
inline std::size_t term_depth(const OrderTerm& t) {
  std::size_t d = 0;
  for (const auto& p : t.parts()) d = std::max(d, term_depth(p));
  return d + 1;
}

}  // namespace scatterlab
