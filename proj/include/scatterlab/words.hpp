#pragma once

// Scattered transfinite words over the alphabet {a_n, a_n^-1 : n >= 1}.
//
// Infinite concatenations are shift schemas: OmegaProd(base, s) is the product of the
// factors base, shift(base, s), shift(base, 2s), ... and OmegaStarProd(base, s) is the
// same factors in reverse order. With s >= 1 each index occurs finitely often, so the
// word is a legitimate element of the Hawaiian earring word group. Equality is only
// ever certified stage by stage through the finite projections onto F_N.

#include "scatterlab/error.hpp"
#include "scatterlab/order_term.hpp"

#include <cstdint>
#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scatterlab {

class WordTerm {
 public:
  enum class Kind { Epsilon, Letter, Concat, OmegaProd, OmegaStarProd };

  WordTerm() : WordTerm(Kind::Epsilon, 0, 1, {}) {}

  static WordTerm epsilon() { return WordTerm(); }
  static WordTerm letter(std::int64_t index, int sign = 1) { return WordTerm(Kind::Letter, index, sign, {}); }
  static WordTerm concat(std::vector<WordTerm> parts) { return WordTerm(Kind::Concat, 0, 1, std::move(parts)); }
  static WordTerm omega_prod(WordTerm base, std::int64_t shift) {
    return WordTerm(Kind::OmegaProd, shift, 1, {std::move(base)});
  }
  static WordTerm omega_star_prod(WordTerm base, std::int64_t shift) {
    return WordTerm(Kind::OmegaStarProd, shift, 1, {std::move(base)});
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  std::int64_t index() const { return node_->value; }
  std::int64_t shift() const { return node_->value; }
  int sign() const { return node_->sign; }
  std::span<const WordTerm> parts() const { return node_->children; }
  const WordTerm& base() const { return node_->children.front(); }

  friend bool operator==(const WordTerm& a, const WordTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.node_->value != b.node_->value || a.sign() != b.sign()) return false;
    return std::equal(a.parts().begin(), a.parts().end(), b.parts().begin(), b.parts().end());
  }

 private:
  struct Node {
    Kind kind;
    std::int64_t value;  // letter index or shift
    int sign;
    std::vector<WordTerm> children;
  };

  WordTerm(Kind kind, std::int64_t value, int sign, std::vector<WordTerm> children)
      : node_(std::make_shared<const Node>(Node{kind, value, sign, std::move(children)})) {}

  std::shared_ptr<const Node> node_;
};

// Surface syntax: a3, A3, eps, W.W, wprod(W; s), wsprod(W; s).
inline std::string to_string(const WordTerm& w) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return "eps";
    case K::Letter: return (w.sign() > 0 ? "a" : "A") + std::to_string(w.index());
    case K::Concat: {
      if (w.parts().empty()) return "eps";
      std::string out;
      for (const auto& p : w.parts()) {
        if (!out.empty()) out += ".";
        out += p.is(K::Concat) ? "(" + to_string(p) + ")" : to_string(p);
      }
      return out;
    }
    case K::OmegaProd: return "wprod(" + to_string(w.base()) + "; " + std::to_string(w.shift()) + ")";
    case K::OmegaStarProd: return "wsprod(" + to_string(w.base()) + "; " + std::to_string(w.shift()) + ")";
  }
  return "?";
}

inline void validate(const WordTerm& w) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return;
    case K::Letter:
      if (w.index() < 1) throw Error(ErrorKind::BadIndex, "letter index must be positive: " + to_string(w));
      if (w.sign() != 1 && w.sign() != -1) throw Error(ErrorKind::BadIndex, "letter sign must be +1 or -1");
      return;
    case K::Concat:
      for (const auto& p : w.parts()) validate(p);
      return;
    case K::OmegaProd:
    case K::OmegaStarProd:
      if (w.shift() < 1) throw Error(ErrorKind::ZeroShift, "infinite product needs a positive shift: " + to_string(w));
      validate(w.base());
      return;
  }
}

// Adds `offset` to every letter index.
inline WordTerm shift(const WordTerm& w, std::int64_t offset) {
  using K = WordTerm::Kind;
  if (offset == 0) return w;
  switch (w.kind()) {
    case K::Epsilon: return w;
    case K::Letter: return WordTerm::letter(w.index() + offset, w.sign());
    case K::Concat: {
      std::vector<WordTerm> parts;
      for (const auto& p : w.parts()) parts.push_back(shift(p, offset));
      return WordTerm::concat(std::move(parts));
    }
    case K::OmegaProd: return WordTerm::omega_prod(shift(w.base(), offset), w.shift());
    case K::OmegaStarProd: return WordTerm::omega_star_prod(shift(w.base(), offset), w.shift());
  }
  return w;
}

// Smallest letter index occurring in w, if any.
inline std::optional<std::int64_t> min_index(const WordTerm& w) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return std::nullopt;
    case K::Letter: return w.index();
    case K::Concat: {
      std::optional<std::int64_t> best;
      for (const auto& p : w.parts()) {
        auto m = min_index(p);
        if (m && (!best || *m < *best)) best = m;
      }
      return best;
    }
    default: return min_index(w.base());
  }
}

// Occurrences of a_n and a_n^-1; factor k of a product is base shifted by (k-1)*shift,
// so only k with n - (k-1)*shift >= min_index(base) contribute.
inline std::uint64_t letter_count(const WordTerm& w, std::int64_t n) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return 0;
    case K::Letter: return w.index() == n ? 1 : 0;
    case K::Concat: {
      std::uint64_t total = 0;
      for (const auto& p : w.parts()) total += letter_count(p, n);
      return total;
    }
    default: {
      auto lowest = min_index(w.base());
      if (!lowest) return 0;
      std::uint64_t total = 0;
      for (std::int64_t m = n; m >= *lowest; m -= w.shift()) total += letter_count(w.base(), m);
      return total;
    }
  }
}

inline OrderTerm order_type(const WordTerm& w) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return OrderTerm::zero();
    case K::Letter: return OrderTerm::one();
    case K::Concat: {
      std::vector<OrderTerm> parts;
      for (const auto& p : w.parts()) parts.push_back(order_type(p));
      return OrderTerm::sum(std::move(parts));
    }
    case K::OmegaProd: return OrderTerm::omega(order_type(w.base()));
    case K::OmegaStarProd: return OrderTerm::omega_star(order_type(w.base()));
  }
  return OrderTerm::zero();
}

inline WordTerm inverse(const WordTerm& w) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return w;
    case K::Letter: return WordTerm::letter(w.index(), -w.sign());
    case K::Concat: {
      std::vector<WordTerm> parts;
      for (auto it = w.parts().rbegin(); it != w.parts().rend(); ++it) parts.push_back(inverse(*it));
      return WordTerm::concat(std::move(parts));
    }
    case K::OmegaProd: return WordTerm::omega_star_prod(inverse(w.base()), w.shift());
    case K::OmegaStarProd: return WordTerm::omega_prod(inverse(w.base()), w.shift());
  }
  return w;
}

// ---------------------------------------------------------------------------
// Finite projections

struct Syllable {
  std::int64_t index;
  int sign;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Reduced word in the free group F_N.
class FreeWord {
 public:
  FreeWord() = default;

  // Free reduction by a single stack pass.
  static FreeWord reduce(std::span<const Syllable> letters) {
    FreeWord out;
    for (const auto& s : letters) out.push(s);
    return out;
  }

  void push(const Syllable& s) {
    if (!letters_.empty() && letters_.back().index == s.index && letters_.back().sign == -s.sign) {
      letters_.pop_back();
    } else {
      letters_.push_back(s);
    }
  }

  const std::vector<Syllable>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  FreeWord inverse() const {
    FreeWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back({it->index, -it->sign});
    return out;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  std::string str() const {
    if (letters_.empty()) return "eps";
    std::string out;
    for (const auto& s : letters_) {
      if (!out.empty()) out += " ";
      out += (s.sign > 0 ? "a" : "A") + std::to_string(s.index);
    }
    return out;
  }

 private:
  std::vector<Syllable> letters_;
};

namespace detail {

inline void truncate_into(const WordTerm& w, std::int64_t stage, std::vector<Syllable>& out) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon: return;
    case K::Letter:
      if (w.index() <= stage) out.push_back({w.index(), w.sign()});
      return;
    case K::Concat:
      for (const auto& p : w.parts()) truncate_into(p, stage, out);
      return;
    case K::OmegaProd:
    case K::OmegaStarProd: {
      auto lowest = min_index(w.base());
      if (!lowest || *lowest > stage) return;
      // Factors 1..k_max have a letter of index <= stage.
      const std::int64_t k_max = (stage - *lowest) / w.shift() + 1;
      if (w.is(K::OmegaProd)) {
        for (std::int64_t k = 1; k <= k_max; ++k) truncate_into(shift(w.base(), (k - 1) * w.shift()), stage, out);
      } else {
        for (std::int64_t k = k_max; k >= 1; --k) truncate_into(shift(w.base(), (k - 1) * w.shift()), stage, out);
      }
      return;
    }
  }
}

}  // namespace detail

// Letters of index at most `stage`, in order, without reduction.
inline std::vector<Syllable> truncate(const WordTerm& w, std::int64_t stage) {
  std::vector<Syllable> out;
  detail::truncate_into(w, stage, out);
  return out;
}

// Image in F_stage: delete letters of index > stage, then freely reduce.
inline FreeWord project(const WordTerm& w, std::int64_t stage) {
  auto letters = truncate(w, stage);
  return FreeWord::reduce(letters);
}

// True iff every projection up to `stages` agrees. A false answer is a proof of
// inequality; a true answer is evidence bounded by `stages`.
inline bool equal_up_to(const WordTerm& lhs, const WordTerm& rhs, std::int64_t stages) {
  for (std::int64_t n = 1; n <= stages; ++n) {
    if (project(lhs, n) != project(rhs, n)) return false;
  }
  return true;
}

// First stage at which the projections differ.
inline std::optional<std::int64_t> first_difference(const WordTerm& lhs, const WordTerm& rhs, std::int64_t stages) {
  for (std::int64_t n = 1; n <= stages; ++n) {
    if (project(lhs, n) != project(rhs, n)) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rewriting

inline WordTerm reduce_bounded(const WordTerm& w, unsigned depth);

namespace detail {

inline void flatten_word(const WordTerm& w, std::vector<WordTerm>& out) {
  if (w.is(WordTerm::Kind::Epsilon)) return;
  if (w.is(WordTerm::Kind::Concat)) {
    for (const auto& p : w.parts()) flatten_word(p, out);
    return;
  }
  out.push_back(w);
}

inline WordTerm from_items(std::vector<WordTerm> items) {
  if (items.empty()) return WordTerm::epsilon();
  if (items.size() == 1) return items.front();
  return WordTerm::concat(std::move(items));
}

inline std::vector<WordTerm> items_of(const WordTerm& w) {
  std::vector<WordTerm> out;
  flatten_word(w, out);
  return out;
}

inline bool cancels(const WordTerm& a, const WordTerm& b) {
  return a.is(WordTerm::Kind::Letter) && b.is(WordTerm::Kind::Letter) && a.index() == b.index() &&
         a.sign() == -b.sign();
}

inline std::optional<WordTerm> first_letter(const WordTerm& w) {
  auto items = items_of(w);
  if (items.empty() || !items.front().is(WordTerm::Kind::Letter)) return std::nullopt;
  return items.front();
}

inline std::optional<WordTerm> last_letter(const WordTerm& w) {
  auto items = items_of(w);
  if (items.empty() || !items.back().is(WordTerm::Kind::Letter)) return std::nullopt;
  return items.back();
}

// Stack reduction of a flat item sequence. A letter facing the head of an OmegaProd
// (or the tail of an OmegaStarProd) with its inverse triggers one unfolding, at most
// `budget` times in total.
inline std::vector<WordTerm> reduce_items(const std::vector<WordTerm>& input, unsigned& budget) {
  using K = WordTerm::Kind;
  std::vector<WordTerm> stack;
  std::vector<WordTerm> pending(input.rbegin(), input.rend());
  while (!pending.empty()) {
    WordTerm item = pending.back();
    pending.pop_back();
    if (item.is(K::Epsilon)) continue;
    if (item.is(K::Concat)) {
      for (auto it = item.parts().rbegin(); it != item.parts().rend(); ++it) pending.push_back(*it);
      continue;
    }
    if (item.is(K::Letter)) {
      if (!stack.empty() && cancels(stack.back(), item)) {
        stack.pop_back();
        continue;
      }
      if (!stack.empty() && stack.back().is(K::OmegaStarProd) && budget > 0) {
        const auto prod = stack.back();
        auto tail = last_letter(prod.base());
        if (tail && cancels(*tail, item)) {
          --budget;
          stack.pop_back();
          // wsprod(b; s) = wsprod(shift(b, s); s) . b
          pending.push_back(item);
          auto base_items = items_of(prod.base());
          for (auto it = base_items.rbegin(); it != base_items.rend(); ++it) pending.push_back(*it);
          stack.push_back(WordTerm::omega_star_prod(shift(prod.base(), prod.shift()), prod.shift()));
          continue;
        }
      }
      stack.push_back(item);
      continue;
    }
    if (item.is(K::OmegaProd) && !stack.empty() && stack.back().is(K::Letter) && budget > 0) {
      auto head = first_letter(item.base());
      if (head && cancels(stack.back(), *head)) {
        --budget;
        // wprod(b; s) = b . wprod(shift(b, s); s)
        pending.push_back(WordTerm::omega_prod(shift(item.base(), item.shift()), item.shift()));
        auto base_items = items_of(item.base());
        for (auto it = base_items.rbegin(); it != base_items.rend(); ++it) pending.push_back(*it);
        continue;
      }
    }
    stack.push_back(item);
  }
  return stack;
}

}  // namespace detail

// If w = wprod(P.Q; s) with Q equal to shift(P, s)^-1, every interior pair cancels and
// the product collapses to P. Dually wsprod(P.Q; s) collapses to Q when P equals
// shift(Q, s)^-1. Returns nullopt whenever the pattern does not match.
inline std::optional<WordTerm> telescope(const WordTerm& w, unsigned depth = 8) {
  using K = WordTerm::Kind;
  validate(w);
  if (!w.is(K::OmegaProd) && !w.is(K::OmegaStarProd)) return std::nullopt;
  auto items = detail::items_of(w.base());
  for (std::size_t split = 1; split < items.size(); ++split) {
    auto p = detail::from_items({items.begin(), items.begin() + split});
    auto q = detail::from_items({items.begin() + split, items.end()});
    if (w.is(K::OmegaProd)) {
      // Q . shift(P, s) must reduce to the empty word.
      if (reduce_bounded(WordTerm::concat({q, shift(p, w.shift())}), depth).is(K::Epsilon)) return p;
    } else {
      if (reduce_bounded(WordTerm::concat({shift(q, w.shift()), p}), depth).is(K::Epsilon)) return q;
    }
  }
  return std::nullopt;
}

// Sound but incomplete simplification: unit elimination, free cancellation, bounded
// head/tail unfolding of products and the telescope rule.
inline WordTerm reduce_bounded(const WordTerm& w, unsigned depth) {
  using K = WordTerm::Kind;
  switch (w.kind()) {
    case K::Epsilon:
    case K::Letter: return w;
    case K::OmegaProd:
    case K::OmegaStarProd: {
      auto base = reduce_bounded(w.base(), depth);
      if (base.is(K::Epsilon)) return base;
      auto rebuilt = w.is(K::OmegaProd) ? WordTerm::omega_prod(base, w.shift())
                                        : WordTerm::omega_star_prod(base, w.shift());
      if (auto collapsed = telescope(rebuilt, depth)) return reduce_bounded(*collapsed, depth);
      return rebuilt;
    }
    case K::Concat: {
      std::vector<WordTerm> items;
      for (const auto& p : w.parts()) detail::flatten_word(reduce_bounded(p, depth), items);
      unsigned budget = depth;
      return detail::from_items(detail::reduce_items(items, budget));
    }
  }
  return w;
}

}  // namespace scatterlab
