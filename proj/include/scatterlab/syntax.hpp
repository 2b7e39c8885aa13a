#pragma once

// Surface syntax for order terms and words.
//
//   term   := summand ('+' summand)*
//   summand:= 0 | 1 | <n> | eta | w | w* | z | omega(term) | omegastar(term)
//           | rev(term) | '(' term ')'
//   word   := factor ('.' factor)*
//   factor := a<n> | A<n> | eps | wprod(word; <n>) | wsprod(word; <n>) | inv(word)
//           | '(' word ')'

#include "scatterlab/error.hpp"
#include "scatterlab/order_term.hpp"
#include "scatterlab/words.hpp"

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scatterlab {

struct ParseFailure {
  std::size_t position = 0;
  std::vector<std::string> expected;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
      : Error(ErrorKind::Parse, describe(position, expected, found)), position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string describe(std::size_t position, const std::vector<std::string>& expected,
                              const std::string& found) {
    std::string set;
    for (const auto& e : expected) set += (set.empty() ? "" : ", ") + e;
    return "at column " + std::to_string(position + 1) + ": expected one of {" + set + "}, found " + found;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t pos = 0) : text_(text), pos_(pos) {}

  std::size_t position() const { return pos_; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }
  // Maximal run of letters, without consuming it.
  std::string peek_word() {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }
  void advance(std::size_t n) { pos_ += n; }
  bool digit_next() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  // Digits immediately at the cursor (no whitespace skipping).
  std::int64_t number_here() {
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == pos_) fail({"integer"});
    if (end - pos_ > 15) fail({"integer below 10^15"});
    const auto value = std::stoll(std::string(text_.substr(pos_, end - pos_)));
    pos_ = end;
    return value;
  }
  std::int64_t number() {
    skip_space();
    return number_here();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), found);
  }

 private:
  std::string_view text_;
  std::size_t pos_;
};

// ---------------------------------------------------------------------------
// Order terms

namespace detail {

inline OrderTerm parse_term(Scanner& s);

inline OrderTerm parse_summand(Scanner& s) {
  if (s.digit_next()) return OrderTerm::finite(static_cast<std::uint64_t>(s.number()));
  if (s.accept('(')) {
    auto t = parse_term(s);
    s.expect(')');
    return t;
  }
  const auto word = s.peek_word();
  auto wrapped = [&](auto build) {
    s.advance(word.size());
    s.expect('(');
    auto inner = parse_term(s);
    s.expect(')');
    return build(inner);
  };
  if (word == "eta") {
    s.advance(word.size());
    return OrderTerm::eta();
  }
  if (word == "w") {
    s.advance(1);
    if (s.accept('*')) return OrderTerm::omega_star(OrderTerm::one());
    return OrderTerm::omega(OrderTerm::one());
  }
  if (word == "z") {
    s.advance(1);
    return OrderTerm::zeta();
  }
  if (word == "omega") return wrapped([](const OrderTerm& t) { return OrderTerm::omega(t); });
  if (word == "omegastar") return wrapped([](const OrderTerm& t) { return OrderTerm::omega_star(t); });
  if (word == "rev") return wrapped([](const OrderTerm& t) { return reverse(t); });
  s.fail({"integer", "eta", "w", "w*", "z", "omega(", "omegastar(", "rev(", "'('"});
}

inline OrderTerm parse_term(Scanner& s) {
  std::vector<OrderTerm> parts{parse_summand(s)};
  while (s.accept('+')) parts.push_back(parse_summand(s));
  return OrderTerm::sum(std::move(parts));
}

// ---------------------------------------------------------------------------
// Words

inline WordTerm parse_word(Scanner& s);

inline WordTerm parse_factor(Scanner& s) {
  if (s.accept('(')) {
    auto w = parse_word(s);
    s.expect(')');
    return w;
  }
  const auto word = s.peek_word();
  if (word == "a" || word == "A") {
    s.advance(1);
    const auto index = s.number_here();
    return WordTerm::letter(index, word == "a" ? 1 : -1);
  }
  if (word == "eps") {
    s.advance(3);
    return WordTerm::epsilon();
  }
  if (word == "wprod" || word == "wsprod") {
    s.advance(word.size());
    s.expect('(');
    auto base = parse_word(s);
    s.expect(';');
    const auto shift = s.number();
    s.expect(')');
    return word == "wprod" ? WordTerm::omega_prod(base, shift) : WordTerm::omega_star_prod(base, shift);
  }
  if (word == "inv") {
    s.advance(3);
    s.expect('(');
    auto inner = parse_word(s);
    s.expect(')');
    return inverse(inner);
  }
  s.fail({"a<n>", "A<n>", "eps", "wprod(", "wsprod(", "inv(", "'('"});
}

inline WordTerm parse_word(Scanner& s) {
  std::vector<WordTerm> parts{parse_factor(s)};
  while (s.accept('.')) parts.push_back(parse_factor(s));
  if (parts.size() == 1) return parts.front();
  return WordTerm::concat(std::move(parts));
}

}  // namespace detail

inline OrderTerm parse_order_term(std::string_view text) {
  Scanner s(text);
  auto t = detail::parse_term(s);
  if (!s.at_end()) s.fail({"'+'", "end of input"});
  return t;
}

inline WordTerm parse_word(std::string_view text) {
  Scanner s(text);
  auto w = detail::parse_word(s);
  if (!s.at_end()) s.fail({"'.'", "end of input"});
  return w;
}

}  // namespace scatterlab
