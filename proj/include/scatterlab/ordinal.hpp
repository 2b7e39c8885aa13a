#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace scatterlab {

// Ordinal below epsilon_0 in Cantor normal form: sum of w^exponent * coefficient
// with strictly decreasing exponents and positive coefficients. The empty sum is 0.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  // w^exponent * coefficient
  static Ordinal monomial(const Ordinal& exponent, std::uint64_t coefficient = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Only meaningful when is_finite().
  std::uint64_t finite_value() const;
  const std::vector<Term>& terms() const { return terms_; }

  Ordinal successor() const;

  friend Ordinal operator+(const Ordinal& lhs, const Ordinal& rhs);
  friend std::strong_ordering operator<=>(const Ordinal& lhs, const Ordinal& rhs);
  friend bool operator==(const Ordinal& lhs, const Ordinal& rhs);

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

inline Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal result;
  if (n > 0) result.terms_.push_back(Term{Ordinal{}, n});
  return result;
}

inline Ordinal Ordinal::omega() { return monomial(natural(1)); }

inline Ordinal Ordinal::monomial(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal result;
  if (coefficient > 0) result.terms_.push_back(Term{exponent, coefficient});
  return result;
}

inline bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent.is_zero());
}

inline std::uint64_t Ordinal::finite_value() const {
  return terms_.empty() ? 0 : terms_.front().coefficient;
}

inline Ordinal Ordinal::successor() const { return *this + natural(1); }

inline std::strong_ordering operator<=>(const Ordinal& lhs, const Ordinal& rhs) {
  const auto n = std::min(lhs.terms_.size(), rhs.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = lhs.terms_[i];
    const auto& b = rhs.terms_[i];
    if (auto c = a.exponent <=> b.exponent; c != 0) return c;
    if (auto c = a.coefficient <=> b.coefficient; c != 0) return c;
  }
  return lhs.terms_.size() <=> rhs.terms_.size();
}

inline bool operator==(const Ordinal& lhs, const Ordinal& rhs) { return (lhs <=> rhs) == 0; }

// Terms of lhs below the leading exponent of rhs are absorbed.
inline Ordinal operator+(const Ordinal& lhs, const Ordinal& rhs) {
  if (rhs.is_zero()) return lhs;
  const Ordinal& lead = rhs.terms_.front().exponent;
  Ordinal result;
  for (const auto& t : lhs.terms_) {
    auto c = t.exponent <=> lead;
    if (c > 0) {
      result.terms_.push_back(t);
    } else if (c == 0) {
      result.terms_.push_back(Ordinal::Term{t.exponent, t.coefficient + rhs.terms_.front().coefficient});
      result.terms_.insert(result.terms_.end(), rhs.terms_.begin() + 1, rhs.terms_.end());
      return result;
    } else {
      break;
    }
  }
  result.terms_.insert(result.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return result;
}

inline Ordinal max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

inline std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (t.exponent != natural(1)) {
      const bool simple = t.exponent.is_finite();
      out += simple ? "^" + t.exponent.str() : "^(" + t.exponent.str() + ")";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

}  // namespace scatterlab
