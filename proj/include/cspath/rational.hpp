#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cspath {

using Int128 = __int128;

std::string to_string(Int128 value);

// Overflow-checked primitives; throw std::overflow_error.
Int128 checked_add(Int128 lhs, Int128 rhs);
Int128 checked_mul(Int128 lhs, Int128 rhs);

/// Exact rational number with a positive denominator, always in lowest terms.
/// All arithmetic is overflow-checked, so a result is either exact or an
/// exception.
class Rational {
 public:
  Rational() = default;
  Rational(Int128 num, Int128 den = 1);  // NOLINT(google-explicit-constructor)

  Int128 num() const { return num_; }
  Int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  Int128 num_ = 0;
  Int128 den_ = 1;
};

/// Parses "p", "-p" or "p/q".
Rational parse_rational(std::string_view text);

}  // namespace cspath
