#include "cspath/rational.hpp"

#include <algorithm>
#include <charconv>

namespace cspath {

namespace {

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

std::string to_string(Int128 value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  // Work on the unsigned magnitude so the minimum value is representable.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                   : static_cast<unsigned __int128>(value);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int128 checked_add(Int128 lhs, Int128 rhs) {
  Int128 out;
  if (__builtin_add_overflow(lhs, rhs, &out)) throw std::overflow_error("128-bit addition overflow");
  return out;
}

Int128 checked_mul(Int128 lhs, Int128 rhs) {
  Int128 out;
  if (__builtin_mul_overflow(lhs, rhs, &out)) throw std::overflow_error("128-bit multiplication overflow");
  return out;
}

Rational::Rational(Int128 num, Int128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  Int128 g = gcd128(a.den_, b.den_);
  Int128 da = a.den_ / g;
  Int128 db = b.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)), checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first to keep intermediates small.
  Int128 g1 = gcd128(a.num_, b.den_);
  Int128 g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view part) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("not a rational: '" + std::string(part) + "'");
    }
    return static_cast<Int128>(v);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

}  // namespace cspath
