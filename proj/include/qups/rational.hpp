#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qups {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Exact rational on int64 numerator/denominator.  All intermediates go
// through __int128; results that do not fit back into int64 raise
// std::overflow_error instead of silently wrapping.
struct Rational {
  i64 num = 0;
  i64 den = 1;  // always > 0, gcd(|num|, den) == 1

  Rational() = default;
  Rational(i64 n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(i64 n, i64 d) { *this = make(n, d); }

  static i64 checked_i64(i128 v, const char* ctx) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
      throw std::overflow_error(std::string("rational overflow in ") + ctx);
    return static_cast<i64>(v);
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rational r;
    r.num = checked_i64(n, "normalize");
    r.den = checked_i64(d, "normalize");
    return r;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational operator+(const Rational& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
  }
  Rational operator-(const Rational& o) const {
    return make(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
  }
  Rational operator*(const Rational& o) const {
    return make(i128(num) * o.num, i128(den) * o.den);
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("rational division by zero");
    return make(i128(num) * o.den, i128(den) * o.num);
  }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return i128(num) * o.den < i128(o.num) * den; }
  bool operator<=(const Rational& o) const { return i128(num) * o.den <= i128(o.num) * den; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  Rational abs() const { Rational r = *this; if (r.num < 0) r.num = -r.num; return r; }

  std::string str() const {
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
  }
};

inline i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) { i64 t = a % b; a = b; b = t; }
  return a;
}

inline i64 lcm_checked(i64 a, i64 b, const char* ctx) {
  if (a == 0 || b == 0) return 0;
  i128 l = i128(a) / gcd_i64(a, b) * b;
  return Rational::checked_i64(l < 0 ? -l : l, ctx);
}

inline i64 mul_checked(i64 a, i64 b, const char* ctx) {
  return Rational::checked_i64(i128(a) * b, ctx);
}

}  // namespace qups
