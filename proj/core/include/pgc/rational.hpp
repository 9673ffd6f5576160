#pragma once
// rational.hpp — exact rational arithmetic on 64-bit numerator/denominator.
// Intermediates use __int128; overflow raises RationalOverflow instead of
// wrapping silently.

#include <cstdint>
#include <numeric>
#include <string>

#include "pgc/errors.hpp"

namespace pgc {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return double(num_) / double(den_); }
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) fail(ErrorCode::RationalOverflow, "division by zero");
    return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }

  Rational pow(int e) const {
    Rational r(1);
    Rational base = *this;
    if (e < 0) { base = Rational(1) / base; e = -e; }
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

 private:
  static Rational make(__int128 n, __int128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }
  void assign(__int128 n, __int128 d) {
    if (d == 0) fail(ErrorCode::RationalOverflow, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    const __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      fail(ErrorCode::RationalOverflow, "value exceeds 64-bit rational range");
    num_ = (std::int64_t)n;
    den_ = (std::int64_t)d;
  }
  void normalize() { assign(num_, den_); }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational double_factorial_odd(int n) {
  // (n-1)!! for even n >= 0, i.e. 1*3*5*...*(n-1); n odd -> 0 by convention.
  if (n % 2 != 0) return Rational(0);
  Rational r(1);
  for (int k = n - 1; k >= 1; k -= 2) r *= Rational(k);
  return r;
}

inline std::int64_t binomial64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) fail(ErrorCode::RationalOverflow, "binomial overflow");
  }
  return (std::int64_t)r;
}

}  // namespace pgc
