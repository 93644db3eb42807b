#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "dcnet/errors.hpp"

namespace dcnet {

// Small exact rational on 64-bit terms.  Used for unit conversions so that
// rate round-trips are exact; not meant for long arithmetic chains.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    require_config(den_ != 0, "rational with zero denominator");
    normalize();
  }

  // Exact conversion: every finite double is a dyadic rational.  Throws if
  // the value cannot be represented in 64-bit terms.
  static Rational from_double(double v) {
    require_config(std::isfinite(v), "rational from non-finite value");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double frac = std::frexp(v, &exp);  // v = frac * 2^exp, |frac| in [0.5, 1)
    // Scale the fraction to an integer (53-bit significand).
    for (int i = 0; i < 64 && frac != std::floor(frac); ++i) {
      frac *= 2.0;
      --exp;
    }
    require_config(frac == std::floor(frac) && std::abs(frac) <= 9.0e18,
                   "value too precise for 64-bit rational");
    auto mant = static_cast<std::int64_t>(frac);
    Rational r(mant);
    while (exp > 0) {
      r = r * Rational(2);
      --exp;
    }
    while (exp < 0) {
      r = r / Rational(2);
      ++exp;
    }
    return r;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  bool positive() const { return num_ > 0; }
  bool zero() const { return num_ == 0; }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce before multiplying to keep terms small.
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    return Rational(mul_checked(a.num_ / g1, b.num_ / g2),
                    mul_checked(a.den_ / g2, b.den_ / g1));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    require_config(b.num_ != 0, "rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t lhs = mul_checked(a.num_, b.den_ / g);
    std::int64_t rhs = mul_checked(b.num_, a.den_ / g);
    return Rational(lhs + rhs, mul_checked(a.den_, b.den_ / g));
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend bool operator<(const Rational& a, const Rational& b) {
    return (a - b).num_ < 0;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  static std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    require_config(p <= INT64_MAX && p >= INT64_MIN, "rational overflow");
    return static_cast<std::int64_t>(p);
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace dcnet
