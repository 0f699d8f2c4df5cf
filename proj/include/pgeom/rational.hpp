#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pgeom {

// Exact arithmetic overflowed the 64-bit rational representation.
// This is a hard error: silently falling back to floats would make
// symbolic-zero verdicts unreliable.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Rational number with 64-bit numerator/denominator, always reduced,
// denominator always positive.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(add128(mul128(a.num_, b.den_), mul128(b.num_, a.den_)),
                mul128(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(sub128(mul128(a.num_, b.den_), mul128(b.num_, a.den_)),
                mul128(a.den_, b.den_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(mul128(a.num_, b.num_), mul128(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(mul128(a.num_, b.den_), mul128(a.den_, b.num_));
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mul128(a.num_, b.den_) < mul128(b.num_, a.den_);
  }

  Rational pow(int e) const {
    if (e == 0) return Rational(1);
    if (num_ == 0 && e < 0) throw std::domain_error("Rational: 0^negative");
    Rational base = e > 0 ? *this : Rational(den_, num_);
    int n = e > 0 ? e : -e;
    Rational r(1);
    while (n > 0) {
      if (n & 1) r *= base;
      base = (n > 1) ? base * base : base;
      n >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static i128 mul128(i128 a, i128 b) { return a * b; }
  static i128 add128(i128 a, i128 b) { return a + b; }
  static i128 sub128(i128 a, i128 b) { return a - b; }

  static std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw OverflowError("rational arithmetic overflow (64-bit)");
    return static_cast<std::int64_t>(v);
  }

  static Rational make(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

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
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace pgeom
