#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <numeric>
#include <string>

#include "reflectionlab/errors.hpp"

namespace reflectionlab {

using Int = std::int64_t;

namespace detail {

inline Int narrow128(__int128 v) {
  if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
    fail(ErrorKind::ArithmeticOverflow, "exact arithmetic overflow");
  return static_cast<Int>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Arithmetic is exact everywhere in the core; Rational keeps num/den in
/// lowest terms with positive denominator.
class Rational {
public:
  constexpr Rational() = default;
  Rational(Int n) : num_(n), den_(1) {}
  Rational(Int n, Int d) { assign(n, d); }

  Int num() const { return num_; }
  Int den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                __int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                __int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) fail(ErrorKind::ArithmeticOverflow, "division by zero");
    return make(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = __int128(a.num_) * b.den_;
    __int128 r = __int128(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  std::uint64_t hash() const {
    return detail::mix64(std::uint64_t(num_) * 0x100000001b3ULL ^
                         std::uint64_t(den_));
  }

private:
  static Rational make(__int128 n, __int128 d) {
    if (d == 0) fail(ErrorKind::ArithmeticOverflow, "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow128(n);
    r.den_ = detail::narrow128(d);
    return r;
  }

  void assign(Int n, Int d) { *this = make(n, d); }

  Int num_ = 0;
  Int den_ = 1;
};

/// Element of the real quadratic field Q(sqrt 5): value a + b*sqrt(5).
/// The representation is canonical (a, b in lowest terms), so equality and
/// is_zero are decidable exactly. Crystallographic types only ever use b = 0.
class QuadExt {
public:
  constexpr QuadExt() = default;
  QuadExt(Int n) : a_(n) {}
  QuadExt(const Rational& a) : a_(a) {}
  QuadExt(const Rational& a, const Rational& b) : a_(a), b_(b) {}

  static QuadExt sqrt5() { return QuadExt(Rational(0), Rational(1)); }
  /// The golden ratio (1 + sqrt 5)/2.
  static QuadExt golden() { return QuadExt(Rational(1, 2), Rational(1, 2)); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// Exact sign of a + b*sqrt(5).
  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 5 b^2.
    Rational a2 = a_ * a_;
    Rational b25 = b_ * b_ * Rational(5);
    if (a2 == b25) return 0;  // cannot happen (sqrt5 irrational) unless zero
    return (a2 > b25) ? sa : sb;
  }

  QuadExt operator-() const { return QuadExt(-a_, -b_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a_ * y.a_ + Rational(5) * x.b_ * y.b_,
                   x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    // 1/(a+b r5) = (a-b r5)/(a^2-5 b^2)
    Rational norm = y.a_ * y.a_ - Rational(5) * y.b_ * y.b_;
    if (norm.is_zero()) fail(ErrorKind::ArithmeticOverflow, "division by zero");
    return QuadExt((x.a_ * y.a_ - Rational(5) * x.b_ * y.b_) / norm,
                   (x.b_ * y.a_ - x.a_ * y.b_) / norm);
  }

  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) {
    return !(x == y);
  }
  friend bool operator<(const QuadExt& x, const QuadExt& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) {
    return !(y < x);
  }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) {
    return !(x < y);
  }

  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string s;
    if (!a_.is_zero()) s = a_.to_string();
    if (b_.sign() > 0 && !s.empty()) s += "+";
    s += b_.to_string() + "r5";
    return s;
  }

  std::uint64_t hash() const {
    return detail::mix64(a_.hash() ^ (b_.hash() << 1 | b_.hash() >> 63));
  }

private:
  Rational a_;
  Rational b_;
};

/// The exact field of coefficients used throughout the core.
using Scalar = QuadExt;

inline QuadExt abs(const QuadExt& x) { return x.sign() < 0 ? -x : x; }

}  // namespace reflectionlab

template <>
struct std::hash<reflectionlab::Rational> {
  std::size_t operator()(const reflectionlab::Rational& r) const {
    return r.hash();
  }
};

template <>
struct std::hash<reflectionlab::QuadExt> {
  std::size_t operator()(const reflectionlab::QuadExt& q) const {
    return q.hash();
  }
};
