#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rt {

namespace detail {

using int128 = __int128;

inline int128 iabs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
  a = iabs128(a);
  b = iabs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Exact rational number with 64-bit numerator/denominator and 128-bit
// intermediates.  Denominator is kept positive and the fraction reduced.
// Every quantity handled here (norms, phases, Dedekind sums) stays tiny,
// so a value that cannot be reduced back into 64 bits signals a logic
// error and throws std::overflow_error rather than degrading silently.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) { *this = make(n, d); }

  static Rational make(detail::int128 n, detail::int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr detail::int128 lo = INT64_MIN;
    constexpr detail::int128 hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using detail::int128;
    return make(int128(a.num_) * b.den_ + int128(b.num_) * a.den_,
                int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    using detail::int128;
    return make(int128(a.num_) * b.den_ - int128(b.num_) * a.den_,
                int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    using detail::int128;
    return make(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    using detail::int128;
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return make(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
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
    using detail::int128;
    return int128(a.num_) * b.den_ < int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  bool is_integer() const { return den_ == 1; }
  bool is_even_integer() const { return den_ == 1 && num_ % 2 == 0; }

  // Largest integer <= *this.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  // Representative in [0, 2): the canonical reduction for angles measured
  // in units of pi.
  Rational mod2() const {
    Rational half = *this / Rational(2);
    return *this - Rational(2) * Rational(half.floor());
  }
  // Representative in [0, 1).
  Rational mod1() const { return *this - Rational(floor()); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  long long num_;
  long long den_;
};

}  // namespace rt
