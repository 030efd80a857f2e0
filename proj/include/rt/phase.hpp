#pragma once

#include <cmath>
#include <complex>

#include "rt/rational.hpp"

namespace rt {

// Trigonometric evaluation at exact rational multiples of pi.  The argument
// is reduced by periodicity in exact arithmetic and folded into [0, 1/2]
// before any floating-point operation, so quarter-period values come out
// exactly 0 or +-1 and nearby values carry no reduction error.

inline double sin_pi(const Rational& t) {
  Rational x = t.mod2();  // [0, 2)
  double sign = 1.0;
  if (x >= Rational(1)) {
    x -= Rational(1);
    sign = -1.0;
  }
  // x in [0, 1); fold across 1/2.
  if (x > Rational(1, 2)) x = Rational(1) - x;
  if (x.num() == 0) return 0.0;
  if (x == Rational(1, 2)) return sign;
  return sign * std::sin(M_PI * x.to_double());
}

inline double cos_pi(const Rational& t) { return sin_pi(t + Rational(1, 2)); }

// exp(pi * i * t)
inline std::complex<double> exp_pi_i(const Rational& t) {
  return {cos_pi(t), sin_pi(t)};
}

// i^k for integer k (negative allowed)
inline std::complex<double> i_pow(long long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace rt
