#pragma once

#include <string>
#include <vector>

#include "rt/rational.hpp"

namespace rt {

// Element of SL(2,Z).  Construct through sl2() so the determinant is
// checked once and trusted everywhere after.
struct SL2Matrix {
  long long a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;
};

SL2Matrix sl2(long long a, long long b, long long c, long long d);
SL2Matrix sl2_mul(const SL2Matrix& u, const SL2Matrix& v);
SL2Matrix sl2_inverse(const SL2Matrix& u);
SL2Matrix sl2_neg(const SL2Matrix& u);
SL2Matrix sl2_xi();                      // [[0,-1],[1,0]]
SL2Matrix sl2_theta(long long n = 1);    // [[1,n],[0,1]]

// Expansion (m_1,...,m_t) encodes Theta^{m_t} Xi ... Theta^{m_1} Xi.
using Expansion = std::vector<long long>;

// Multiply out an expansion via the first/second-column recurrences.
SL2Matrix expansion_to_matrix(const Expansion& c);

// Negative continued fraction of p/q (gcd 1, q != 0):
// p/q = m_t - 1/(m_{t-1} - 1/(... - 1/m_1)), inner entries >= 2.
// The resulting expansion has first column +-(p,q)^T.
Expansion continued_fraction(long long p, long long q);

// sign * U = V * Theta^n with V determined by U:
//  - c == 0:  theta_power=true, V = identity (U is +-Theta^n)
//  - a == 0:  xi_branch=true, V = Xi
//  - else:    V = expansion_to_matrix(C) with every partial a_k nonzero
struct Decomposition {
  bool theta_power = false;
  bool xi_branch = false;
  Expansion C;
  long long n = 0;
  int sign = 1;
};
Decomposition decompose_nonvanishing(const SL2Matrix& u);

// Least nonnegative residue of a mod m (m > 0).
long long mod_pos(long long a, long long m);

// g = gcd(a, b) >= 0 with a x + b y = g.
long long extended_gcd(long long a, long long b, long long& x, long long& y);

// Inverse of a in the unit group of Z/mZ (m > 0, gcd(a, m) = 1).
long long mod_inverse(long long a, long long m);

// Classical Dedekind sum s(d, c) = sum_{j=1}^{|c|-1} ((j/c))((dj/c)),
// exact.  Requires c != 0 and gcd(d, c) = 1; s(d, +-1) = 0.
Rational dedekind_sum(long long d, long long c);

// Same value through the cotangent representation, in floating point;
// kept as an independent consistency check of the exact routine.
double dedekind_sum_cotangent(long long d, long long c);

// S(a/b) = 12 sign(b) s(a, b).  Requires a, b nonzero and coprime.
Rational dedekind_symbol(long long a, long long b);

// Rademacher's function: (a+d)/c - 12 sign(c) s(d,c) for c != 0, b/d else.
Rational rademacher_phi(const SL2Matrix& u);

}  // namespace rt
