#include "rt/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rt/errors.hpp"

namespace rt {

namespace {

long long mul_checked(long long x, long long y) {
  __int128 p = static_cast<__int128>(x) * y;
  if (p < INT64_MIN || p > INT64_MAX)
    throw std::overflow_error("SL(2,Z) entry exceeds 64-bit range");
  return static_cast<long long>(p);
}

long long add_checked(long long x, long long y) {
  __int128 s = static_cast<__int128>(x) + y;
  if (s < INT64_MIN || s > INT64_MAX)
    throw std::overflow_error("SL(2,Z) entry exceeds 64-bit range");
  return static_cast<long long>(s);
}

int sign_of(long long x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Partial numerators a_1..a_t of an expansion (first recurrence of the
// word product: a_k = m_k a_{k-1} - a_{k-2} with a_0 = 1, a_{-1} = 0).
std::vector<long long> partial_numerators(const Expansion& c) {
  std::vector<long long> a;
  long long prev2 = 0, prev1 = 1;
  for (long long m : c) {
    long long cur = add_checked(mul_checked(m, prev1), -prev2);
    a.push_back(cur);
    prev2 = prev1;
    prev1 = cur;
  }
  return a;
}

}  // namespace

SL2Matrix sl2(long long a, long long b, long long c, long long d) {
  __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (det != 1) throw InputError("matrix is not in SL(2,Z)");
  return SL2Matrix{a, b, c, d};
}

SL2Matrix sl2_mul(const SL2Matrix& u, const SL2Matrix& v) {
  return SL2Matrix{
      add_checked(mul_checked(u.a, v.a), mul_checked(u.b, v.c)),
      add_checked(mul_checked(u.a, v.b), mul_checked(u.b, v.d)),
      add_checked(mul_checked(u.c, v.a), mul_checked(u.d, v.c)),
      add_checked(mul_checked(u.c, v.b), mul_checked(u.d, v.d))};
}

SL2Matrix sl2_inverse(const SL2Matrix& u) {
  return SL2Matrix{u.d, -u.b, -u.c, u.a};
}

SL2Matrix sl2_neg(const SL2Matrix& u) {
  return SL2Matrix{-u.a, -u.b, -u.c, -u.d};
}

SL2Matrix sl2_xi() { return SL2Matrix{0, -1, 1, 0}; }

SL2Matrix sl2_theta(long long n) { return SL2Matrix{1, n, 0, 1}; }

SL2Matrix expansion_to_matrix(const Expansion& c) {
  // columns evolve as (a,c) <- (m*a - c, a), (b,d) <- (m*b - d, b)
  long long a = 1, b = 0, cc = 0, d = 1;
  for (long long m : c) {
    long long na = add_checked(mul_checked(m, a), -cc);
    long long nb = add_checked(mul_checked(m, b), -d);
    cc = a;
    d = b;
    a = na;
    b = nb;
  }
  return SL2Matrix{a, b, cc, d};
}

Expansion continued_fraction(long long p, long long q) {
  if (q == 0) throw InputError("continued fraction needs a nonzero denominator");
  if (std::gcd(p, q) != 1) throw InputError("continued fraction needs coprime inputs");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  Expansion outer_first;
  while (true) {
    // m = ceil(p/q), q > 0
    long long m = p / q + ((p % q != 0 && p > 0) ? 1 : 0);
    outer_first.push_back(m);
    long long rem = mul_checked(m, q) - p;  // in [0, q)
    if (rem == 0) break;
    p = q;
    q = rem;
  }
  std::reverse(outer_first.begin(), outer_first.end());
  return outer_first;
}

Decomposition decompose_nonvanishing(const SL2Matrix& u) {
  Decomposition res;
  if (u.c == 0) {
    // u = +-Theta^n with the sign equal to the diagonal
    res.theta_power = true;
    res.sign = static_cast<int>(u.a);
    res.n = u.a * u.b;
    return res;
  }
  if (u.a == 0) {
    // -bc = 1, so c = -b = +-1 and sign*U = Xi*Theta^n
    res.xi_branch = true;
    res.sign = static_cast<int>(u.c);
    res.n = u.c * u.d;
    SL2Matrix check = sl2_mul(sl2_xi(), sl2_theta(res.n));
    SL2Matrix su = res.sign > 0 ? u : sl2_neg(u);
    if (!(check == su)) throw std::logic_error("Xi-branch decomposition failed");
    return res;
  }

  Expansion c = continued_fraction(u.a, u.c);
  // Normalize so every partial numerator is nonzero: whenever a_i = 0 the
  // prefix B^(m_1..m_i) equals +-Xi*Theta^j, and Xi^2 = -1 collapses it
  // together with the next entry into a Theta power on the right.  This
  // keeps the first column of the word fixed up to sign, so the final
  // Theta-power solve below absorbs the collapsed factors automatically.
  while (true) {
    auto part = partial_numerators(c);
    long long zero_at = -1;
    for (long long i = static_cast<long long>(part.size()) - 1; i >= 0; --i)
      if (part[i] == 0) {
        zero_at = i;
        break;
      }
    if (zero_at < 0) break;
    size_t i = static_cast<size_t>(zero_at);
    if (i + 1 >= c.size())
      throw std::logic_error("vanishing leading numerator with c != 0");
    Expansion next(c.begin() + i + 2, c.end());
    if (next.empty()) throw std::logic_error("expansion collapsed with c != 0");
    c = std::move(next);
  }

  SL2Matrix b = expansion_to_matrix(c);
  int s;
  if (b.a == u.a && b.c == u.c)
    s = 1;
  else if (b.a == -u.a && b.c == -u.c)
    s = -1;
  else
    throw std::logic_error("expansion does not reproduce the first column");
  // With matching first columns, B^{-1} (s U) is an upper unitriangular
  // matrix, i.e. a Theta power.
  SL2Matrix su = s > 0 ? u : sl2_neg(u);
  SL2Matrix m = sl2_mul(sl2_inverse(b), su);
  if (m.c != 0 || m.a != 1)
    throw std::logic_error("Theta-power solve failed");

  res.C = c;
  res.n = m.b;
  res.sign = s;

  // verified by multiplication
  SL2Matrix rhs = sl2_mul(b, sl2_theta(res.n));
  SL2Matrix lhs = res.sign > 0 ? u : sl2_neg(u);
  if (!(rhs == lhs)) throw std::logic_error("decomposition verification failed");
  return res;
}

// Exact evaluation by reciprocity along the Euclid chain,
//   s(d, n) = (d^2 + n^2 + 1 - 3 d n) / (12 d n) - s(n mod d, d),
// anchored at s(0, 1) = 0.  Unwinding bottom-up keeps every intermediate a
// true Dedekind sum, whose reduced form fits 64 bits (6 n s(d, n) is an
// integer) for |c| up to a few 10^9; the unreduced cross products ride
// through the 128-bit constructor.  O(log c) against the definitional
// sawtooth sum's O(c).
long long mod_pos(long long a, long long m) {
  if (m <= 0) throw InputError("modulus must be positive");
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long extended_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long long x1 = 0, y1 = 0;
  long long g = extended_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long mod_inverse(long long a, long long m) {
  long long x = 0, y = 0;
  long long g = extended_gcd(mod_pos(a, m), m, x, y);
  if (g != 1) throw InputError("element is not invertible modulo m");
  return mod_pos(x, m);
}

Rational dedekind_sum(long long d, long long c) {
  if (c == 0) throw InputError("Dedekind sum needs c != 0");
  if (std::gcd(d, c) != 1) throw InputError("Dedekind sum needs gcd(d,c)=1");
  long long n = c < 0 ? -c : c;
  d %= n;
  if (d < 0) d += n;
  std::vector<std::pair<long long, long long>> chain;
  while (d > 0) {
    chain.emplace_back(d, n);
    long long next = n % d;
    n = d;
    d = next;
  }
  Rational s(0);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    auto [dk, nk] = *it;
    __int128 den = static_cast<__int128>(12) * dk * nk;
    __int128 num = static_cast<__int128>(dk) * dk +
                   static_cast<__int128>(nk) * nk + 1 -
                   static_cast<__int128>(3) * dk * nk;
    s = Rational::make(num * s.den() - static_cast<__int128>(s.num()) * den,
                       den * s.den());
  }
  return s;
}

double dedekind_sum_cotangent(long long d, long long c) {
  if (c == 0) throw InputError("Dedekind sum needs c != 0");
  if (std::gcd(d, c) != 1) throw InputError("Dedekind sum needs gcd(d,c)=1");
  long long n = c < 0 ? -c : c;
  double s = 0.0;
  for (long long j = 1; j < n; ++j) {
    double x = M_PI * static_cast<double>(j) / static_cast<double>(c);
    double y = M_PI * static_cast<double>(d) * static_cast<double>(j) /
               static_cast<double>(c);
    // gcd(d,c)=1 keeps both arguments away from the cotangent poles
    s += (std::cos(x) / std::sin(x)) * (std::cos(y) / std::sin(y));
  }
  return s / (4.0 * static_cast<double>(n));
}

Rational dedekind_symbol(long long a, long long b) {
  if (a == 0 || b == 0) throw InputError("Dedekind symbol needs a,b != 0");
  return Rational(12 * sign_of(b)) * dedekind_sum(a, b);
}

Rational rademacher_phi(const SL2Matrix& u) {
  if (u.c == 0) return Rational(u.b, u.d);
  return Rational(u.a + u.d, u.c) -
         Rational(12 * sign_of(u.c)) * dedekind_sum(u.d, u.c);
}

}  // namespace rt
