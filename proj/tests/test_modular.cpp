#include <doctest.h>

#include <numeric>
#include <random>

#include "rt/errors.hpp"
#include "rt/modular.hpp"

using rt::Expansion;
using rt::Rational;
using rt::SL2Matrix;

namespace {

// Random element of SL(2,Z): coprime first column via rejection, second
// column from the extended Euclid relation shifted by a random multiple.
SL2Matrix random_sl2(std::mt19937_64& rng, long long bound, long long shift) {
  std::uniform_int_distribution<long long> dist(-bound, bound);
  std::uniform_int_distribution<long long> tdist(-shift, shift);
  while (true) {
    long long a = dist(rng), c = dist(rng);
    if (a == 0 && c == 0) continue;
    if (std::gcd(a, c) != 1) continue;
    // solve a*d - c*b = 1
    long long x = 0, y = 0;
    for (long long d = -bound * 2 - 1; d <= bound * 2 + 1; ++d) {
      __int128 num = static_cast<__int128>(a) * d - 1;
      if (c == 0) {
        if (a == 1) { x = 1; y = 0; break; }
        if (a == -1) { x = -1; y = 0; break; }
      } else if (num % c == 0) {
        long long b = static_cast<long long>(num / c);
        x = d;
        y = b;
        break;
      }
    }
    long long t = tdist(rng);
    return rt::sl2(a, y + t * a, c, x + t * c);
  }
}

}  // namespace

TEST_SUITE("modular") {
  TEST_CASE("construction enforces the determinant") {
    CHECK_THROWS_AS(rt::sl2(1, 1, 1, 1), rt::InputError);
    CHECK_THROWS_AS(rt::sl2(2, 0, 0, 1), rt::InputError);
    auto u = rt::sl2(5, -3, 2, -1);
    CHECK(u.a == 5);
    auto inv = rt::sl2_inverse(u);
    CHECK(rt::sl2_mul(u, inv) == rt::sl2_theta(0));
  }

  TEST_CASE("generator relations") {
    auto xi = rt::sl2_xi();
    auto neg_id = rt::sl2_neg(rt::sl2_theta(0));
    CHECK(rt::sl2_mul(xi, xi) == neg_id);
    auto xt = rt::sl2_mul(xi, rt::sl2_theta(1));
    CHECK(rt::sl2_mul(xt, rt::sl2_mul(xt, xt)) == neg_id);
    // the same relations through expansion products
    CHECK(rt::expansion_to_matrix({0, 0}) == neg_id);
  }

  TEST_CASE("expansion products") {
    CHECK(rt::expansion_to_matrix({}) == rt::sl2_theta(0));
    for (long long m = -4; m <= 4; ++m) {
      auto b = rt::expansion_to_matrix({m});
      CHECK(b == rt::sl2_mul(rt::sl2_theta(m), rt::sl2_xi()));
      CHECK(b.a == m);
      CHECK(b.c == 1);
    }
    auto b23 = rt::expansion_to_matrix({2, 3});
    CHECK(b23 == rt::sl2(5, -3, 2, -1));
    // recurrences match the brute-force word product on random expansions
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long long> m(-5, 5);
    std::uniform_int_distribution<int> len(0, 8);
    for (int t = 0; t < 200; ++t) {
      Expansion c(len(rng));
      for (auto& e : c) e = m(rng);
      SL2Matrix w = rt::sl2_theta(0);
      for (long long e : c) w = rt::sl2_mul(rt::sl2_mul(rt::sl2_theta(e), rt::sl2_xi()), w);
      CHECK(rt::expansion_to_matrix(c) == w);
    }
  }

  TEST_CASE("second-over-first column ratio expands as a telescoping sum") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long long> m(-5, 5);
    std::uniform_int_distribution<int> len(1, 7);
    int done = 0;
    while (done < 100) {
      Expansion c(len(rng));
      for (auto& e : c) e = m(rng);
      // partial numerators must all be nonzero for the telescoping form
      bool ok = true;
      long long p2 = 0, p1 = 1;
      std::vector<long long> part;
      for (long long e : c) {
        long long cur = e * p1 - p2;
        part.push_back(cur);
        p2 = p1;
        p1 = cur;
        if (cur == 0) ok = false;
      }
      if (!ok) continue;
      ++done;
      Rational sum(0);
      long long prev = 1;
      for (size_t k = 0; k < part.size(); ++k) {
        sum += Rational(1, part[k] * prev);
        prev = part[k];
      }
      auto b = rt::expansion_to_matrix(c);
      CHECK(Rational(b.b, b.a) == -sum);
    }
  }

  TEST_CASE("continued fraction examples and round trip") {
    CHECK(rt::continued_fraction(5, 2) == Expansion{2, 3});
    CHECK_THROWS_AS(rt::continued_fraction(1, 0), rt::InputError);
    CHECK_THROWS_AS(rt::continued_fraction(4, 2), rt::InputError);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> dist(-60, 60);
    int done = 0;
    while (done < 300) {
      long long p = dist(rng), q = dist(rng);
      if (q == 0 || std::gcd(p, q) != 1) continue;
      ++done;
      auto c = rt::continued_fraction(p, q);
      REQUIRE(!c.empty());
      // inner entries of the ceiling algorithm are >= 2
      for (size_t i = 0; i + 1 < c.size(); ++i) CHECK(c[i] >= 2);
      auto b = rt::expansion_to_matrix(c);
      bool plus = (b.a == p && b.c == q);
      bool minus = (b.a == -p && b.c == -q);
      CHECK((plus || minus));
      // nested-fraction value equals p/q
      Rational v(c[0]);
      for (size_t i = 1; i < c.size(); ++i) v = Rational(c[i]) - Rational(1) / v;
      CHECK(v == Rational(p, q));
    }
  }

  TEST_CASE("decomposition branch markers") {
    auto d1 = rt::decompose_nonvanishing(rt::sl2(0, -1, 1, 5));
    CHECK(d1.xi_branch);
    CHECK(!d1.theta_power);
    CHECK(d1.n == 5);
    CHECK(d1.sign == 1);

    auto d2 = rt::decompose_nonvanishing(rt::sl2(5, -3, 2, -1));
    CHECK(!d2.xi_branch);
    CHECK(d2.C == Expansion{2, 3});
    CHECK(d2.n == 0);
    CHECK(d2.sign == 1);

    auto d3 = rt::decompose_nonvanishing(rt::sl2_theta(7));
    CHECK(d3.theta_power);
    CHECK(d3.n == 7);
    CHECK(d3.sign == 1);

    auto d4 = rt::decompose_nonvanishing(rt::sl2_neg(rt::sl2_theta(3)));
    CHECK(d4.theta_power);
    CHECK(d4.n == 3);
    CHECK(d4.sign == -1);
  }

  TEST_CASE("decomposition round trip on random matrices") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 500; ++t) {
      auto u = random_sl2(rng, 50, 3);
      auto dec = rt::decompose_nonvanishing(u);
      SL2Matrix v = rt::sl2_theta(0);
      if (dec.xi_branch) {
        v = rt::sl2_xi();
      } else if (!dec.theta_power) {
        v = rt::expansion_to_matrix(dec.C);
        // all partial numerators nonzero
        long long p2 = 0, p1 = 1;
        for (long long e : dec.C) {
          long long cur = e * p1 - p2;
          CHECK(cur != 0);
          p2 = p1;
          p1 = cur;
        }
      }
      auto rhs = rt::sl2_mul(v, rt::sl2_theta(dec.n));
      auto lhs = dec.sign > 0 ? u : rt::sl2_neg(u);
      CHECK(rhs == lhs);
    }
  }

  TEST_CASE("Dedekind sums: values, symmetries, cotangent agreement") {
    CHECK(rt::dedekind_sum(0, 1) == Rational(0));
    CHECK(rt::dedekind_sum(5, 1) == Rational(0));
    CHECK(rt::dedekind_sum(4, -1) == Rational(0));
    CHECK(rt::dedekind_sum(1, 3) == Rational(1, 18));
    CHECK(rt::dedekind_sum(1, 2) == Rational(0));
    CHECK_THROWS_AS(rt::dedekind_sum(2, 4), rt::InputError);
    CHECK_THROWS_AS(rt::dedekind_sum(1, 0), rt::InputError);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> cd(2, 40);
    std::uniform_int_distribution<long long> dd(-40, 40);
    int done = 0;
    while (done < 200) {
      long long c = cd(rng), d = dd(rng);
      if (d == 0 || std::gcd(d, c) != 1) continue;
      ++done;
      auto s = rt::dedekind_sum(d, c);
      CHECK(rt::dedekind_sum(-d, c) == -s);
      CHECK(rt::dedekind_sum(d, -c) == s);
      // inverse symmetry: d*d' = 1 mod c
      long long dp = 0;
      for (long long k = 1; k < c; ++k)
        if ((static_cast<__int128>(k) * d - 1) % c == 0) {
          dp = k;
          break;
        }
      if (c > 1) {
        REQUIRE(dp != 0);
        CHECK(rt::dedekind_sum(dp, c) == s);
      }
      CHECK(std::abs(s.to_double() - rt::dedekind_sum_cotangent(d, c)) < 1e-10);
    }
  }

  TEST_CASE("Dedekind symbol") {
    CHECK(rt::dedekind_symbol(9, 64) == Rational(-63, 32));
    CHECK(rt::dedekind_symbol(25, 64) == Rational(-63, 32));
    CHECK(rt::dedekind_symbol(7, 1) == Rational(0));
    CHECK(rt::dedekind_symbol(3, -5) == -rt::dedekind_symbol(3, 5));
    CHECK_THROWS_AS(rt::dedekind_symbol(0, 3), rt::InputError);
    // depends only on the fraction: S(a/b) = S(ka/kb) is not defined for
    // k>1 (coprimality), but sign flips cancel: S(-a/-b) = S(a/b)
    CHECK(rt::dedekind_symbol(-9, -64) == Rational(-63, 32));
  }

  TEST_CASE("Rademacher function: branches and examples") {
    for (long long b = -6; b <= 6; ++b)
      CHECK(rt::rademacher_phi(rt::sl2_theta(b)) == Rational(b));
    CHECK(rt::rademacher_phi(rt::sl2_xi()) == Rational(0));
    for (long long n = -5; n <= 5; ++n) {
      auto u = rt::sl2_mul(rt::sl2_xi(), rt::sl2_theta(n));
      CHECK(rt::rademacher_phi(u) == Rational(n));
    }
    // unaffected by global sign
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
      auto u = random_sl2(rng, 30, 3);
      CHECK(rt::rademacher_phi(u) == rt::rademacher_phi(rt::sl2_neg(u)));
    }
  }

  TEST_CASE("Rademacher product rule") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 500) {
      auto u1 = random_sl2(rng, 30, 2);
      auto u2 = random_sl2(rng, 30, 2);
      auto u3 = rt::sl2_mul(u1, u2);
      if (u1.c == 0 || u2.c == 0 || u3.c == 0) continue;
      ++done;
      int sgn = (u1.c > 0 ? 1 : -1) * (u2.c > 0 ? 1 : -1) * (u3.c > 0 ? 1 : -1);
      CHECK(rt::rademacher_phi(u3) ==
            rt::rademacher_phi(u1) + rt::rademacher_phi(u2) - Rational(3 * sgn));
    }
  }

  TEST_CASE("Rademacher antisymmetry under inversion") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
      auto u = random_sl2(rng, 40, 3);
      CHECK(rt::rademacher_phi(rt::sl2_inverse(u)) == -rt::rademacher_phi(u));
    }
  }
}
