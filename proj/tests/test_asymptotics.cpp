#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "rt/algebra.hpp"
#include "rt/asymptotics.hpp"
#include "rt/errors.hpp"
#include "rt/invariants.hpp"
#include "rt/modular.hpp"
#include "rt/rep.hpp"

using rt::AlgebraData;
using rt::Basis;
using rt::LatticeVector;
using rt::Rational;
using rt::Stratification;

namespace {

using cplx = std::complex<double>;

LatticeVector coset(std::vector<long long> coords) {
  return LatticeVector{std::move(coords), Basis::Coroot};
}

std::set<std::vector<long long>> level_set(const Stratification& s, size_t j) {
  std::set<std::vector<long long>> out;
  for (const auto& nu : s.levels[j]) out.insert(nu.coords);
  return out;
}

long long level_total(const Stratification& s) {
  long long n = 0;
  for (const auto& lv : s.levels) n += static_cast<long long>(lv.size());
  return n;
}

// Independent rank-one leading asymptote: i sign(p) sqrt(2/(|p| kappa))
// * sum_{n=1}^{|p|-1} exp(2 pi i kappa q* n^2 / p) sin(2 pi q* n / p)
//   sin(2 pi n / p).
cplx sl2_display(long long kappa, long long p, long long q) {
  const long long P = std::llabs(p);
  const long long qs = rt::mod_inverse(q, P);
  const double pd = static_cast<double>(p);
  cplx sum{0.0, 0.0};
  for (long long n = 1; n < P; ++n) {
    const double ph =
        2.0 * M_PI * static_cast<double>(kappa * qs * n * n) / pd;
    sum += cplx{std::cos(ph), std::sin(ph)} *
           std::sin(2.0 * M_PI * static_cast<double>(qs * n) / pd) *
           std::sin(2.0 * M_PI * static_cast<double>(n) / pd);
  }
  return cplx{0.0, p > 0 ? 1.0 : -1.0} *
         std::sqrt(2.0 / (static_cast<double>(P) * kappa)) * sum;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("strata match the rank-one description") {
    auto alg = rt::build_algebra('A', 1);
    for (long long p : {1LL, 3LL, 5LL, 7LL, 9LL, 11LL, -3LL, -5LL}) {
      CAPTURE(p);
      auto s = rt::partition_levels(alg, p);
      REQUIRE(s.levels.size() == 2);
      CHECK(level_set(s, 1) == std::set<std::vector<long long>>{{0}});
      CHECK(s.levels[0].size() == static_cast<size_t>(std::llabs(p) - 1));
    }
    for (long long p : {2LL, 4LL, 6LL, 8LL, 10LL, 12LL, -4LL, -8LL}) {
      CAPTURE(p);
      const long long P = std::llabs(p);
      auto s = rt::partition_levels(alg, p);
      CHECK(level_set(s, 1) ==
            std::set<std::vector<long long>>{{0}, {P / 2}});
      CHECK(s.levels[0].size() == static_cast<size_t>(P - 2));
    }
  }

  TEST_CASE("strata match the rank-two description") {
    auto alg = rt::build_algebra('A', 2);

    SUBCASE("top stratum and the always-empty middle one") {
      for (long long p : {3LL, 6LL, 9LL, 12LL, -3LL, -6LL}) {
        CAPTURE(p);
        const long long L = std::llabs(p) / 3;
        auto s = rt::partition_levels(alg, p);
        REQUIRE(s.levels.size() == 4);
        CHECK(level_set(s, 3) == std::set<std::vector<long long>>{
                                     {0, 0}, {L, 2 * L}, {2 * L, L}});
        CHECK(s.levels[2].empty());
      }
      for (long long p : {1LL, 2LL, 4LL, 5LL, 7LL, 8LL, 11LL, -5LL}) {
        CAPTURE(p);
        auto s = rt::partition_levels(alg, p);
        CHECK(level_set(s, 3) == std::set<std::vector<long long>>{{0, 0}});
        CHECK(s.levels[2].empty());
      }
    }

    SUBCASE("smallest cases in full") {
      auto s1 = rt::partition_levels(alg, 1);
      CHECK(s1.levels[0].empty());
      CHECK(s1.levels[1].empty());
      auto s2 = rt::partition_levels(alg, 2);
      CHECK(s2.levels[0].empty());
      CHECK(level_set(s2, 1) == std::set<std::vector<long long>>{
                                    {0, 1}, {1, 0}, {1, 1}});
      auto s3 = rt::partition_levels(alg, 3);
      CHECK(s3.levels[1].empty());
      CHECK(s3.levels[0].size() == 6);
    }

    SUBCASE("single-wall stratum via the elementary equations") {
      // For (k, n) != (0, 0) in the box, membership in M_1 is: exactly one
      // of k = 2n, n = 2k, k = 2n - |p|, n = 2k - |p|, k + n = |p| holds.
      for (long long p : {4LL, 5LL, 7LL, 8LL, 11LL}) {
        CAPTURE(p);
        std::set<std::vector<long long>> expected;
        for (long long k = 0; k < p; ++k)
          for (long long n = 0; n < p; ++n) {
            if (k == 0 && n == 0) continue;
            int hits = 0;
            if (k == 2 * n) ++hits;
            if (n == 2 * k) ++hits;
            if (k == 2 * n - p) ++hits;
            if (n == 2 * k - p) ++hits;
            if (k + n == p) ++hits;
            if (hits == 1) expected.insert({k, n});
          }
        CHECK(level_set(rt::partition_levels(alg, p), 1) == expected);
      }
    }
  }

  TEST_CASE("strata partition the coset space") {
    for (auto [fam, rank] :
         {std::pair<char, int>{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2},
          {'B', 3}, {'C', 3}, {'G', 2}}) {
      auto alg = rt::build_algebra(fam, rank);
      for (long long p : {1LL, 2LL, 3LL, 5LL, 8LL, 12LL, -1LL, -7LL, -12LL}) {
        CAPTURE(fam);
        CAPTURE(rank);
        CAPTURE(p);
        auto s = rt::partition_levels(alg, p);
        REQUIRE(s.levels.size() ==
                static_cast<size_t>(alg.num_positive_roots) + 1);
        long long expected = 1;
        for (int i = 0; i < rank; ++i) expected *= std::llabs(p);
        CHECK(level_total(s) == expected);
        CHECK(s.p == p);
        // nu = 0 pairs into pZ with every positive root.
        const auto& top = s.levels.back();
        CHECK(std::count(top.begin(), top.end(),
                         coset(std::vector<long long>(rank, 0))) == 1);
      }
    }
  }

  TEST_CASE("stratification validation and cost guard") {
    auto a1 = rt::build_algebra('A', 1);
    auto a3 = rt::build_algebra('A', 3);
    CHECK_THROWS_AS(rt::partition_levels(a1, 0), rt::InputError);
    CHECK_THROWS_AS(rt::partition_levels(a1, 2000000), rt::CostGuardError);
    CHECK_THROWS_AS(rt::partition_levels(a3, 200), rt::CostGuardError);
  }

  TEST_CASE("leading coefficients") {
    auto a1 = rt::build_algebra('A', 1);
    auto a2 = rt::build_algebra('A', 2);

    // b_0 = prod_alpha <rho, alpha>.
    CHECK(rt::coefficient_b(a1, 7, coset({0})) == doctest::Approx(1.0));
    CHECK(rt::coefficient_b(a2, 7, coset({0, 0})) == doctest::Approx(2.0));

    // Off-wall representative: a single sine factor.
    CHECK(rt::coefficient_b(a1, 5, coset({1})) ==
          doctest::Approx(std::sin(2.0 * M_PI / 5.0)).epsilon(1e-14));
    // On-wall representative with odd quotient flips the sign.
    CHECK(rt::coefficient_b(a1, 2, coset({1})) == doctest::Approx(-1.0));
    CHECK(rt::coefficient_b(a1, 4, coset({2})) == doctest::Approx(-1.0));
    CHECK(rt::coefficient_b(a1, -4, coset({2})) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(rt::coefficient_b(a1, 0, coset({1})), rt::InputError);
    CHECK_THROWS_AS(
        rt::coefficient_b(a1, 5, LatticeVector{{1}, Basis::Weight}),
        rt::InputError);
    CHECK_THROWS_AS(rt::coefficient_b(a2, 5, coset({1})), rt::InputError);
  }

  TEST_CASE("chern-simons value sets") {
    auto a1 = rt::build_algebra('A', 1);
    auto a2 = rt::build_algebra('A', 2);
    auto g2 = rt::build_algebra('G', 2);

    SUBCASE("frozen examples") {
      auto s5 = rt::cs_values(a1, 5, 1);
      CHECK(s5.values == std::vector<Rational>{Rational(0), Rational(1, 5),
                                               Rational(4, 5)});
      CHECK(s5.sign_ambiguous);
      // p = 2^2: nu = 2 collides with nu = 0, so the set is smaller than p.
      auto s4 = rt::cs_values(a1, 4, 1);
      CHECK(s4.values == std::vector<Rational>{Rational(0), Rational(1, 4)});
      for (const AlgebraData* alg : {&a1, &a2, &g2})
        CHECK(rt::cs_values(*alg, 1, 0).values ==
              std::vector<Rational>{Rational(0)});
    }

    SUBCASE("rank-one set equals the quadratic residue values") {
      for (long long p : {2LL, 3LL, 4LL, 5LL, 6LL, 7LL, 8LL, 9LL, 10LL, 11LL,
                          12LL, -5LL, -8LL}) {
        const long long P = std::llabs(p);
        for (long long q = 1; q < P; ++q) {
          if (std::gcd(P, q) != 1) continue;
          CAPTURE(p);
          CAPTURE(q);
          const long long qs = rt::mod_inverse(q, P);
          std::set<Rational> expected;
          for (long long n = 0; n < P; ++n)
            expected.insert(
                Rational::make(static_cast<__int128>(qs) * n * n, p).mod1());
          auto got = rt::cs_values(a1, p, q);
          CHECK(got.values ==
                std::vector<Rational>(expected.begin(), expected.end()));
        }
      }
    }

    SUBCASE("validation") {
      CHECK_THROWS_AS(rt::cs_values(a1, 0, 1), rt::InputError);
      CHECK_THROWS_AS(rt::cs_values(a1, 4, 2), rt::InputError);
    }
  }

  TEST_CASE("resummation reassembles the lens invariant exactly") {
    auto a1 = rt::build_algebra('A', 1);
    auto a2 = rt::build_algebra('A', 2);

    SUBCASE("pinned residuals") {
      auto c5 = rt::make_rep_context(a1, 5);
      CHECK(rt::resum_check(c5, 5, 1) < 1e-10);
      auto c4 = rt::make_rep_context(a2, 4);
      CHECK(rt::resum_check(c4, 5, 2) < 1e-10);
      auto c50 = rt::make_rep_context(a1, 50);
      CHECK(rt::resum_check(c50, 3, 1) < 1e-9);
    }

    SUBCASE("grid over both algebras, both orientations") {
      for (long long kappa = 2; kappa <= 8; ++kappa) {
        auto ctx = rt::make_rep_context(a1, kappa);
        for (long long p = 1; p <= 8; ++p)
          for (long long q = 0; q < std::max(1LL, p); ++q) {
            if (std::gcd(p, q) != 1) continue;
            CAPTURE(kappa);
            CAPTURE(p);
            CAPTURE(q);
            CHECK(rt::resum_check(ctx, p, q) < 1e-9);
            CHECK(rt::resum_check(ctx, -p, q) < 1e-9);
          }
      }
      for (long long kappa = 3; kappa <= 8; ++kappa) {
        auto ctx = rt::make_rep_context(a2, kappa);
        for (long long p = 1; p <= 8; ++p) {
          long long q = p <= 2 ? (p == 1 ? 0 : 1) : p - 1;
          CAPTURE(kappa);
          CAPTURE(p);
          CHECK(rt::resum_check(ctx, p, q) < 1e-9);
          CHECK(rt::resum_check(ctx, -p, q) < 1e-9);
          if (p > 4 && p % 2 == 1) CHECK(rt::resum_check(ctx, p, 2) < 1e-9);
        }
      }
    }

    SUBCASE("validation") {
      auto ctx = rt::make_rep_context(a1, 5);
      CHECK_THROWS_AS(rt::resum_check(ctx, 0, 1), rt::InputError);
      CHECK_THROWS_AS(rt::resum_check(ctx, 6, 3), rt::InputError);
    }
  }

  TEST_CASE("leading term matches the rank-one display") {
    auto a1 = rt::build_algebra('A', 1);
    for (long long p : {3LL, 4LL, 5LL, 7LL, -3LL, -4LL, -5LL, -7LL}) {
      const long long P = std::llabs(p);
      for (long long q : {1LL, 2LL, 3LL, 5LL}) {
        if (q >= P || std::gcd(P, q) != 1) continue;
        for (long long kappa : {9LL, 50LL}) {
          CAPTURE(p);
          CAPTURE(q);
          CAPTURE(kappa);
          CHECK(std::abs(rt::leading_term(a1, kappa, p, q) -
                         sl2_display(kappa, p, q)) < 1e-9);
        }
      }
    }
    // On resonance the display can vanish identically; the implementation
    // must reproduce the exact zero rather than a small residue of wrong
    // phase conventions.
    CHECK(std::abs(rt::leading_term(a1, 50, 5, 2)) < 1e-14);
    CHECK(std::abs(rt::leading_term(a1, 51, 5, 2)) > 1e-3);
  }

  TEST_CASE("leading term at p = 1 is the sphere stratum") {
    auto a1 = rt::build_algebra('A', 1);
    auto a2 = rt::build_algebra('A', 2);

    // Single nu = 0 term: (2 sign p)^{|D+|}/((kappa)^{l/2} vol)
    // * (pi/(p kappa))^{|D+|} * b_0.
    for (long long kappa : {50LL, 200LL}) {
      const double expect1 =
          2.0 * M_PI / (static_cast<double>(kappa) *
                        std::sqrt(2.0 * static_cast<double>(kappa)));
      cplx lead = rt::leading_term(a1, kappa, 1, 0);
      CHECK(std::abs(lead - cplx{expect1, 0.0}) < 1e-15);
      CHECK(std::abs(rt::leading_term(a1, kappa, -1, 0) - lead) < 1e-15);

      const double kd = static_cast<double>(kappa);
      const double expect2 = 8.0 * std::pow(M_PI / kd, 3.0) * 2.0 /
                             (kd * std::sqrt(3.0));
      CHECK(std::abs(rt::leading_term(a2, kappa, 1, 0) -
                     cplx{expect2, 0.0}) < 1e-15);
    }

    // The sphere invariant approaches the stratum value from below as the
    // sine factors flatten onto their arguments.
    auto ctx = rt::make_rep_context(a1, 200);
    cplx tau = rt::tau_lens(ctx, 1, 0).value;
    cplx lead = rt::leading_term(a1, 200, 1, 0);
    CHECK(std::abs(tau / lead - 1.0) < 1e-3);
  }

  TEST_CASE("leading term ratio decays like one over the level") {
    auto a1 = rt::build_algebra('A', 1);
    auto a2 = rt::build_algebra('A', 2);

    SUBCASE("rank one, (3,1)") {
      std::vector<double> ratio;
      for (long long kappa : {50LL, 100LL, 200LL, 400LL}) {
        auto ctx = rt::make_rep_context(a1, kappa);
        const cplx tau = rt::tau_lens(ctx, 3, 1).value;
        const cplx lead = rt::leading_term(a1, kappa, 3, 1);
        ratio.push_back(std::abs(tau / lead - 1.0));
        // 1/kappa scaling: kappa * ratio stays in a narrow band.
        CHECK(kappa * ratio.back() > 1.0);
        CHECK(kappa * ratio.back() < 1.4);
      }
      CHECK(std::is_sorted(ratio.rbegin(), ratio.rend()));
      CHECK(ratio.back() < 3.1e-3);
    }

    SUBCASE("rank two, off the degenerate set") {
      std::vector<double> ratio;
      for (long long kappa : {31LL, 61LL, 121LL, 241LL}) {
        auto ctx = rt::make_rep_context(a2, kappa);
        const cplx tau = rt::tau_lens(ctx, 3, 1).value;
        ratio.push_back(
            std::abs(tau / rt::leading_term(a2, kappa, 3, 1) - 1.0));
        CHECK(kappa * ratio.back() > 3.5);
        CHECK(kappa * ratio.back() < 4.5);
      }
      CHECK(std::is_sorted(ratio.rbegin(), ratio.rend()));
    }

    SUBCASE("rank two, leading stratum above the bottom") {
      // |p| = 2 has empty M_0; the first surviving stratum is j = 1.
      std::vector<double> ratio;
      for (long long kappa : {31LL, 61LL, 121LL}) {
        auto ctx = rt::make_rep_context(a2, kappa);
        const cplx tau = rt::tau_lens(ctx, 2, 1).value;
        ratio.push_back(
            std::abs(tau / rt::leading_term(a2, kappa, 2, 1) - 1.0));
      }
      CHECK(std::is_sorted(ratio.rbegin(), ratio.rend()));
      CHECK(ratio.back() < 3e-4);
    }
  }

  TEST_CASE("leading term validation") {
    auto a2 = rt::build_algebra('A', 2);
    CHECK_THROWS_AS(rt::leading_term(a2, 2, 5, 1), rt::PreconditionError);
    CHECK_THROWS_AS(rt::leading_term(a2, 4, 0, 1), rt::InputError);
    CHECK_THROWS_AS(rt::leading_term(a2, 4, 6, 3), rt::InputError);
  }
}
