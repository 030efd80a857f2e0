#include "rt/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rt/errors.hpp"
#include "rt/invariants.hpp"
#include "rt/modular.hpp"
#include "rt/phase.hpp"

namespace rt {

namespace {

using cplx = std::complex<double>;
using detail::int128;

long long dot_ll(const std::vector<long long>& a,
                 const std::vector<long long>& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double pow_int(double base, int e) {
  double v = 1.0;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

void require_lens_pair(long long p, long long q) {
  if (p == 0) throw InputError("asymptotic analysis needs p != 0");
  if (std::gcd(std::abs(p), std::abs(q)) != 1)
    throw InputError("lens space parameters must be coprime");
}

void guard_coset_count(const AlgebraData& alg, long long p) {
  const double est = std::pow(static_cast<double>(std::abs(p)), alg.rank);
  if (est > 1e6) {
    std::ostringstream os;
    os << "stratification refused: about " << est
       << " coset representatives (limit 1e6)";
    throw CostGuardError(os.str());
  }
}

// exp(pi i kappa q* |nu|^2 / p) * exp(2 pi i q* <nu, rho> / p); <nu, rho>
// is the coordinate sum because <rho, alpha_i^vee> = 1 for every i.
cplx coset_phase(const AlgebraData& alg, long long kappa, long long p,
                 long long qstar, const LatticeVector& nu) {
  const Rational nsq = norm_sq(alg, nu);
  long long snr = 0;
  for (long long c : nu.coords) snr += c;
  return exp_pi_i(Rational(kappa) * Rational(qstar) * nsq / Rational(p)) *
         exp_pi_i(Rational::make(2 * static_cast<int128>(qstar) * snr, p));
}

// (2 sign p)^{|D+|} / ((kappa |p|)^{l/2} vol(Y^vee))
double lens_scale(const AlgebraData& alg, long long kappa, long long p) {
  const double sgn =
      (p < 0 && alg.num_positive_roots % 2 != 0) ? -1.0 : 1.0;
  return std::pow(2.0, alg.num_positive_roots) * sgn /
         (std::pow(static_cast<double>(kappa) *
                       static_cast<double>(std::abs(p)),
                   alg.rank / 2.0) *
          alg.vol_coroot);
}

}  // namespace

Stratification partition_levels(const AlgebraData& alg, long long p) {
  if (p == 0) throw InputError("stratification needs p != 0");
  guard_coset_count(alg, p);
  const long long P = std::abs(p);

  Stratification strat;
  strat.p = p;
  strat.levels.assign(static_cast<size_t>(alg.num_positive_roots) + 1, {});
  long long count = 0;
  for_each_coroot_rep(alg, p, [&](const std::vector<long long>& nu) {
    int j = 0;
    for (const auto& alpha : alg.positive_roots)
      if (dot_ll(nu, alpha.coords) % P == 0) ++j;
    strat.levels[static_cast<size_t>(j)].push_back(
        LatticeVector{nu, Basis::Coroot});
    ++count;
  });

  long long expected = 1;
  for (int i = 0; i < alg.rank; ++i) expected *= P;
  if (count != expected)
    throw std::logic_error("coset enumeration does not fill Y^vee/pY^vee");
  return strat;
}

double coefficient_b(const AlgebraData& alg, long long p,
                     const LatticeVector& nu) {
  if (p == 0) throw InputError("leading coefficient needs p != 0");
  if (nu.basis != Basis::Coroot ||
      static_cast<int>(nu.coords.size()) != alg.rank)
    throw InputError("coset representative must carry coroot coordinates");
  const long long P = std::abs(p);

  double b = 1.0;
  for (size_t ai = 0; ai < alg.positive_roots.size(); ++ai) {
    const long long t = dot_ll(nu.coords, alg.positive_roots[ai].coords);
    if (t % P == 0) {
      const double pairing =
          inner_product(alg, alg.rho, alg.positive_roots[ai]).to_double();
      b *= ((t / p) % 2 == 0 ? 1.0 : -1.0) * pairing;
    } else {
      b *= sin_pi(Rational(t, p));
    }
  }
  return b;
}

CsValueSet cs_values(const AlgebraData& alg, long long p, long long q) {
  require_lens_pair(p, q);
  guard_coset_count(alg, p);
  const long long qstar = mod_inverse(q, std::abs(p));

  std::set<Rational> seen;
  for_each_coroot_rep(alg, p, [&](const std::vector<long long>& nu) {
    const Rational nsq = norm_sq(alg, LatticeVector{nu, Basis::Coroot});
    seen.insert((Rational(qstar) * nsq / Rational(2 * p)).mod1());
  });

  CsValueSet out;
  out.values.assign(seen.begin(), seen.end());
  return out;
}

double resum_check(const RepContext& ctx, long long p, long long q) {
  const AlgebraData& alg = *ctx.alg;
  require_lens_pair(p, q);
  const cplx tau = tau_lens(ctx, p, q).value;

  const Stratification strat = partition_levels(alg, p);
  const long long qstar = mod_inverse(q, std::abs(p));
  const Rational pk = Rational(p) * Rational(ctx.kappa);

  // Pairing of rho with each positive root, fixed across the coset sum.
  std::vector<Rational> rho_pair(alg.positive_roots.size());
  for (size_t ai = 0; ai < alg.positive_roots.size(); ++ai)
    rho_pair[ai] = inner_product(alg, alg.rho, alg.positive_roots[ai]);

  cplx total{0.0, 0.0};
  for (const auto& level : strat.levels) {
    for (const LatticeVector& nu : level) {
      double trig = 1.0;
      for (size_t ai = 0; ai < alg.positive_roots.size(); ++ai) {
        const long long t =
            dot_ll(nu.coords, alg.positive_roots[ai].coords);
        trig *= sin_pi(rho_pair[ai] / pk) * cos_pi(Rational(t, p)) +
                cos_pi(rho_pair[ai] / pk) * sin_pi(Rational(t, p));
      }
      total += coset_phase(alg, ctx.kappa, p, qstar, nu) * trig;
    }
  }

  const int sgn_p = p > 0 ? 1 : -1;
  const cplx dedekind_phase =
      exp_pi_i(Rational(12LL * sgn_p) * dedekind_sum(q, p) * alg.rho_sq /
               Rational(ctx.kappa));
  const cplx assembled =
      lens_scale(alg, ctx.kappa, p) * dedekind_phase * total;
  return std::abs(tau - assembled);
}

std::complex<double> leading_term(const AlgebraData& alg, long long kappa,
                                  long long p, long long q) {
  require_lens_pair(p, q);
  if (kappa < alg.dual_coxeter)
    throw PreconditionError("level below the dual Coxeter number");
  const Stratification strat = partition_levels(alg, p);
  const long long qstar = mod_inverse(q, std::abs(p));

  size_t j0 = 0;
  while (strat.levels[j0].empty()) ++j0;

  cplx sum{0.0, 0.0};
  for (const LatticeVector& nu : strat.levels[j0])
    sum += coefficient_b(alg, p, nu) * coset_phase(alg, kappa, p, qstar, nu);

  return lens_scale(alg, kappa, p) *
         pow_int(M_PI / (static_cast<double>(p) * static_cast<double>(kappa)),
                 static_cast<int>(j0)) *
         sum;
}

}  // namespace rt
