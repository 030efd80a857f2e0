#include "rt/gauss.hpp"

#include <cmath>

#include "rt/errors.hpp"
#include "rt/phase.hpp"

namespace rt {

namespace {

// <Lambda_i, psi> for psi in weight coordinates
Rational weight_pairing(const AlgebraData& alg, int i,
                        const std::vector<Rational>& psi) {
  Rational s(0);
  for (int j = 0; j < alg.rank; ++j) s += alg.gram_weights[i][j] * psi[j];
  return s;
}

}  // namespace

bool gauss_admissible(const AlgebraData& alg, long long r, long long f_scalar,
                      const std::vector<Rational>& psi, std::string* why) {
  const int l = alg.rank;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (r <= 0) return fail("r must be a positive integer");
  if (f_scalar == 0) return fail("f must be nonzero");
  if (static_cast<int>(psi.size()) != l) return fail("psi has wrong dimension");
  const Rational rf = Rational(r) * Rational(f_scalar);
  // (r/2)<lambda, f lambda> integral on X
  for (int i = 0; i < l; ++i)
    if (!(rf * alg.gram_weights[i][i] / Rational(2)).is_integer())
      return fail("(r/2)<lambda,f(lambda)> not integral on X");
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      if (!(rf * alg.gram_weights[i][j]).is_integer())
        return fail("(r/2)<lambda,f(lambda)> not integral on X");
  // <lambda, f eta> integral on X x X
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (!(Rational(f_scalar) * alg.gram_weights[i][j]).is_integer())
        return fail("<lambda,f(eta)> not integral on X");
  // r<lambda, psi> integral on X
  for (int i = 0; i < l; ++i)
    if (!(Rational(r) * weight_pairing(alg, i, psi)).is_integer())
      return fail("r<lambda,psi> not integral on X");
  // (r/2)<mu, f mu> integral on Y^vee (coroot Gram is even integral, but
  // check exactly rather than argue)
  for (int i = 0; i < l; ++i)
    if (!(rf * Rational(alg.gram_coroots[i][i]) / Rational(2)).is_integer())
      return fail("(r/2)<mu,f(mu)> not integral on Y^vee");
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      if (!(rf * Rational(alg.gram_coroots[i][j])).is_integer())
        return fail("(r/2)<mu,f(mu)> not integral on Y^vee");
  // <mu, r xi> integral on Y^vee x Y^vee
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (!(Rational(r) * Rational(alg.gram_coroots[i][j])).is_integer())
        return fail("<mu,r xi> not integral on Y^vee");
  // r<mu, psi> integral on Y^vee: <alpha_i^vee, psi> = psi_i
  for (int i = 0; i < l; ++i)
    if (!(Rational(r) * psi[i]).is_integer())
      return fail("r<mu,psi> not integral on Y^vee");
  // f(Y^vee) is inside Y^vee for any integer scalar
  return true;
}

GaussInstance make_gauss_instance(const AlgebraData& alg, long long r,
                                  long long f_scalar,
                                  std::vector<Rational> psi) {
  std::string why;
  if (!gauss_admissible(alg, r, f_scalar, psi, &why))
    throw PreconditionError("Gauss reciprocity assumptions violated: " + why);
  GaussInstance inst;
  inst.alg = &alg;
  inst.r = r;
  inst.f_scalar = f_scalar;
  inst.psi = std::move(psi);
  return inst;
}

std::complex<double> gauss_lhs(const GaussInstance& inst) {
  const AlgebraData& alg = *inst.alg;
  const int l = alg.rank;
  std::complex<double> sum = 0.0;
  // iterate lambda over {0..r-1}^l in the weight basis
  std::vector<long long> cur(l, 0);
  while (true) {
    Rational q(0);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j)
        q += Rational(cur[i]) * alg.gram_weights[i][j] * Rational(cur[j]);
    Rational lin(0);
    for (int i = 0; i < l; ++i)
      lin += Rational(cur[i]) * weight_pairing(alg, i, inst.psi);
    sum += exp_pi_i(Rational(inst.f_scalar) * q / Rational(inst.r) +
                    Rational(2) * lin);
    int i = l - 1;
    while (i >= 0 && cur[i] == inst.r - 1) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return alg.vol_coroot * sum;
}

std::complex<double> gauss_rhs(const GaussInstance& inst) {
  const AlgebraData& alg = *inst.alg;
  const int l = alg.rank;
  const long long s = inst.f_scalar;
  // principal branch: (s/i)^{-1/2} per dimension = |s|^{-1/2} exp(sign(s) pi i/4)
  std::complex<double> branch =
      std::pow(std::abs(static_cast<double>(s)), -l / 2.0) *
      exp_pi_i(Rational(l * (s > 0 ? 1 : -1), 4));
  std::complex<double> sum = 0.0;
  for_each_coroot_rep(alg, s, [&](const std::vector<long long>& nu) {
    // |mu + psi|^2 with mu = sum nu_i alpha_i^vee, psi in weight coords:
    // convert mu to weight coordinates and use the weight Gram.
    std::vector<Rational> x(l, Rational(0));
    for (int i = 0; i < l; ++i) {
      long long w = 0;
      for (int j = 0; j < l; ++j) w += alg.gram_coroots[i][j] * nu[j];
      x[i] = Rational(w) + inst.psi[i];
    }
    Rational q(0);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) q += x[i] * alg.gram_weights[i][j] * x[j];
    sum += exp_pi_i(Rational(-inst.r) * q / Rational(s));
  });
  return branch * std::pow(static_cast<double>(inst.r), l / 2.0) * sum;
}

double reciprocity_residual(const GaussInstance& inst) {
  return std::abs(gauss_lhs(inst) - gauss_rhs(inst));
}

}  // namespace rt
