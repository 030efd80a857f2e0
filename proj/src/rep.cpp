#include "rt/rep.hpp"

#include <cmath>
#include <stdexcept>

#include "rt/errors.hpp"
#include "rt/phase.hpp"

namespace rt {

namespace {

constexpr size_t kMatrixGuard = 20000;

void check_matrix_guard(const RepContext& ctx) {
  if (ctx.index_set.size() > kMatrixGuard)
    throw CostGuardError("index set too large to materialize a matrix");
}

// weight coordinates of lambda + kappa * nu for coroot coordinates nu
std::vector<long long> shifted_weight(const AlgebraData& alg,
                                      const LatticeVector& lambda,
                                      long long kappa,
                                      const std::vector<long long>& nu) {
  const int l = alg.rank;
  std::vector<long long> x(lambda.coords);
  for (int i = 0; i < l; ++i) {
    long long s = 0;
    for (int j = 0; j < l; ++j) s += alg.gram_coroots[i][j] * nu[j];
    x[i] += kappa * s;
  }
  return x;
}

Rational norm_sq_w(const AlgebraData& alg, const std::vector<long long>& x) {
  Rational s(0);
  for (int i = 0; i < alg.rank; ++i)
    for (int j = 0; j < alg.rank; ++j)
      s += Rational(x[i]) * alg.gram_weights[i][j] * Rational(x[j]);
  return s;
}

Rational inner_w(const AlgebraData& alg, const std::vector<long long>& x,
                 const std::vector<long long>& y) {
  Rational s(0);
  for (int i = 0; i < alg.rank; ++i)
    for (int j = 0; j < alg.rank; ++j)
      s += Rational(x[i]) * alg.gram_weights[i][j] * Rational(y[j]);
  return s;
}

// common closed-form prefactor (i sign(c))^{|D+|} / ((kappa|c|)^{l/2} vol)
// times exp(-pi i Phi(U) |rho|^2 / hvee)
std::complex<double> entry_prefactor(const RepContext& ctx, const SL2Matrix& u,
                                     bool sine_form) {
  const AlgebraData& alg = *ctx.alg;
  const int npos = alg.num_positive_roots;
  const int sc = u.c > 0 ? 1 : -1;
  std::complex<double> phase =
      sine_form ? std::complex<double>(std::pow(2.0 * sc, npos), 0.0)
                : i_pow(npos) * std::pow(static_cast<double>(sc), npos);
  double den = std::pow(static_cast<double>(ctx.kappa) *
                            static_cast<double>(u.c > 0 ? u.c : -u.c),
                        alg.rank / 2.0) *
               alg.vol_coroot;
  Rational phi = rademacher_phi(u);
  Rational arg = -phi * alg.rho_sq / Rational(alg.dual_coxeter);
  return phase / den * exp_pi_i(arg);
}

}  // namespace

RepContext make_rep_context(const AlgebraData& alg, long long kappa) {
  RepContext ctx;
  ctx.alg = &alg;
  ctx.kappa = kappa;
  ctx.r = static_cast<long long>(alg.lacing) * kappa;
  ctx.index_set = alcove_interior_weights(alg, kappa);
  for (int i = 0; i < static_cast<int>(ctx.index_set.size()); ++i)
    ctx.index_of[ctx.index_set[i].coords] = i;
  return ctx;
}

RepMatrix rep_xi(const RepContext& ctx) {
  check_matrix_guard(ctx);
  const AlgebraData& alg = *ctx.alg;
  const int n = static_cast<int>(ctx.index_set.size());
  RepMatrix m;
  m.label = "Xi";
  m.entries.resize(n, n);
  std::complex<double> pref =
      i_pow(alg.num_positive_roots) /
      (std::pow(static_cast<double>(ctx.kappa), alg.rank / 2.0) *
       alg.vol_coroot);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::complex<double> s = 0.0;
      for (const auto& w : alg.weyl) {
        auto wl = apply_weyl(alg, w, ctx.index_set[i]);
        Rational arg = Rational(-2) *
                       inner_w(alg, wl.coords, ctx.index_set[j].coords) /
                       Rational(ctx.kappa);
        s += static_cast<double>(w.det) * exp_pi_i(arg);
      }
      m.entries(i, j) = pref * s;
      m.entries(j, i) = m.entries(i, j);  // symmetric
    }
  }
  return m;
}

RepMatrix rep_theta_power(const RepContext& ctx, long long b) {
  check_matrix_guard(ctx);
  const AlgebraData& alg = *ctx.alg;
  const int n = static_cast<int>(ctx.index_set.size());
  RepMatrix m;
  m.label = "Theta^" + std::to_string(b);
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Rational arg = Rational(b) * (norm_sq_w(alg, ctx.index_set[i].coords) /
                                      Rational(ctx.kappa) -
                                  alg.rho_sq / Rational(alg.dual_coxeter));
    m.entries(i, i) = exp_pi_i(arg);
  }
  return m;
}

RepMatrix rep_theta_diag(const RepContext& ctx) { return rep_theta_power(ctx, 1); }

RepMatrix rep_minus_one(const RepContext& ctx) {
  check_matrix_guard(ctx);
  const int n = static_cast<int>(ctx.index_set.size());
  RepMatrix m;
  m.label = "-1";
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    auto dual = dual_weight(*ctx.alg, ctx.index_set[i]);
    auto it = ctx.index_of.find(dual.coords);
    if (it == ctx.index_of.end())
      throw std::logic_error("dual weight left the alcove");
    m.entries(i, it->second) = 1.0;
  }
  return m;
}

RepMatrix rep_word(const RepContext& ctx, const Expansion& c) {
  check_matrix_guard(ctx);
  const int n = static_cast<int>(ctx.index_set.size());
  RepMatrix xi = rep_xi(ctx);
  RepMatrix m;
  m.entries = Eigen::MatrixXcd::Identity(n, n);
  std::string label;
  for (long long mk : c) {
    // left-multiply by R(Theta)^{m_k} R(Xi)
    m.entries = (xi.entries * m.entries).eval();
    auto th = rep_theta_power(ctx, mk);
    for (int i = 0; i < n; ++i) m.entries.row(i) *= th.entries(i, i);
    label = "Theta^" + std::to_string(mk) + " Xi " + label;
  }
  m.label = label.empty() ? "identity" : label;
  return m;
}

RepMatrix rep_of(const RepContext& ctx, const SL2Matrix& u) {
  check_matrix_guard(ctx);
  auto dec = decompose_nonvanishing(u);
  RepMatrix m;
  if (dec.theta_power) {
    m = rep_theta_power(ctx, dec.n);
  } else {
    RepMatrix v = dec.xi_branch ? rep_xi(ctx) : rep_word(ctx, dec.C);
    m = rep_theta_power(ctx, dec.n);
    m.entries = v.entries * m.entries;
  }
  if (dec.sign < 0) m.entries = rep_minus_one(ctx).entries * m.entries;
  m.label = "R[" + std::to_string(u.a) + "," + std::to_string(u.b) + ";" +
            std::to_string(u.c) + "," + std::to_string(u.d) + "]";
  return m;
}

std::complex<double> rep_entry(const RepContext& ctx, const SL2Matrix& u,
                               const LatticeVector& lambda,
                               const LatticeVector& mu) {
  const AlgebraData& alg = *ctx.alg;
  if (u.c == 0) {
    // U = sign * Theta^n; extension off the alcove goes through the
    // orbit reduction since the diagonal phase is orbit-dependent.
    auto dec = decompose_nonvanishing(u);
    auto rl = reduce_to_alcove(alg, ctx.kappa, lambda);
    auto rm = reduce_to_alcove(alg, ctx.kappa, mu);
    if (rl.wall || rm.wall) return 0.0;
    LatticeVector left = rl.rep;
    if (dec.sign < 0) left = dual_weight(alg, left);
    if (left.coords != rm.rep.coords) return 0.0;
    Rational arg =
        Rational(dec.n) * (norm_sq_w(alg, rm.rep.coords) / Rational(ctx.kappa) -
                           alg.rho_sq / Rational(alg.dual_coxeter));
    return static_cast<double>(rl.sign * rm.sign) * exp_pi_i(arg);
  }
  return rep_entry_variant(ctx, u, lambda, mu, EntryVariant::DC);
}

std::complex<double> rep_entry_variant(const RepContext& ctx,
                                       const SL2Matrix& u,
                                       const LatticeVector& lambda,
                                       const LatticeVector& mu,
                                       EntryVariant variant) {
  const AlgebraData& alg = *ctx.alg;
  if (u.c == 0) throw InputError("closed-form variants need c != 0");
  const LatticeVector lam = to_weight_basis(alg, lambda);
  const LatticeVector muw = to_weight_basis(alg, mu);
  const Rational kap(ctx.kappa);
  std::complex<double> pref = entry_prefactor(ctx, u, false);

  std::complex<double> total = 0.0;
  switch (variant) {
    case EntryVariant::DC: {
      // exp(pi i (d/c)|mu|^2/kappa) * sum_nu exp(pi i (a/c)|lam+k nu|^2/k)
      //   * sum_w det(w) exp(-2 pi i <lam+k nu, w(mu)>/(k c))
      std::vector<std::vector<long long>> wmu;
      for (const auto& w : alg.weyl)
        wmu.push_back(apply_weyl(alg, w, muw).coords);
      for_each_coroot_rep(alg, u.c, [&](const std::vector<long long>& nu) {
        auto x = shifted_weight(alg, lam, ctx.kappa, nu);
        Rational a2 = Rational(u.a, u.c) * norm_sq_w(alg, x) / kap;
        std::complex<double> inner = 0.0;
        for (size_t wi = 0; wi < alg.weyl.size(); ++wi) {
          Rational arg =
              Rational(-2) * inner_w(alg, x, wmu[wi]) / (kap * Rational(u.c));
          inner += static_cast<double>(alg.weyl[wi].det) * exp_pi_i(arg);
        }
        total += exp_pi_i(a2) * inner;
      });
      total *= exp_pi_i(Rational(u.d, u.c) * norm_sq_w(alg, muw.coords) / kap);
      break;
    }
    case EntryVariant::BA: {
      if (u.a == 0) throw InputError("b/a variant needs a != 0");
      // exp(pi i (b/a)|mu|^2/k) * sum_w det(w) sum_nu
      //   exp(pi i (a/c) |lam + k nu - w(mu)/a|^2 / k)
      Rational mu2 = norm_sq_w(alg, muw.coords);
      for (const auto& w : alg.weyl) {
        auto wm = apply_weyl(alg, w, muw).coords;
        std::complex<double> inner = 0.0;
        for_each_coroot_rep(alg, u.c, [&](const std::vector<long long>& nu) {
          auto x = shifted_weight(alg, lam, ctx.kappa, nu);
          // |x - wm/a|^2 = |x|^2 - (2/a)<x,wm> + |mu|^2/a^2
          Rational q = norm_sq_w(alg, x) -
                       Rational(2) / Rational(u.a) * inner_w(alg, x, wm) +
                       mu2 / Rational(u.a * u.a);
          inner += exp_pi_i(Rational(u.a, u.c) * q / kap);
        });
        total += static_cast<double>(w.det) * inner;
      }
      total *= exp_pi_i(Rational(u.b, u.a) * mu2 / kap);
      break;
    }
    case EntryVariant::UnitarityAC: {
      // exp(pi i (a/c)|lam|^2/k) * sum_nu exp(pi i (d/c)|mu+k nu|^2/k)
      //   * sum_w det(w) exp(-2 pi i <mu+k nu, w(lam)>/(k c))
      std::vector<std::vector<long long>> wlam;
      for (const auto& w : alg.weyl)
        wlam.push_back(apply_weyl(alg, w, lam).coords);
      for_each_coroot_rep(alg, u.c, [&](const std::vector<long long>& nu) {
        auto x = shifted_weight(alg, muw, ctx.kappa, nu);
        Rational d2 = Rational(u.d, u.c) * norm_sq_w(alg, x) / kap;
        std::complex<double> inner = 0.0;
        for (size_t wi = 0; wi < alg.weyl.size(); ++wi) {
          Rational arg =
              Rational(-2) * inner_w(alg, x, wlam[wi]) / (kap * Rational(u.c));
          inner += static_cast<double>(alg.weyl[wi].det) * exp_pi_i(arg);
        }
        total += exp_pi_i(d2) * inner;
      });
      total *= exp_pi_i(Rational(u.a, u.c) * norm_sq_w(alg, lam.coords) / kap);
      break;
    }
    case EntryVariant::UnitarityBD: {
      if (u.d == 0) throw InputError("b/d variant needs d != 0");
      Rational lam2 = norm_sq_w(alg, lam.coords);
      for (const auto& w : alg.weyl) {
        auto wl = apply_weyl(alg, w, lam).coords;
        std::complex<double> inner = 0.0;
        for_each_coroot_rep(alg, u.c, [&](const std::vector<long long>& nu) {
          auto x = shifted_weight(alg, muw, ctx.kappa, nu);
          Rational q = norm_sq_w(alg, x) -
                       Rational(2) / Rational(u.d) * inner_w(alg, x, wl) +
                       lam2 / Rational(u.d * u.d);
          inner += exp_pi_i(Rational(u.d, u.c) * q / kap);
        });
        total += static_cast<double>(w.det) * inner;
      }
      total *= exp_pi_i(Rational(u.b, u.d) * lam2 / kap);
      break;
    }
  }
  return pref * total;
}

std::complex<double> rep_entry_rho(const RepContext& ctx, const SL2Matrix& u,
                                   const LatticeVector& lambda, RhoSide side) {
  const AlgebraData& alg = *ctx.alg;
  if (u.c == 0)
    throw InputError("rho-row sine form needs c != 0; use rep_entry");
  const LatticeVector lam = to_weight_basis(alg, lambda);
  const Rational kap(ctx.kappa);
  std::complex<double> pref = entry_prefactor(ctx, u, true);
  // Row:    exp(pi i (d/c)|rho|^2/k), quadratic coefficient a/c on lambda
  // Column: exp(pi i (a/c)|rho|^2/k), quadratic coefficient d/c on mu
  const Rational quad = (side == RhoSide::Row) ? Rational(u.a, u.c)
                                               : Rational(u.d, u.c);
  const Rational fixed = (side == RhoSide::Row) ? Rational(u.d, u.c)
                                                : Rational(u.a, u.c);
  std::complex<double> total = 0.0;
  for_each_coroot_rep(alg, u.c, [&](const std::vector<long long>& nu) {
    auto x = shifted_weight(alg, lam, ctx.kappa, nu);
    double prod = 1.0;
    for (size_t a = 0; a < alg.positive_roots.size(); ++a) {
      Rational pair(0);
      for (int j = 0; j < alg.rank; ++j)
        pair += Rational(x[j] * alg.positive_roots_alpha[a][j]) * alg.d[j];
      prod *= sin_pi(pair / (kap * Rational(u.c)));
    }
    total += exp_pi_i(quad * norm_sq_w(alg, x) / kap) * prod;
  });
  total *= exp_pi_i(fixed * alg.rho_sq / kap);
  return pref * total;
}

}  // namespace rt
