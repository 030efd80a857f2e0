#include "rt/invariants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rt/errors.hpp"
#include "rt/modular.hpp"
#include "rt/parallel.hpp"
#include "rt/phase.hpp"

namespace rt {

namespace {

using cplx = std::complex<double>;
using detail::int128;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

long long mod_pos128(int128 a, long long m) {
  int128 v = a % m;
  return static_cast<long long>(v < 0 ? v + m : v);
}

double real_int_pow(double base, long long e) {
  if (e == 0) return 1.0;
  double p = std::pow(std::abs(base), static_cast<double>(std::abs(e)));
  if (base < 0 && (e % 2 != 0)) p = -p;
  return e > 0 ? p : 1.0 / p;
}

int sign_of(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int sign_of(const Rational& v) {
  return v.num() > 0 ? 1 : (v.num() < 0 ? -1 : 0);
}

long long checked_pow_ll(long long base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

// <nu, nu> for integer coroot coordinates.
long long coroot_norm_sq(const AlgebraData& alg,
                         const std::vector<long long>& n) {
  long long s = 0;
  const int l = alg.rank;
  for (int i = 0; i < l; ++i) {
    if (n[i] == 0) continue;
    for (int j = 0; j < l; ++j) s += n[i] * alg.gram_coroots[i][j] * n[j];
  }
  return s;
}

long long dot_ll(const std::vector<long long>& a,
                 const std::vector<long long>& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// exp(pi i * num/den) with 128-bit numerator, reduced before Rational.
cplx phase128(int128 num, long long den) {
  long long d = den;
  int128 n = num;
  if (d < 0) {
    d = -d;
    n = -n;
  }
  return exp_pi_i(Rational::make(n % (2 * static_cast<int128>(d)), d));
}

// S(beta/alpha) = 12 sign(alpha) s(beta, alpha); total over all fibers.
// Unlike the bare symbol this accepts beta = 0 (s(0, +-1) = 0).
Rational dedekind_total(const SeifertPresentation& m) {
  Rational s;
  for (const auto& [alpha, beta] : m.fibers)
    s += Rational(12) * dedekind_sum(beta, alpha);
  return s;
}

int fs_indicator(const AlgebraData& alg, const IndicatorTable* table,
                 const LatticeVector& lambda) {
  if (table == nullptr)
    throw PreconditionError(
        "self-pairing sign table required: non-orientable base with odd "
        "genus weights each self-dual state by a sign with no closed form "
        "assumed here; supply an indicator table");
  auto it = table->find(lambda.coords);
  if (it == table->end()) {
    std::ostringstream os;
    os << "indicator table is missing the self-dual weight (";
    for (size_t i = 0; i < lambda.coords.size(); ++i)
      os << (i ? "," : "") << lambda.coords[i];
    os << ")";
    throw PreconditionError(os.str());
  }
  if (it->second != 1 && it->second != -1)
    throw InputError("indicator table values must be +1 or -1");
  (void)alg;
  return it->second;
}

struct SeifertShape {
  int a_eps = 2;          // 2 orientable, 1 non-orientable
  long long aeg = 0;      // a_eps * genus
  int n = 0;              // fiber count
  long long b = 0;        // 0 for non-normalized data
  Rational E;             // Euler number
  int sgnE = 0;
  long long A = 1;        // product of the alpha_j
  Rational sum_S;         // sum of Dedekind symbols S(beta_j/alpha_j)
};

SeifertShape shape_of(const SeifertPresentation& m) {
  validate_seifert(m);
  SeifertShape s;
  s.a_eps = (m.epsilon == 'o') ? 2 : 1;
  s.aeg = static_cast<long long>(s.a_eps) * m.genus;
  s.n = static_cast<int>(m.fibers.size());
  s.b = m.normalized ? m.b : 0;
  s.E = seifert_euler(m);
  s.sgnE = sign_of(s.E);
  for (const auto& [alpha, beta] : m.fibers) s.A *= alpha;
  s.sum_S = dedekind_total(m);
  return s;
}

// b_lambda^{(eps)} * eps_lambda^{a_eps g} on the alcove interior.  Returns 0
// when the weight does not contribute (non-self-dual, eps = 'n').
int alcove_weight_sign(const RepContext& ctx, const SeifertPresentation& m,
                       long long aeg, const IndicatorTable* indicators,
                       const LatticeVector& lambda) {
  if (m.epsilon == 'o') return 1;
  if (!(dual_weight(*ctx.alg, lambda) == lambda)) return 0;
  if (aeg % 2 == 0) return 1;
  return fs_indicator(*ctx.alg, indicators, lambda);
}

}  // namespace

void validate_seifert(const SeifertPresentation& m) {
  if (m.epsilon != 'o' && m.epsilon != 'n')
    throw InputError("base symbol must be 'o' or 'n'");
  if (m.epsilon == 'o' && m.genus < 0)
    throw InputError("orientable base needs genus >= 0");
  if (m.epsilon == 'n' && m.genus < 1)
    throw InputError("non-orientable base needs genus >= 1");
  for (const auto& [alpha, beta] : m.fibers) {
    if (alpha <= 0) throw InputError("fiber orders alpha_j must be positive");
    if (std::gcd(alpha, std::abs(beta)) != 1)
      throw InputError("fiber pairs (alpha_j, beta_j) must be coprime");
    if (m.normalized && !(0 < beta && beta < alpha))
      throw InputError("normalized data need 0 < beta_j < alpha_j");
  }
}

Rational seifert_euler(const SeifertPresentation& m) {
  validate_seifert(m);
  Rational e = m.normalized ? Rational(m.b) : Rational(0);
  for (const auto& [alpha, beta] : m.fibers) e += Rational(beta, alpha);
  return -e;
}

TqftConstants tqft_constants(const RepContext& ctx) {
  const AlgebraData& alg = *ctx.alg;
  TqftConstants out;
  double denom = 1.0;
  for (const auto& alpha : alg.positive_roots)
    denom *= 2.0 * sin_pi(inner_product(alg, alg.rho, alpha) / Rational(ctx.kappa));
  out.rank_D = std::pow(static_cast<double>(ctx.kappa), alg.rank / 2.0) *
               alg.vol_coroot / denom;
  Rational t = alg.rho_sq / Rational(alg.dual_coxeter) -
               alg.rho_sq / Rational(ctx.kappa);
  out.omega = exp_pi_i(t);
  out.delta_over_D = exp_pi_i(Rational(-3) * t);
  return out;
}

SeifertPresentation lens_presentation(long long p, long long q) {
  if (std::gcd(std::abs(p), std::abs(q)) != 1)
    throw InputError("lens space parameters must be coprime");
  SeifertPresentation m;
  m.epsilon = 'o';
  m.genus = 0;
  m.normalized = true;
  if (p == 0) {
    m.b = 0;  // S^1 x S^2, Euler number 0
    return m;
  }
  if (q == 0) {
    m.b = p;  // p = +-1: S^3 with framing p
    return m;
  }
  if (q < 0) {
    q = -q;
    p = -p;  // same surgery coefficient -p/q
  }
  const Rational pq(p, q);
  m.b = pq.floor();
  const long long s = p - m.b * q;
  if (s != 0) m.fibers.push_back({q, s});
  return m;
}

std::vector<LatticeVector> enumerate_J(const RepContext& ctx, long long A) {
  const AlgebraData& alg = *ctx.alg;
  if (A <= 0) throw InputError("enumerate_J: A must be positive");
  const int l = alg.rank;
  const long long t = ctx.kappa * A;

  // Weight coordinates of box corners: lambda = sum y_i alpha_i^vee with
  // y in [0, t]^l has coordinates t * column sums of gram_coroots split by
  // sign.
  std::vector<long long> lo(l, 0), hi(l, 0);
  double box = 1.0;
  for (int j = 0; j < l; ++j) {
    for (int i = 0; i < l; ++i) {
      const long long g = alg.gram_coroots[i][j];
      if (g < 0)
        lo[j] += t * g;
      else
        hi[j] += t * g;
    }
    box *= static_cast<double>(hi[j] - lo[j] + 1);
  }
  if (box > 2e7) {
    std::ostringstream os;
    os << "enumerate_J refused: candidate box holds about " << box
       << " lattice points (limit 2e7)";
    throw CostGuardError(os.str());
  }

  std::vector<LatticeVector> out;
  std::vector<long long> w(lo);
  const Rational upper(t);
  while (true) {
    LatticeVector lam{w, Basis::Weight};
    bool inside = true;
    for (const Rational& y : coroot_coords(alg, lam)) {
      if (y < Rational(0) || !(y < upper)) {
        inside = false;
        break;
      }
    }
    if (inside && !on_wall(alg, ctx.kappa, lam)) out.push_back(lam);
    int j = l - 1;
    while (j >= 0 && w[j] == hi[j]) {
      w[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++w[j];
  }
  std::sort(out.begin(), out.end(),
            [](const LatticeVector& a, const LatticeVector& b) {
              return a.coords < b.coords;
            });

  const size_t expect = static_cast<size_t>(checked_pow_ll(A, l)) *
                        alg.weyl.size() * ctx.index_set.size();
  if (out.size() != expect)
    throw std::logic_error("enumerate_J: box count disagrees with the "
                           "alcove-orbit count");
  return out;
}

InvariantResult tau_seifert_general(const RepContext& ctx,
                                    const SeifertPresentation& m,
                                    const IndicatorTable* indicators) {
  Timer timer;
  const AlgebraData& alg = *ctx.alg;
  validate_seifert(m);
  const int l = alg.rank;
  const int np = alg.num_positive_roots;
  const long long W = static_cast<long long>(alg.weyl.size());

  // Refuse before shape_of: the exact Euler/Dedekind arithmetic there
  // should never run on multiplicities the evaluation would reject.
  double est = static_cast<double>(ctx.index_set.size());
  for (const auto& [alpha, beta] : m.fibers)
    est *= static_cast<double>(W) * std::pow(static_cast<double>(alpha), l);
  if (est > 1e9) {
    std::ostringstream os;
    os << "seifert-general refused: about " << est
       << " estimated terms (limit 1e9)";
    throw CostGuardError(os.str());
  }
  const SeifertShape s = shape_of(m);

  // Per-fiber data: beta_j^* in [0, alpha_j) inverting beta_j mod alpha_j.
  std::vector<long long> beta_star;
  beta_star.reserve(m.fibers.size());
  for (const auto& [alpha, beta] : m.fibers)
    beta_star.push_back(alpha == 1 ? 0 : mod_inverse(beta, alpha));

  std::vector<LatticeVector> wrho(alg.weyl.size());
  for (size_t wi = 0; wi < alg.weyl.size(); ++wi)
    wrho[wi] = apply_weyl(alg, alg.weyl[wi], alg.rho);

  const long long sin_exp = 2 - s.n - s.aeg;
  const Rational kappa_r(ctx.kappa);
  const long long count = static_cast<long long>(ctx.index_set.size());

  // Weight signs first (the indicator lookup may refuse); the heavy
  // fiber sums below are then pure and run chunked in parallel.
  std::vector<int> signs(static_cast<size_t>(count), 0);
  long long contributing = 0;
  for (long long li = 0; li < count; ++li) {
    signs[static_cast<size_t>(li)] = alcove_weight_sign(
        ctx, m, s.aeg, indicators, ctx.index_set[static_cast<size_t>(li)]);
    if (signs[static_cast<size_t>(li)] != 0) ++contributing;
  }

  cplx z = parallel_sum(count, [&](long long li) -> cplx {
    const int bsign = signs[static_cast<size_t>(li)];
    if (bsign == 0) return {0.0, 0.0};
    const LatticeVector& lam = ctx.index_set[static_cast<size_t>(li)];
    double sine_prod = 1.0;
    for (const auto& alpha : alg.positive_roots)
      sine_prod *= sin_pi(inner_product(alg, lam, alpha) / kappa_r);
    cplx term = static_cast<double>(bsign) *
                real_int_pow(sine_prod, sin_exp) *
                exp_pi_i(s.E * norm_sq(alg, lam) / kappa_r);
    for (size_t j = 0; j < m.fibers.size(); ++j) {
      const long long alpha = m.fibers[j].first;
      const long long bstar = beta_star[j];
      cplx fiber_sum{0.0, 0.0};
      for (size_t wi = 0; wi < alg.weyl.size(); ++wi) {
        const Rational lam_wrho = inner_product(alg, lam, wrho[wi]);
        const cplx outer =
            static_cast<double>(alg.weyl[wi].det) *
            exp_pi_i(Rational(-2) * lam_wrho / Rational(ctx.kappa * alpha));
        const std::vector<long long>& wr = wrho[wi].coords;
        cplx coset_sum{0.0, 0.0};
        for_each_coroot_rep(alg, alpha, [&](const std::vector<long long>& nu) {
          const long long nsq = coroot_norm_sq(alg, nu);
          const long long wrn = dot_ll(wr, nu);
          const long long lam_nu = dot_ll(lam.coords, nu);
          coset_sum += phase128(
              -static_cast<int128>(bstar) *
                      (static_cast<int128>(ctx.kappa) * nsq + 2 * wrn) -
                  static_cast<int128>(2) * lam_nu,
              alpha);
        });
        fiber_sum += outer * coset_sum;
      }
      term *= fiber_sum;
    }
    return term;
  });

  long long inner_terms = s.n == 0 ? 1 : 0;
  for (const auto& [alpha, beta] : m.fibers)
    inner_terms += W * checked_pow_ll(alpha, l);
  const long long terms = contributing * inner_terms;

  Rational bracket = Rational(3LL * (s.a_eps - 1) * s.sgnE) - s.E - s.sum_S;
  cplx value = exp_pi_i(bracket * alg.rho_sq / kappa_r);
  value *= i_pow(static_cast<long long>(s.n) * np);
  value *= std::pow(static_cast<double>(ctx.kappa),
                    l * (static_cast<double>(s.aeg) / 2.0 - 1.0));
  value /= std::pow(2.0, static_cast<double>(np) * (s.n + s.aeg - 2));
  value /= std::pow(alg.vol_coroot, 2.0 - static_cast<double>(s.aeg));
  value /= std::pow(static_cast<double>(s.A), l / 2.0);
  value *= exp_pi_i(Rational(3LL * (1 - s.a_eps) * s.sgnE) * alg.rho_sq /
                    Rational(alg.dual_coxeter));
  value *= z;

  return {value, "seifert-general", ctx.kappa, ctx.r, terms, timer.ms()};
}

InvariantResult tau_seifert_compact(const RepContext& ctx,
                                    const SeifertPresentation& m,
                                    const IndicatorTable* indicators) {
  Timer timer;
  const AlgebraData& alg = *ctx.alg;
  validate_seifert(m);

  double est = static_cast<double>(ctx.index_set.size());
  double inner = 1.0;
  for (const auto& [alpha, beta] : m.fibers)
    inner += std::pow(static_cast<double>(alpha), alg.rank);
  est *= inner;
  if (est > 1e9) {
    std::ostringstream os;
    os << "seifert-compact refused: about " << est
       << " estimated terms (limit 1e9)";
    throw CostGuardError(os.str());
  }
  const SeifertShape s = shape_of(m);

  // N_j in SL(2,Z) with first column (-beta_j, alpha_j)^T.
  std::vector<SL2Matrix> mats;
  Rational sum_phi;
  for (const auto& [alpha, beta] : m.fibers) {
    long long x = 0, y = 0;
    extended_gcd(beta, alpha, x, y);  // x beta + y alpha = 1
    SL2Matrix nmat = sl2(-beta, -y, alpha, -x);
    sum_phi += rademacher_phi(nmat);
    mats.push_back(nmat);
  }

  // The h-exponent carries Phi(N_j) with coefficient 1, not 3: the
  // Phi-dependent part of the prefactor must combine with each (N_j)_{lambda
  // rho} as omega^{Phi(N_j)} * R(N_j), the completion-independent pairing
  // (R(N Theta^t) = R(N) * omega^{-t} while Phi(N Theta^t) = Phi(N) + t).
  // With a coefficient 3 the value of the right-hand side would change by a
  // twelfth root of unity under a change of completion.
  const Rational kappa_r(ctx.kappa);
  cplx gamma =
      exp_pi_i((Rational(3LL * (1 - s.a_eps) * s.sgnE) + sum_phi) *
               alg.rho_sq / Rational(alg.dual_coxeter));
  gamma *= exp_pi_i((Rational(3LL * (s.a_eps - 1) * s.sgnE) + Rational(s.b) -
                     sum_phi) *
                    alg.rho_sq / kappa_r);

  const long long dim_exp = 2 - s.n - s.aeg;
  cplx z{0.0, 0.0};
  long long terms = 0;
  for (const LatticeVector& lam : ctx.index_set) {
    const int bsign = alcove_weight_sign(ctx, m, s.aeg, indicators, lam);
    if (bsign == 0) continue;
    const cplx xi_entry = rep_entry_rho(ctx, sl2_xi(), lam, RhoSide::Row);
    if (!(xi_entry.real() > 0.0) ||
        std::abs(xi_entry.imag()) > 1e-9 * xi_entry.real())
      throw std::logic_error("compact form: S-column entry not positive on "
                             "the alcove interior");
    cplx term = static_cast<double>(bsign) *
                exp_pi_i(Rational(-s.b) * norm_sq(alg, lam) / kappa_r) *
                real_int_pow(xi_entry.real(), dim_exp);
    for (const SL2Matrix& nmat : mats)
      term *= rep_entry_rho(ctx, nmat, lam, RhoSide::Row);
    z += term;
    terms += 1 + s.n;
  }
  return {gamma * z, "seifert-compact", ctx.kappa, ctx.r, terms, timer.ms()};
}

InvariantResult tau_seifert_coprime(const RepContext& ctx,
                                    const SeifertPresentation& m,
                                    const IndicatorTable* indicators) {
  Timer timer;
  const AlgebraData& alg = *ctx.alg;
  validate_seifert(m);
  const int l = alg.rank;
  const int np = alg.num_positive_roots;
  const long long W = static_cast<long long>(alg.weyl.size());

  for (size_t i = 0; i < m.fibers.size(); ++i)
    for (size_t j = i + 1; j < m.fibers.size(); ++j)
      if (std::gcd(m.fibers[i].first, m.fibers[j].first) != 1)
        throw InputError(
            "coprime evaluation needs pairwise coprime fiber orders");

  double est = static_cast<double>(ctx.index_set.size()) *
               static_cast<double>(W);
  for (const auto& [alpha, beta] : m.fibers)
    est *= std::pow(static_cast<double>(alpha), l);
  if (est > 1e9) {
    std::ostringstream os;
    os << "seifert-coprime refused: about " << est
       << " estimated terms (limit 1e9)";
    throw CostGuardError(os.str());
  }
  const SeifertShape s = shape_of(m);

  const std::vector<LatticeVector> J = enumerate_J(ctx, s.A);
  const Rational kappa_r(ctx.kappa);
  const long long sin_exp = 2 - s.n - s.aeg;
  const bool odd_genus = (s.aeg % 2 != 0);

  cplx z{0.0, 0.0};
  for (const LatticeVector& lam : J) {
    double gval = 1.0;
    if (m.epsilon == 'n') {
      AlcoveReduction red = reduce_to_alcove(alg, ctx.kappa, lam);
      if (red.wall)
        throw std::logic_error("coprime form: wall point inside J");
      if (!(dual_weight(alg, red.rep) == red.rep)) continue;
      if (odd_genus)
        gval = static_cast<double>(red.sign) *
               fs_indicator(alg, indicators, red.rep);
    }
    double sine_prod = 1.0;
    for (const auto& alpha : alg.positive_roots)
      sine_prod *= sin_pi(inner_product(alg, lam, alpha) / kappa_r);
    double fiber_prod = 1.0;
    for (const auto& [alpha, beta] : m.fibers)
      for (const auto& root : alg.positive_roots)
        fiber_prod *= sin_pi(inner_product(alg, lam, root) /
                             Rational(ctx.kappa * alpha));
    z += gval * real_int_pow(sine_prod, sin_exp) * fiber_prod *
         exp_pi_i(s.E * norm_sq(alg, lam) / kappa_r);
  }

  Rational bracket = Rational(3LL * (s.a_eps - 1) * s.sgnE) - s.E - s.sum_S;
  cplx value = exp_pi_i(bracket * alg.rho_sq / kappa_r);
  value *= std::pow(static_cast<double>(ctx.kappa),
                    l * (static_cast<double>(s.aeg) / 2.0 - 1.0));
  value /= std::pow(2.0, static_cast<double>(np) * (s.aeg - 2));
  value /= std::pow(alg.vol_coroot, 2.0 - static_cast<double>(s.aeg));
  value /= static_cast<double>(W);
  value /= std::pow(static_cast<double>(s.A), l / 2.0);
  value *= exp_pi_i(Rational(3LL * (1 - s.a_eps) * s.sgnE) * alg.rho_sq /
                    Rational(alg.dual_coxeter));
  value *= z;

  return {value, "seifert-coprime", ctx.kappa, ctx.r,
          static_cast<long long>(J.size()), timer.ms()};
}

namespace {

// Shared state for the two closed lens forms at p != 0.
struct LensTables {
  long long P = 1;          // |p|
  long long coset_count = 1;  // P^l
  std::vector<cplx> quad;   // exp(pi i q kappa t / p), t mod 2P
  std::vector<cplx> lin;    // exp(2 pi i t / p), t mod P
};

LensTables make_lens_tables(const RepContext& ctx, long long p, long long q) {
  LensTables t;
  t.P = std::abs(p);
  t.coset_count = checked_pow_ll(t.P, ctx.alg->rank);
  t.quad.resize(static_cast<size_t>(2 * t.P));
  for (long long k = 0; k < 2 * t.P; ++k)
    t.quad[static_cast<size_t>(k)] =
        phase128(static_cast<int128>(q) * ctx.kappa * k, p);
  t.lin.resize(static_cast<size_t>(t.P));
  for (long long k = 0; k < t.P; ++k)
    t.lin[static_cast<size_t>(k)] = phase128(2 * static_cast<int128>(k), p);
  return t;
}

void coset_from_index(long long idx, long long P, std::vector<long long>& nu) {
  for (size_t i = nu.size(); i-- > 0;) {
    nu[i] = idx % P;
    idx /= P;
  }
}

}  // namespace

InvariantResult tau_lens(const RepContext& ctx, long long p, long long q) {
  Timer timer;
  const AlgebraData& alg = *ctx.alg;
  if (std::gcd(std::abs(p), std::abs(q)) != 1)
    throw InputError("lens space parameters must be coprime");
  if (p == 0)
    return {cplx{1.0, 0.0}, "lens", ctx.kappa, ctx.r, 1, timer.ms()};

  const int l = alg.rank;
  const int np = alg.num_positive_roots;
  const long long P = std::abs(p);
  const long long W = static_cast<long long>(alg.weyl.size());
  const double est =
      std::pow(static_cast<double>(P), l) * static_cast<double>(W + np);
  if (est > 2e9) {
    std::ostringstream os;
    os << "lens evaluation refused: about " << est
       << " estimated terms (limit 2e9)";
    throw CostGuardError(os.str());
  }
  const double table_mem =
      static_cast<double>(P) *
      (3.0 + 2.0 * static_cast<double>(ctx.kappa) * np);
  if (table_mem > 1e8) {
    std::ostringstream os;
    os << "lens evaluation refused: phase tables would hold about "
       << table_mem << " entries (limit 1e8)";
    throw CostGuardError(os.str());
  }

  const Rational dedekind =
      Rational(12LL * sign_of(p)) * dedekind_sum(q, p);
  const cplx dedekind_phase =
      exp_pi_i(dedekind * alg.rho_sq / Rational(ctx.kappa));
  const double scale = 1.0 / (std::pow(static_cast<double>(ctx.kappa) *
                                           static_cast<double>(P),
                                       l / 2.0) *
                              alg.vol_coroot);
  const double sgn_pow = (p < 0 && np % 2 != 0) ? -1.0 : 1.0;
  const LensTables tab = make_lens_tables(ctx, p, q);

  // Weight coordinates of w(rho) and the matching phase factors.
  std::vector<std::vector<long long>> wrho(alg.weyl.size());
  std::vector<cplx> wfac(alg.weyl.size());
  for (size_t wi = 0; wi < alg.weyl.size(); ++wi) {
    LatticeVector v = apply_weyl(alg, alg.weyl[wi], alg.rho);
    wrho[wi] = v.coords;
    Rational ip = inner_product(alg, alg.rho, v);
    wfac[wi] = static_cast<double>(alg.weyl[wi].det) *
               exp_pi_i(Rational(-2) * ip / (Rational(p) * Rational(ctx.kappa)));
  }

  // Sine tables per positive root: <rho + kappa nu, alpha> depends on
  // <nu, alpha> mod 2 P kappa.
  const long long sin_period = 2 * P * ctx.kappa;
  std::vector<std::vector<double>> sin_tab(alg.positive_roots.size());
  for (size_t ai = 0; ai < alg.positive_roots.size(); ++ai) {
    const Rational ra = inner_product(alg, alg.rho, alg.positive_roots[ai]);
    sin_tab[ai].resize(static_cast<size_t>(sin_period));
    for (long long k = 0; k < sin_period; ++k) {
      Rational arg = (ra + Rational(ctx.kappa) * Rational(k)) /
                     (Rational(p) * Rational(ctx.kappa));
      sin_tab[ai][static_cast<size_t>(k)] = sin_pi(arg);
    }
  }

  cplx weyl_sum = parallel_sum(tab.coset_count, [&](long long idx) {
    std::vector<long long> nu(static_cast<size_t>(l), 0);
    coset_from_index(idx, P, nu);
    const long long nsq = coroot_norm_sq(alg, nu);
    long long snr = 0;
    for (long long c : nu) snr += c;
    const cplx quad = tab.quad[static_cast<size_t>(mod_pos(nsq, 2 * P))];
    cplx inner{0.0, 0.0};
    for (size_t wi = 0; wi < wrho.size(); ++wi) {
      const long long key =
          mod_pos128(static_cast<int128>(q) * snr - dot_ll(wrho[wi], nu), P);
      inner += wfac[wi] * tab.lin[static_cast<size_t>(key)];
    }
    return quad * inner;
  });
  const cplx weyl_value =
      i_pow(np) * sgn_pow * scale * dedekind_phase * weyl_sum;

  cplx sine_sum = parallel_sum(tab.coset_count, [&](long long idx) {
    std::vector<long long> nu(static_cast<size_t>(l), 0);
    coset_from_index(idx, P, nu);
    const long long nsq = coroot_norm_sq(alg, nu);
    long long snr = 0;
    for (long long c : nu) snr += c;
    cplx term = tab.quad[static_cast<size_t>(mod_pos(nsq, 2 * P))] *
                tab.lin[static_cast<size_t>(
                    mod_pos128(static_cast<int128>(q) * snr, P))];
    double prod = 1.0;
    for (size_t ai = 0; ai < alg.positive_roots.size(); ++ai) {
      const long long na =
          dot_ll(nu, alg.positive_roots[ai].coords);
      prod *= sin_tab[ai][static_cast<size_t>(mod_pos(na, sin_period))];
    }
    return term * prod;
  });
  const cplx sine_value =
      std::pow(2.0, np) * sgn_pow * scale * dedekind_phase * sine_sum;

  if (std::abs(weyl_value - sine_value) >
      1e-10 * std::max(1.0, std::abs(sine_value)))
    throw std::logic_error("lens forms disagree beyond tolerance");

  return {sine_value, "lens", ctx.kappa, ctx.r, tab.coset_count * (W + 1),
          timer.ms()};
}

InvariantResult tau_lens_rep(const RepContext& ctx, long long p, long long q) {
  Timer timer;
  const AlgebraData& alg = *ctx.alg;
  if (std::gcd(std::abs(p), std::abs(q)) != 1)
    throw InputError("lens space parameters must be coprime");
  const double est = std::pow(static_cast<double>(std::max(1LL, std::abs(p))),
                              alg.rank) *
                     static_cast<double>(alg.weyl.size());
  if (est > 1e9) {
    std::ostringstream os;
    os << "lens-rep evaluation refused: about " << est
       << " estimated terms (limit 1e9)";
    throw CostGuardError(os.str());
  }

  long long x = 0, y = 0;
  extended_gcd(q, p, x, y);  // q x + p y = 1
  const SL2Matrix u = sl2(q, -y, p, x);
  const Rational phi = rademacher_phi(u);
  const Rational t = alg.rho_sq / Rational(alg.dual_coxeter) -
                     alg.rho_sq / Rational(ctx.kappa);
  const cplx value = exp_pi_i(phi * t) * rep_entry(ctx, u, alg.rho, alg.rho);
  const long long terms =
      checked_pow_ll(std::max(1LL, std::abs(p)), alg.rank) *
      static_cast<long long>(alg.weyl.size());
  return {value, "lens-rep", ctx.kappa, ctx.r, terms, timer.ms()};
}

InvariantResult tau_lens_coprime(const RepContext& ctx, long long p,
                                 long long q) {
  Timer timer;
  const AlgebraData& alg = *ctx.alg;
  if (std::gcd(std::abs(p), std::abs(q)) != 1)
    throw InputError("lens space parameters must be coprime");
  if (p == 0 || std::gcd(ctx.r, std::abs(p)) != 1)
    throw InputError(
        "closed coprime form needs gcd(r, p) = 1 with p nonzero; use the "
        "general lens evaluation instead");

  const int l = alg.rank;
  const int np = alg.num_positive_roots;
  const long long P = std::abs(p);
  const double est = std::pow(static_cast<double>(P), l);
  if (est > 1e9 || P > 30000000) {
    std::ostringstream os;
    os << "lens-coprime evaluation refused: about " << est
       << " estimated terms (limit 1e9)";
    throw CostGuardError(os.str());
  }

  const Rational two_m_rho_sq = Rational(2LL * alg.lacing) * alg.rho_sq;
  if (!two_m_rho_sq.is_integer())
    throw std::logic_error("2 m |rho|^2 must be integral");
  const long long tm = two_m_rho_sq.num();

  // Scalar phase and the root-dependent factor built from the inverse of p.
  cplx scalar;
  long long inv_factor = 0;  // multiplies <.,.>/kappa phases
  if (P % 2 == 1) {
    const long long qs = mod_inverse(q, P);
    const long long fours = P == 1 ? 0 : mod_inverse(4, P);
    const long long rs = P == 1 ? 0 : mod_inverse(ctx.r, P);
    const long long k =
        mod_pos128(static_cast<int128>(fours) * mod_pos(q + qs, P) % P * rs %
                       P * mod_pos(tm, P),
                   P);
    scalar = phase128(-2 * static_cast<int128>(k), p);
    inv_factor = mod_inverse(p, 4 * ctx.r);
  } else {
    const long long P4 = 4 * P;
    const long long qs = mod_inverse(q, P4);
    const long long rs = mod_inverse(ctx.r, P4);
    const long long k =
        mod_pos128(static_cast<int128>(mod_pos(q + qs, P4)) * rs % P4 *
                       mod_pos(tm, P4),
                   P4);
    scalar = phase128(-2 * static_cast<int128>(k), 4 * p);
    inv_factor = 4 * mod_inverse(4 * mod_pos(p, ctx.r) % ctx.r, ctx.r);
  }

  const Rational dedekind =
      Rational(12LL * sign_of(p)) * dedekind_sum(q, p);
  const cplx dedekind_phase =
      exp_pi_i(dedekind * alg.rho_sq / Rational(ctx.kappa));
  const double scale = 1.0 / (std::pow(static_cast<double>(ctx.kappa) *
                                           static_cast<double>(P),
                                       l / 2.0) *
                              alg.vol_coroot);
  const double sgn_pow = (p < 0 && np % 2 != 0) ? -1.0 : 1.0;

  // Quadratic coset sum, shared by both displayed variants.
  const LensTables tab = make_lens_tables(ctx, p, q);
  cplx coset_sum = parallel_sum(tab.coset_count, [&](long long idx) {
    std::vector<long long> nu(static_cast<size_t>(l), 0);
    coset_from_index(idx, P, nu);
    return tab.quad[static_cast<size_t>(
        mod_pos(coroot_norm_sq(alg, nu), 2 * P))];
  });

  cplx weyl_factor{0.0, 0.0};
  for (const WeylElement& w : alg.weyl) {
    Rational ip = inner_product(alg, alg.rho, apply_weyl(alg, w, alg.rho));
    weyl_factor += static_cast<double>(w.det) *
                   exp_pi_i(Rational(-2 * inv_factor) * ip /
                            Rational(ctx.kappa));
  }
  double sine_factor = 1.0;
  for (const auto& alpha : alg.positive_roots)
    sine_factor *= sin_pi(Rational(inv_factor) *
                          inner_product(alg, alg.rho, alpha) /
                          Rational(ctx.kappa));

  const cplx common = dedekind_phase * scalar * scale * coset_sum;
  const cplx weyl_value = i_pow(np) * sgn_pow * common * weyl_factor;
  const cplx sine_value = std::pow(2.0, np) * sgn_pow * common * sine_factor;
  if (std::abs(weyl_value - sine_value) >
      1e-10 * std::max(1.0, std::abs(sine_value)))
    throw std::logic_error("coprime lens forms disagree beyond tolerance");

  return {sine_value, "lens-coprime", ctx.kappa, ctx.r,
          tab.coset_count + static_cast<long long>(alg.weyl.size()),
          timer.ms()};
}

}  // namespace rt
