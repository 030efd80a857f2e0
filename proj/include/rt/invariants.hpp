#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rt/modular.hpp"
#include "rt/rep.hpp"

namespace rt {

// Seifert data (epsilon; g | b; (alpha_1,beta_1),...,(alpha_n,beta_n)).
// Normalized data carry the integer b and satisfy 0 < beta_j < alpha_j;
// non-normalized data have no b and only require alpha_j > 0 with
// gcd(alpha_j, beta_j) = 1.
struct SeifertPresentation {
  char epsilon = 'o';  // 'o' orientable base, 'n' non-orientable (g > 0)
  long long genus = 0;
  bool normalized = true;
  long long b = 0;  // ignored when !normalized
  std::vector<std::pair<long long, long long>> fibers;
};

// Throws InputError if the data violate the class invariants.
void validate_seifert(const SeifertPresentation& m);

// E = -(b + sum beta_j/alpha_j), or -sum beta_j/alpha_j when non-normalized.
Rational seifert_euler(const SeifertPresentation& m);

struct TqftConstants {
  double rank_D = 0.0;                  // positive rank of the category
  std::complex<double> omega;           // exp(pi i |rho|^2 (1/h - 1/kappa))
  std::complex<double> delta_over_D;    // omega^{-3}
};
TqftConstants tqft_constants(const RepContext& ctx);

struct InvariantResult {
  std::complex<double> value;
  std::string method;
  long long kappa = 0;
  long long r = 0;
  long long term_count = 0;
  double runtime_ms = 0.0;
};

// Frobenius-Schur indicators for self-dual alcove weights, keyed by weight
// coordinates; required only for epsilon = 'n' with odd genus, where the
// sign enters as epsilon_lambda^{a_eps g}.  No closed formula is assumed:
// a missing table (or a missing self-dual entry) is a refused computation.
using IndicatorTable = std::map<std::vector<long long>, int>;

InvariantResult tau_seifert_general(const RepContext& ctx,
                                    const SeifertPresentation& m,
                                    const IndicatorTable* indicators = nullptr);

InvariantResult tau_seifert_compact(const RepContext& ctx,
                                    const SeifertPresentation& m,
                                    const IndicatorTable* indicators = nullptr);

InvariantResult tau_seifert_coprime(const RepContext& ctx,
                                    const SeifertPresentation& m,
                                    const IndicatorTable* indicators = nullptr);

// Weight-lattice points of the kappa*A box in coroot coordinates
// (coordinates in [0, kappa*A)) with kappa-wall points removed; for A = 1
// this is the off-wall part of a fundamental domain of kappa Y^vee.
// Cardinality: A^l * |W| * |interior alcove weights|.
std::vector<LatticeVector> enumerate_J(const RepContext& ctx, long long A);

// Lens space L(p,q): surgery on the unknot with coefficient -p/q.
InvariantResult tau_lens(const RepContext& ctx, long long p, long long q);

// omega^{Phi(U)} * R(U)_{rho rho} with U any SL(2,Z) completion of the
// first column (q, p)^T; independent of the completion.
InvariantResult tau_lens_rep(const RepContext& ctx, long long p, long long q);

// Closed forms valid when gcd(r, p) = 1, p != 0.
InvariantResult tau_lens_coprime(const RepContext& ctx, long long p,
                                 long long q);

// A <= 2-fiber Seifert presentation of L(p,q) (orientable base, genus 0),
// via -p/q = -(b + beta/alpha).  Used to cross-check the lens formulas
// against the Seifert ones.
SeifertPresentation lens_presentation(long long p, long long q);

}  // namespace rt
