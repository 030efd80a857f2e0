#pragma once

#include <complex>
#include <vector>

#include "rt/algebra.hpp"
#include "rt/rational.hpp"
#include "rt/rep.hpp"

namespace rt {

// Large-level structure of the lens-space invariants.  The coset sum over
// Y^vee / p Y^vee splits into strata by how many positive roots pair with
// the representative into p Z; each stratum enters the expansion in the
// level at its own order, with an explicit leading coefficient.

// levels[j] lists the representatives nu of Y^vee / p Y^vee (coroot
// coordinates in [0,|p|)^l) with <nu, alpha> in p Z for exactly j positive
// roots alpha; j runs from 0 to the number of positive roots and the
// levels partition the full coset space.  nu = 0 always sits in the top
// stratum.
struct Stratification {
  long long p = 0;
  std::vector<std::vector<LatticeVector>> levels;
};

// Requires p != 0.  Exact integer tests throughout; the partition property
// is asserted.
Stratification partition_levels(const AlgebraData& alg, long long p);

// Leading coefficient of one coset representative:
//   b_nu = prod_{<nu,alpha> in pZ} (-1)^{<nu,alpha>/p} <rho, alpha>
//        * prod_{<nu,alpha> not in pZ} sin(pi <nu,alpha> / p).
// nu must carry coroot coordinates.  b_0 = prod_alpha <rho, alpha>.
double coefficient_b(const AlgebraData& alg, long long p,
                     const LatticeVector& nu);

// Conjectured Chern-Simons values of flat connections on L(p,q): the set
// { q^* |nu|^2 / (2p) mod 1 : nu in Y^vee / p Y^vee } with q q^* = 1 mod p,
// as exact rationals in [0,1), sorted and deduplicated.  The overall sign
// of the set depends on an orientation convention this library does not
// fix, so the ambiguity is reported rather than resolved.
struct CsValueSet {
  std::vector<Rational> values;
  bool sign_ambiguous = true;
};
CsValueSet cs_values(const AlgebraData& alg, long long p, long long q);

// Reassembles tau(L(p,q)) from the stratified coset sum with every sine
// factor split by the angle-addition rule at rho/(p kappa) + nu/p, the
// quadratic and linear phases rewritten through q^*, and the Dedekind
// prefactor kept exact.  Returns |tau_lens - reassembled|, which is float
// noise: the decomposition that produces the large-level expansion is an
// identity, not a truncation.
double resum_check(const RepContext& ctx, long long p, long long q);

// First surviving term of the expansion: the lowest nonempty stratum j0
// taken at its own order,
//   (2 sign p)^{|D+|} / ((kappa |p|)^{l/2} vol(Y^vee)) * (pi/(p kappa))^{j0}
//     * sum_{nu in M_{j0}} b_nu exp(pi i kappa q^* |nu|^2 / p)
//                               exp(2 pi i q^* <nu, rho> / p).
// For |p| >= 3 in rank one this is the classical sl2 leading asymptote; for
// |p| = 1 the sum degenerates to the single nu = 0 term.
std::complex<double> leading_term(const AlgebraData& alg, long long kappa,
                                  long long p, long long q);

}  // namespace rt
