#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "rt/algebra.hpp"
#include "rt/modular.hpp"

namespace rt {

// The level-kappa representation attached to an algebra, acting on the
// free vector space over the alcove interior index set.
struct RepContext {
  const AlgebraData* alg = nullptr;  // must outlive the context
  long long kappa = 0;
  long long r = 0;  // lacing * kappa
  std::vector<LatticeVector> index_set;
  std::map<std::vector<long long>, int> index_of;
};

RepContext make_rep_context(const AlgebraData& alg, long long kappa);

struct RepMatrix {
  Eigen::MatrixXcd entries;
  std::string label;
};

// Dense generator images and word products over the index set.  All of
// these materialize |index_set|^2 entries and refuse to run above the
// size guard (20000 states).
RepMatrix rep_xi(const RepContext& ctx);
RepMatrix rep_theta_diag(const RepContext& ctx);
RepMatrix rep_theta_power(const RepContext& ctx, long long b);
RepMatrix rep_minus_one(const RepContext& ctx);  // image of -identity
// R(Theta)^{m_t} R(Xi) ... R(Theta)^{m_1} R(Xi)
RepMatrix rep_word(const RepContext& ctx, const Expansion& c);
// Image of an arbitrary U through decomposition + word product; this is
// the oracle path against which the closed forms are tested.
RepMatrix rep_of(const RepContext& ctx, const SL2Matrix& u);

// Closed-form single entry R(U)_{lambda,mu} for lambda, mu anywhere in the
// weight lattice (values extend off the alcove Weyl-antisymmetrically and
// kappa-coroot-periodically).  Dispatch: c=0 orbit branch, else the d/c
// coset-sum formula.
std::complex<double> rep_entry(const RepContext& ctx, const SL2Matrix& u,
                               const LatticeVector& lambda,
                               const LatticeVector& mu);

// Independent closed-form variants, used as cross-checks of rep_entry.
// BA requires a != 0; UnitarityBD requires d != 0; all require c != 0.
enum class EntryVariant { DC, BA, UnitarityAC, UnitarityBD };
std::complex<double> rep_entry_variant(const RepContext& ctx,
                                       const SL2Matrix& u,
                                       const LatticeVector& lambda,
                                       const LatticeVector& mu,
                                       EntryVariant variant);

// Sine-product specializations of the rho row/column (c != 0 only).
enum class RhoSide { Row, Column };  // Row: R(U)_{lambda,rho}; Column: R(U)_{rho,mu}
std::complex<double> rep_entry_rho(const RepContext& ctx, const SL2Matrix& u,
                                   const LatticeVector& lambda, RhoSide side);

}  // namespace rt
