#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rt/algebra.hpp"

namespace rt {

// One instance of the lattice Gauss-sum reciprocity identity with
// Lambda = X (weight lattice) and dual Lambda* = Y^vee (coroot lattice),
// f = f_scalar * identity, and a rational shift vector psi given in
// weight-basis coordinates.  The integrality assumptions are verified
// exactly at construction; violating instances are rejected.
struct GaussInstance {
  const AlgebraData* alg = nullptr;
  long long r = 0;
  long long f_scalar = 0;
  std::vector<Rational> psi;
};

// Exact admissibility test; on failure *why (if non-null) names the
// violated clause.
bool gauss_admissible(const AlgebraData& alg, long long r, long long f_scalar,
                      const std::vector<Rational>& psi,
                      std::string* why = nullptr);

GaussInstance make_gauss_instance(const AlgebraData& alg, long long r,
                                  long long f_scalar,
                                  std::vector<Rational> psi);

// vol(Y^vee) * sum over X/rX of exp(pi i f|lambda|^2 / r + 2 pi i <lambda,psi>)
std::complex<double> gauss_lhs(const GaussInstance& inst);

// (det f/i)^{-1/2} r^{l/2} * sum over Y^vee/f Y^vee of
// exp(-pi i r <mu+psi, mu+psi>/f), principal square-root branch.
std::complex<double> gauss_rhs(const GaussInstance& inst);

double reciprocity_residual(const GaussInstance& inst);

}  // namespace rt
