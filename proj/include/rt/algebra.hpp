#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rt/rational.hpp"

namespace rt {

// Coordinates of a lattice vector, either in the basis of fundamental
// weights (weight lattice X) or in the basis of simple coroots (coroot
// lattice Y^vee).
enum class Basis { Weight, Coroot };

struct LatticeVector {
  std::vector<long long> coords;
  Basis basis = Basis::Weight;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

// A Weyl group element stored as its integer matrix on weight coordinates:
// if x has weight coordinates v then w(x) has weight coordinates mat * v.
struct WeylElement {
  std::vector<std::vector<long long>> mat;  // l x l
  int det = 1;
  int length = 0;
};

// Immutable root-system data for one simple Lie algebra, built entirely
// from the Cartan matrix.  The normalization fixes |alpha|^2 = 2 for long
// roots, so the pairing <.,.> below is the Killing-form inner product in
// that normalization.
struct AlgebraData {
  char family = 'A';
  int rank = 0;

  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<std::vector<long long>> cartan;
  // d[i] = |alpha_i|^2 / 2  (1 for long roots, 1/lacing for short)
  std::vector<Rational> d;
  // gram_weights[i][j] = <Lambda_i, Lambda_j> (fundamental weights), exact
  std::vector<std::vector<Rational>> gram_weights;
  // gram_coroots[i][j] = <alpha_i^vee, alpha_j^vee>, integral with even diagonal
  std::vector<std::vector<long long>> gram_coroots;

  int lacing = 1;        // max ratio of root lengths squared (1, 2 or 3)
  long long dual_coxeter = 0;  // h^vee
  int dim_g = 0;         // rank + number of roots
  int num_positive_roots = 0;

  std::vector<LatticeVector> positive_roots;  // weight-basis coordinates
  // alpha-basis coordinates of each positive root, parallel to positive_roots
  std::vector<std::vector<long long>> positive_roots_alpha;
  LatticeVector rho;     // (1,...,1) in weight basis
  LatticeVector theta;   // highest root, weight basis
  std::vector<long long> comarks;  // <Lambda_i, theta>

  long long integer_D = 1;   // minimal D with D*<x,y> integral on X x X
  long long det_gram_coroot = 1;  // det of gram_coroots = vol(Y^vee)^2
  double vol_coroot = 1.0;   // covolume of the coroot lattice

  std::vector<WeylElement> weyl;  // full Weyl group, identity first, BFS order
  int w0_index = 0;               // longest element
  Rational rho_sq;                // |rho|^2
};

// Families: A (l>=1), B (l>=2), C (l>=2), D (l>=3), E (l in {6,7,8}),
// F (l=4), G (l=2).  Ranks above 6 are rejected: the Weyl group and weight
// enumerations here are dense, and 6 covers every supported use.
AlgebraData build_algebra(char family, int rank);

// --- exact pairing helpers -------------------------------------------------

// <x, y> for lattice vectors in either basis.
Rational inner_product(const AlgebraData& alg, const LatticeVector& x,
                       const LatticeVector& y);
Rational norm_sq(const AlgebraData& alg, const LatticeVector& x);

// Change of basis.  Coroot -> weight is integral (rows of gram_coroots);
// weight -> coroot is rational in general and throws InputError when the
// result is not integral.
LatticeVector to_weight_basis(const AlgebraData& alg, const LatticeVector& v);
LatticeVector to_coroot_basis(const AlgebraData& alg, const LatticeVector& v);
// Exact weight->coroot coordinates without an integrality requirement.
std::vector<Rational> coroot_coords(const AlgebraData& alg, const LatticeVector& v);

// w(x) in weight coordinates.
LatticeVector apply_weyl(const AlgebraData& alg, const WeylElement& w,
                         const LatticeVector& x);

// -w0(lambda): the highest weight of the dual representation.
LatticeVector dual_weight(const AlgebraData& alg, const LatticeVector& lambda);

// --- enumerations ----------------------------------------------------------

// Weights in the interior of the level-kappa fundamental alcove:
// all coordinates >= 1 and <lambda, theta> <= kappa - 1.  Sorted
// lexicographically by weight coordinates.  Requires kappa >= h^vee.
std::vector<LatticeVector> alcove_interior_weights(const AlgebraData& alg,
                                                   long long kappa);

// Representatives of Y^vee / c Y^vee: coroot coordinates in {0..|c|-1}^l.
// c must be nonzero.
std::vector<LatticeVector> coroot_coset_reps(const AlgebraData& alg, long long c);
// Streaming variant to avoid materializing |c|^l vectors.
void for_each_coroot_rep(const AlgebraData& alg, long long c,
                         const std::function<void(const std::vector<long long>&)>& fn);

// True when x lies on an affine wall at level kappa: some positive root
// alpha has <x, alpha> in kappa * Z.  Exact.
bool on_wall(const AlgebraData& alg, long long kappa, const LatticeVector& x);

// Reduce x (weight basis) into the closed level-kappa fundamental alcove by
// affine Weyl moves.  Returns the representative, the sign (-1)^length of
// the finite-Weyl part used, and whether x lies on a wall (in which case
// the sign is meaningless).
struct AlcoveReduction {
  LatticeVector rep;
  int sign = 1;
  bool wall = false;
};
AlcoveReduction reduce_to_alcove(const AlgebraData& alg, long long kappa,
                                 const LatticeVector& x);

}  // namespace rt
