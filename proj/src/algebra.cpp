#include "rt/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "rt/errors.hpp"

namespace rt {

namespace {

using Mat = std::vector<std::vector<long long>>;
using RMat = std::vector<std::vector<Rational>>;

Mat cartan_matrix(char family, int l) {
  Mat a(l, std::vector<long long>(l, 0));
  for (int i = 0; i < l; ++i) a[i][i] = 2;
  auto edge = [&](int i, int j) {
    a[i][j] = -1;
    a[j][i] = -1;
  };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < l; ++i) edge(i, i + 1);
      break;
    case 'B':  // short simple root last
      for (int i = 0; i + 1 < l; ++i) edge(i, i + 1);
      a[l - 2][l - 1] = -2;
      break;
    case 'C':  // long simple root last
      for (int i = 0; i + 1 < l; ++i) edge(i, i + 1);
      a[l - 1][l - 2] = -2;
      break;
    case 'D':
      for (int i = 0; i + 2 < l; ++i) edge(i, i + 1);
      edge(l - 3, l - 1);
      break;
    case 'E':
      // Bourbaki numbering shifted to 0-based: branch node is 3.
      edge(0, 2);
      edge(2, 3);
      edge(3, 4);
      edge(1, 3);
      for (int i = 4; i + 1 < l; ++i) edge(i, i + 1);
      break;
    case 'F':
      edge(0, 1);
      edge(1, 2);
      edge(2, 3);
      a[1][2] = -2;
      break;
    case 'G':
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default:
      throw InputError("unknown family");
  }
  return a;
}

void validate_type(char family, int rank) {
  bool ok = false;
  switch (family) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 3; break;
    case 'E': ok = rank == 6 || rank == 7 || rank == 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: ok = false; break;
  }
  if (!ok)
    throw InputError(std::string("invalid simple type ") + family +
                     std::to_string(rank));
}

// Solve d_j * cartan[i][j] = d_i * cartan[j][i] over the Dynkin graph and
// normalize so the largest value (long roots) is 1.
std::vector<Rational> root_half_norms(const Mat& a) {
  int l = static_cast<int>(a.size());
  std::vector<Rational> d(l, Rational(0));
  std::vector<bool> seen(l, false);
  d[0] = Rational(1);
  seen[0] = true;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int j = 0; j < l; ++j) {
      if (j == i || a[i][j] == 0) continue;
      Rational dj = d[i] * Rational(a[j][i], a[i][j]);
      if (!seen[j]) {
        d[j] = dj;
        seen[j] = true;
        q.push(j);
      } else if (d[j] != dj) {
        throw std::logic_error("inconsistent Cartan symmetrization");
      }
    }
  }
  for (int i = 0; i < l; ++i)
    if (!seen[i]) throw std::logic_error("disconnected Dynkin diagram");
  Rational dmax = d[0];
  for (const auto& x : d) dmax = std::max(dmax, x);
  for (auto& x : d) x /= dmax;
  return d;
}

RMat invert_rational(RMat m) {
  int n = static_cast<int>(m.size());
  RMat inv(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != Rational(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::logic_error("singular Gram matrix");
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    Rational p = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == Rational(0)) continue;
      Rational f = m[r][col];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Rational det_rational(RMat m) {
  int n = static_cast<int>(m.size());
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != Rational(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(m[col], m[pivot]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == Rational(0)) continue;
      Rational f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace

AlgebraData build_algebra(char family, int rank) {
  validate_type(family, rank);
  if (rank > 6)
    throw PreconditionError(
        "rank above 6 exceeds the dense Weyl/alcove enumeration guard");

  AlgebraData alg;
  alg.family = family;
  alg.rank = rank;
  const int l = rank;
  alg.cartan = cartan_matrix(family, l);
  alg.d = root_half_norms(alg.cartan);

  // lacing = 1 / min d_i
  Rational dmin = alg.d[0];
  for (const auto& x : alg.d) dmin = std::min(dmin, x);
  Rational mr = Rational(1) / dmin;
  if (!mr.is_integer() || mr.num() < 1 || mr.num() > 3)
    throw std::logic_error("unexpected lacing number");
  alg.lacing = static_cast<int>(mr.num());

  // gram_coroots[i][j] = <alpha_i^vee, alpha_j^vee> = cartan[i][j] / d_i
  alg.gram_coroots.assign(l, std::vector<long long>(l, 0));
  RMat gc(l, std::vector<Rational>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      Rational v = Rational(alg.cartan[i][j]) / alg.d[i];
      if (!v.is_integer()) throw std::logic_error("coroot Gram not integral");
      alg.gram_coroots[i][j] = v.num();
      gc[i][j] = v;
    }
  for (int i = 0; i < l; ++i) {
    if (alg.gram_coroots[i][i] % 2 != 0)
      throw std::logic_error("coroot Gram diagonal not even");
    for (int j = 0; j < l; ++j)
      if (alg.gram_coroots[i][j] != alg.gram_coroots[j][i])
        throw std::logic_error("coroot Gram not symmetric");
  }

  alg.gram_weights = invert_rational(gc);

  Rational detgc = det_rational(gc);
  if (!detgc.is_integer() || detgc.num() <= 0)
    throw std::logic_error("coroot Gram determinant not a positive integer");
  alg.det_gram_coroot = detgc.num();
  alg.vol_coroot = std::sqrt(static_cast<double>(alg.det_gram_coroot));

  // integer_D: least D with D*<x,y> integral and D*<x,x> even on X.
  long long d0 = 1;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) d0 = lcm_ll(d0, alg.gram_weights[i][j].den());
  bool even_ok = true;
  for (int i = 0; i < l; ++i) {
    Rational v = alg.gram_weights[i][i] * Rational(d0);
    if (!v.is_even_integer()) even_ok = false;
  }
  alg.integer_D = even_ok ? d0 : 2 * d0;

  // Root closure: orbit of the simple roots under simple reflections,
  // tracked in parallel weight-basis and alpha-basis coordinates.
  struct RootRec {
    std::vector<long long> w;  // weight coords
    std::vector<long long> av;  // alpha coords
  };
  std::map<std::vector<long long>, RootRec> roots;
  std::queue<std::vector<long long>> work;
  for (int i = 0; i < l; ++i) {
    RootRec rec;
    rec.w = alg.cartan[i];
    rec.av.assign(l, 0);
    rec.av[i] = 1;
    roots[rec.w] = rec;
    work.push(rec.w);
  }
  while (!work.empty()) {
    RootRec cur = roots[work.front()];
    work.pop();
    for (int i = 0; i < l; ++i) {
      RootRec nxt = cur;
      long long ci = cur.w[i];  // <beta, alpha_i^vee>
      for (int j = 0; j < l; ++j) nxt.w[j] -= ci * alg.cartan[i][j];
      nxt.av[i] -= ci;
      if (roots.find(nxt.w) == roots.end()) {
        roots[nxt.w] = nxt;
        work.push(nxt.w);
      }
    }
  }
  std::vector<RootRec> pos;
  for (const auto& [k, rec] : roots) {
    bool nonneg = true, nonpos = true;
    for (long long c : rec.av) {
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) throw std::logic_error("mixed-sign root");
    if (nonneg) pos.push_back(rec);
  }
  if (2 * pos.size() != roots.size())
    throw std::logic_error("root set not symmetric");
  std::sort(pos.begin(), pos.end(), [](const RootRec& a, const RootRec& b) {
    long long ha = std::accumulate(a.av.begin(), a.av.end(), 0LL);
    long long hb = std::accumulate(b.av.begin(), b.av.end(), 0LL);
    if (ha != hb) return ha < hb;
    return a.av < b.av;
  });
  alg.num_positive_roots = static_cast<int>(pos.size());
  alg.dim_g = l + static_cast<int>(roots.size());
  for (const auto& rec : pos) {
    alg.positive_roots.push_back({rec.w, Basis::Weight});
    alg.positive_roots_alpha.push_back(rec.av);
  }

  alg.rho = {std::vector<long long>(l, 1), Basis::Weight};
  alg.theta = alg.positive_roots.back();

  // rho and theta pairings
  alg.rho_sq = Rational(0);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) alg.rho_sq += alg.gram_weights[i][j];

  // theta = sum_j c_j alpha_j = sum_j (c_j d_j) alpha_j^vee; since theta is
  // long, theta^vee = theta and the coroot coordinates are c_j d_j.
  {
    const auto& av = alg.positive_roots_alpha.back();
    alg.comarks.assign(l, 0);
    for (int j = 0; j < l; ++j) {
      Rational c = Rational(av[j]) * alg.d[j];
      if (!c.is_integer())
        throw std::logic_error("highest root has non-integral coroot coords");
      alg.comarks[j] = c.num();
    }
  }
  {
    Rational ht(0);
    for (long long m : alg.comarks) ht += Rational(m);
    Rational hv = ht + Rational(1);
    if (!hv.is_integer()) throw std::logic_error("non-integral dual Coxeter");
    alg.dual_coxeter = hv.num();
  }

  // sanity: theta is long
  if (norm_sq(alg, alg.theta) != Rational(2))
    throw std::logic_error("highest root is not long");
  // sanity: strange-formula identity
  if (alg.rho_sq / Rational(alg.dual_coxeter) !=
      Rational(alg.dim_g, 12))
    throw std::logic_error("rho-norm identity failed");

  // Weyl group breadth-first closure over integer matrices.
  std::vector<Mat> gens(l, Mat(l, std::vector<long long>(l, 0)));
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) gens[i][j][j] = 1;
    for (int j = 0; j < l; ++j) gens[i][j][i] -= alg.cartan[i][j];
  }
  auto flatten = [l](const Mat& m) {
    std::vector<long long> f;
    f.reserve(l * l);
    for (const auto& row : m) f.insert(f.end(), row.begin(), row.end());
    return f;
  };
  Mat id(l, std::vector<long long>(l, 0));
  for (int i = 0; i < l; ++i) id[i][i] = 1;
  std::map<std::vector<long long>, int> seen;
  std::queue<std::pair<Mat, int>> bfs;
  alg.weyl.push_back({id, 1, 0});
  seen[flatten(id)] = 0;
  bfs.push({id, 0});
  while (!bfs.empty()) {
    auto [w, len] = bfs.front();
    bfs.pop();
    for (int i = 0; i < l; ++i) {
      Mat nw(l, std::vector<long long>(l, 0));
      for (int r = 0; r < l; ++r)
        for (int c = 0; c < l; ++c) {
          long long s = 0;
          for (int k = 0; k < l; ++k) s += gens[i][r][k] * w[k][c];
          nw[r][c] = s;
        }
      auto key = flatten(nw);
      if (seen.find(key) == seen.end()) {
        seen[key] = static_cast<int>(alg.weyl.size());
        alg.weyl.push_back({nw, (len + 1) % 2 == 0 ? 1 : -1, len + 1});
        bfs.push({nw, len + 1});
      }
    }
  }
  int maxlen = 0;
  for (const auto& w : alg.weyl) maxlen = std::max(maxlen, w.length);
  int count = 0;
  for (int i = 0; i < static_cast<int>(alg.weyl.size()); ++i)
    if (alg.weyl[i].length == maxlen) {
      alg.w0_index = i;
      ++count;
    }
  if (count != 1) throw std::logic_error("longest Weyl element not unique");

  return alg;
}

std::vector<Rational> coroot_coords(const AlgebraData& alg,
                                    const LatticeVector& v) {
  const int l = alg.rank;
  std::vector<Rational> out(l, Rational(0));
  if (v.basis == Basis::Coroot) {
    for (int i = 0; i < l; ++i) out[i] = Rational(v.coords[i]);
    return out;
  }
  // (gram_coroots)^{-1} = gram_weights
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      out[i] += alg.gram_weights[i][j] * Rational(v.coords[j]);
  return out;
}

LatticeVector to_weight_basis(const AlgebraData& alg, const LatticeVector& v) {
  if (v.basis == Basis::Weight) return v;
  const int l = alg.rank;
  LatticeVector out{std::vector<long long>(l, 0), Basis::Weight};
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      out.coords[i] += alg.gram_coroots[i][j] * v.coords[j];
  return out;
}

LatticeVector to_coroot_basis(const AlgebraData& alg, const LatticeVector& v) {
  if (v.basis == Basis::Coroot) return v;
  auto cc = coroot_coords(alg, v);
  LatticeVector out{std::vector<long long>(alg.rank, 0), Basis::Coroot};
  for (int i = 0; i < alg.rank; ++i) {
    if (!cc[i].is_integer())
      throw InputError("vector is not in the coroot lattice");
    out.coords[i] = cc[i].num();
  }
  return out;
}

Rational inner_product(const AlgebraData& alg, const LatticeVector& x,
                       const LatticeVector& y) {
  const int l = alg.rank;
  if (static_cast<int>(x.coords.size()) != l ||
      static_cast<int>(y.coords.size()) != l)
    throw InputError("lattice vector has wrong dimension");
  // <alpha_i^vee, Lambda_j> = delta_ij makes the mixed case a plain dot.
  if (x.basis != y.basis) {
    const auto& cr = (x.basis == Basis::Coroot) ? x : y;
    const auto& wt = (x.basis == Basis::Coroot) ? y : x;
    Rational s(0);
    for (int i = 0; i < l; ++i)
      s += Rational(cr.coords[i]) * Rational(wt.coords[i]);
    return s;
  }
  Rational s(0);
  if (x.basis == Basis::Coroot) {
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j)
        s += Rational(x.coords[i] * alg.gram_coroots[i][j] * y.coords[j]);
    return s;
  }
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      s += Rational(x.coords[i]) * alg.gram_weights[i][j] *
           Rational(y.coords[j]);
  return s;
}

Rational norm_sq(const AlgebraData& alg, const LatticeVector& x) {
  return inner_product(alg, x, x);
}

LatticeVector apply_weyl(const AlgebraData& alg, const WeylElement& w,
                         const LatticeVector& x) {
  LatticeVector v = to_weight_basis(alg, x);
  const int l = alg.rank;
  LatticeVector out{std::vector<long long>(l, 0), Basis::Weight};
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) out.coords[i] += w.mat[i][j] * v.coords[j];
  return out;
}

LatticeVector dual_weight(const AlgebraData& alg, const LatticeVector& lambda) {
  LatticeVector v = apply_weyl(alg, alg.weyl[alg.w0_index], lambda);
  for (auto& c : v.coords) c = -c;
  return v;
}

std::vector<LatticeVector> alcove_interior_weights(const AlgebraData& alg,
                                                   long long kappa) {
  if (kappa < alg.dual_coxeter)
    throw PreconditionError(
        "level below the dual Coxeter number: empty alcove interior");
  const int l = alg.rank;
  std::vector<long long> suffix(l + 1, 0);
  for (int i = l - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + alg.comarks[i];
  std::vector<LatticeVector> out;
  std::vector<long long> cur(l, 0);
  std::function<void(int, long long)> rec = [&](int i, long long budget) {
    if (i == l) {
      out.push_back({cur, Basis::Weight});
      return;
    }
    long long cmax = (budget - suffix[i + 1]) / alg.comarks[i];
    for (long long c = 1; c <= cmax; ++c) {
      cur[i] = c;
      rec(i + 1, budget - c * alg.comarks[i]);
    }
  };
  rec(0, kappa - 1);
  return out;
}

void for_each_coroot_rep(
    const AlgebraData& alg, long long c,
    const std::function<void(const std::vector<long long>&)>& fn) {
  if (c == 0) throw InputError("coset modulus must be nonzero");
  const long long n = c < 0 ? -c : c;
  const int l = alg.rank;
  std::vector<long long> cur(l, 0);
  while (true) {
    fn(cur);
    int i = l - 1;
    while (i >= 0 && cur[i] == n - 1) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
}

std::vector<LatticeVector> coroot_coset_reps(const AlgebraData& alg,
                                             long long c) {
  std::vector<LatticeVector> out;
  for_each_coroot_rep(alg, c, [&](const std::vector<long long>& v) {
    out.push_back({v, Basis::Coroot});
  });
  return out;
}

bool on_wall(const AlgebraData& alg, long long kappa, const LatticeVector& x) {
  LatticeVector v = to_weight_basis(alg, x);
  for (size_t a = 0; a < alg.positive_roots.size(); ++a) {
    // <x, alpha> = sum_j x_j * (alpha-coord_j * d_j)
    Rational t(0);
    for (int j = 0; j < alg.rank; ++j)
      t += Rational(v.coords[j] * alg.positive_roots_alpha[a][j]) * alg.d[j];
    if ((t / Rational(kappa)).is_integer()) return true;
  }
  return false;
}

AlcoveReduction reduce_to_alcove(const AlgebraData& alg, long long kappa,
                                 const LatticeVector& x) {
  AlcoveReduction res;
  LatticeVector v = to_weight_basis(alg, x);
  const int l = alg.rank;
  int sign = 1;
  for (int iter = 0; iter < 1000000; ++iter) {
    int neg = -1;
    bool zero = false;
    for (int i = 0; i < l; ++i) {
      if (v.coords[i] < 0) {
        neg = i;
        break;
      }
      if (v.coords[i] == 0) zero = true;
    }
    if (neg >= 0) {
      long long ci = v.coords[neg];
      for (int j = 0; j < l; ++j) v.coords[j] -= ci * alg.cartan[neg][j];
      sign = -sign;
      continue;
    }
    if (zero) {
      res.rep = v;
      res.wall = true;
      return res;
    }
    long long t = 0;
    for (int i = 0; i < l; ++i) t += v.coords[i] * alg.comarks[i];
    if (t == kappa) {
      res.rep = v;
      res.wall = true;
      return res;
    }
    if (t < kappa) {
      res.rep = v;
      res.sign = sign;
      return res;
    }
    // reflect across the affine wall <.,theta> = kappa
    for (int j = 0; j < l; ++j)
      v.coords[j] -= (t - kappa) * alg.theta.coords[j];
    sign = -sign;
  }
  throw std::logic_error("alcove reduction did not terminate");
}

}  // namespace rt
