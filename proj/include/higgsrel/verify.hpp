#pragma once

#include <higgsrel/classes.hpp>
#include <higgsrel/linalg.hpp>
#include <higgsrel/localize.hpp>
#include <higgsrel/poly.hpp>
#include <higgsrel/rational.hpp>
#include <higgsrel/slice.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace higgsrel {

// Dimension counts.

/// Invariant cohomology of C_m: [(m+2)/2][(m+3)/2] for m <= 2g-1, (g+1)(m-g+1) beyond.
inline long sym_component_dimension(int g, int m) {
  if (m <= 2 * g - 1) return static_cast<long>((m + 2) / 2) * ((m + 3) / 2);
  return static_cast<long>(g + 1) * (m - g + 1);
}

/// C(g+2,3) for N plus the sum over the symmetric-product components.
inline long dim_HI(int g, int n) {
  long total = binomial(g + 2, 3).get_si();
  for (const auto& c : fixed_components(g, n))
    if (!c.is_min()) total += sym_component_dimension(g, c.m);
  return total;
}

/// The closed form for dim_HI, with the second d-sum starting at max(1, floor((n-1)/2) + 1).
inline long dim_HI_closed_form(int g, int n) {
  const int h = floor_div(n - 1, 2);
  const int half = floor_div(n, 2);
  long total = binomial(g + 2, 3).get_si();
  for (int d = 1; d <= h; ++d) total += static_cast<long>(g + 1) * (g - 2 * d + n);
  for (int d = std::max(1, h + 1); d <= h + g; ++d) total += static_cast<long>(g - d + 1 + h) * (g - d + 1 + half);
  return total;
}

/// #{(r,s,t) >= 0 : t <= g and (r+3s+3t <= 3g-3+n or r+2s+2t < 2g-2+n)}.
inline long region_count(int g, int n) {
  if (g < 0) throw std::invalid_argument("region_count: need g >= 0");
  long count = 0;
  const int bound = 3 * g + n + 3;  // r, s never exceed this inside the region
  for (int t = 0; t <= g; ++t)
    for (int s = 0; s <= bound; ++s)
      for (int r = 0; r <= bound; ++r)
        if (r + 3 * s + 3 * t <= 3 * g - 3 + n || r + 2 * s + 2 * t < 2 * g - 2 + n) ++count;
  return count;
}

/// The counting formula, with the second s-sum starting at s = g - t so the
/// two r-ranges are not counted twice.
inline long region_count_closed_form(int g, int n) {
  const int half = floor_div(n, 2);
  long total = 0;
  for (int t = 0; t <= g; ++t) {
    for (int s = 0; s <= g - 1 - t; ++s) total += 3 * g - 2 + n - 3 * s - 3 * t;
    for (int s = g - t; s <= g - 1 + half - t; ++s) total += 2 * g - 2 + n - 2 * s - 2 * t;
  }
  return total;
}

struct QuotientDimensions {
  std::vector<long> per_degree;  // indexed by total degree
  long total = 0;
};

/// dim of Q[a,b,g3]/I in each total degree, stopping after three consecutive
/// zero slices (every higher monomial is then a multiple of one of them).
inline QuotientDimensions dim_quotient(GradedIdeal& ideal) {
  QuotientDimensions out;
  int zeros = 0;
  for (int D = 0; zeros < 3; ++D) {
    const long dim = static_cast<long>(ideal.quotient_dimension(2 * D));
    out.per_degree.push_back(dim);
    out.total += dim;
    zeros = dim == 0 ? zeros + 1 : 0;
  }
  return out;
}

inline QuotientDimensions dim_quotient(int g, int n) {
  auto ideal = rho_ideal(g, n);
  return dim_quotient(ideal);
}

struct DimReport {
  int g = 0, n = 0;
  QuotientDimensions quotient;
  long region = 0, region_closed = 0;
  long hi = 0, hi_closed = 0;
  bool equal() const {
    return quotient.total == region && region == hi && region_closed == region && hi_closed == hi;
  }
};

inline DimReport dim_report(int g, int n) {
  return DimReport{g, n, dim_quotient(g, n), region_count(g, n), region_count_closed_form(g, n), dim_HI(g, n),
                   dim_HI_closed_form(g, n)};
}

// The main theorem: localization oracle versus the ideal I^g_n.

struct DegreeComparison {
  int degree = 0;
  std::size_t oracle_dimension = 0;
  std::size_t ideal_dimension = 0;
  bool equal = false;
};

struct MainTheoremReport {
  int g = 0, n = 0;
  std::vector<DegreeComparison> degrees;
  bool ok = true;
};

inline MainTheoremReport check_main_theorem(int g, int n, int max_degree) {
  MainTheoremReport rep{g, n};
  RelationOracle oracle(g, n);
  auto ideal = rho_ideal(g, n);
  for (int D = 0; D <= max_degree; ++D) {
    const auto& o = oracle.ordinary_slice(D);
    const auto& i = ideal.slice(2 * D);
    DegreeComparison c{D, o.dimension(), i.dimension(), o == i};
    rep.ok = rep.ok && c.equal;
    rep.degrees.push_back(c);
  }
  return rep;
}

// xi-classes as combinations of rho-classes.

enum class XiVariant { PLAIN, BETA_DIFF };

struct RhoTerm {
  RhoIndex index;
  int c = 0;
  Rational coefficient;
};

struct XiExpression {
  bool ok = false;
  std::vector<RhoIndex> support;  // the admissible rho indices offered to the solver
  std::vector<RhoTerm> terms;     // nonzero coefficients of the solution
  GradedPoly target{invariant_table()};
};

/// Solves xi^k_{r,s} = sum c_{uvw} rho^{r-2k+v-w}_{u,v,w} over u+2v+3w = r+2s,
/// w <= r-2k, u+3w <= r. The difference variant xi^k_{r,s} - b xi^k_{r,s-1}
/// allows w <= r-2k+1 but uses exponent r-2k-1+v-w: with r-2k+1 already
/// a b + 2 g3 = xi_{1,1} - b xi_{1,0} is out of reach.
/// Everything is computed in the free ring Q[a,b,g3].
inline XiExpression express_xi_in_rho(int k, int r, int s, XiVariant variant) {
  const bool diff = variant == XiVariant::BETA_DIFF;
  const int w_max = r - 2 * k + (diff ? 1 : 0);
  const int c_base = r - 2 * k - (diff ? 1 : 0);
  if (k < 0 || s < 0 || r < 2 * k + (diff ? 1 : 0))
    throw std::invalid_argument("express_xi_in_rho: index outside the validity range");
  XiTable xt(k, std::nullopt);
  XiExpression out;
  out.target = xi_rs(xt, r, s);
  if (diff && s > 0) out.target -= var(invariant_table(), "b") * xi_rs(xt, r, s - 1);
  const int D = r + 2 * s;
  Matrix columns;
  const SliceBasis whole(invariant_table(), 2 * D);
  for (int w = 0; w <= w_max && 3 * w <= D; ++w)
    for (int v = 0; 2 * v + 3 * w <= D; ++v) {
      const int u = D - 2 * v - 3 * w;
      if (u + 3 * w > r) continue;
      const int c = c_base + v - w;
      if (c < 0) continue;
      out.support.push_back(RhoIndex{u, v, w});
      columns.push_back(whole.coordinates(rho_poly(c, u, v, w)));
    }
  auto sol = solve_columns(columns, whole.coordinates(out.target));
  if (!sol) return out;
  out.ok = true;
  for (std::size_t i = 0; i < sol->size(); ++i)
    if ((*sol)[i] != 0) {
      const auto& idx = out.support[i];
      out.terms.push_back(RhoTerm{idx, c_base + idx.s - idx.t, (*sol)[i]});
    }
  return out;
}

// Factorial-matrix inverse and the hypergeometric recurrences behind it.

/// L has (j, w) entry (q-w-j)!/(j-w)!; the claimed inverse has (w, j) entry
/// (-1)^(w+j) (q+1-2w) / ((w-j)! (q+1-w-j)!). Both are lower triangular.
inline Matrix l_matrix(int q, int size) {
  Matrix L(size, Vector(size, Rational(0)));
  for (int j = 0; j < size; ++j)
    for (int w = 0; w <= j; ++w) L[j][w] = make_rational(factorial(q - w - j), factorial(j - w));
  return L;
}

inline Matrix l_matrix_inverse(int q, int size) {
  Matrix M(size, Vector(size, Rational(0)));
  for (int w = 0; w < size; ++w)
    for (int j = 0; j <= w; ++j) {
      Rational v = make_rational(Integer(q + 1 - 2 * w), factorial(w - j) * factorial(q + 1 - w - j));
      M[w][j] = ((w + j) % 2 == 0) ? v : Rational(-v);
    }
  return M;
}

inline bool l_matrix_check(int q, int size) {
  if (size < 0 || 2 * size > q) throw std::invalid_argument("l_matrix_check: need 0 <= size <= q/2");
  return multiply(l_matrix(q, size), l_matrix_inverse(q, size)) == identity_matrix(size);
}

namespace detail {

inline Rational fact_or_zero_ratio(const Integer& num, std::initializer_list<int> den_args) {
  Integer den = 1;
  for (int a : den_args) {
    if (a < 0) return 0;
    den *= factorial(a);
  }
  return make_rational(num, den);
}

}  // namespace detail

/// N_j = (-1)^(w'+j) (q+1-2w') (q-w-j)! / ((w'-j)! (q+1-w'-j)! (j-w)!), zero where a factorial argument is negative.
inline Rational ekhad_n(int q, int w, int wp, int j) {
  if (q - w - j < 0) return 0;
  Rational v = detail::fact_or_zero_ratio(factorial(q - w - j), {wp - j, q + 1 - wp - j, j - w});
  v *= Rational(q + 1 - 2 * wp);
  return ((wp + j) % 2 == 0) ? v : Rational(-v);
}

/// (q+1-w-w')(w'-w) N_j = (j-w)(q+1-w-j) N_j - (j+1-w)(q-w-j) N_{j+1}.
inline bool ekhad_n_identity(int q, int w, int wp, int j) {
  const Rational nj = ekhad_n(q, w, wp, j);
  const Rational lhs = Rational((q + 1 - w - wp) * (wp - w)) * nj;
  const Rational rhs = Rational((j - w) * (q + 1 - w - j)) * nj - Rational((j + 1 - w) * (q - w - j)) * ekhad_n(q, w, wp, j + 1);
  return lhs == rhs;
}

/// F(s,i) = (-1)^(w+i) C(r'+s-p-i, r'-p) C(p+i, i) C(s'-p-i, w-p-i) C(r'+s'+1-w, p+i), with s' = s + m.
inline Rational ekhad_f(int rp, int m, int p, int w, int s, int i) {
  const int sp = s + m;
  Integer v = binomial(rp + s - p - i, rp - p) * binomial(p + i, i) * binomial(sp - p - i, w - p - i) *
              binomial(rp + sp + 1 - w, p + i);
  if ((w + i) % 2 != 0) v = -v;
  return Rational(v);
}

/// G(s,i) = i(r'+s+1-p-i)(s'+1-p-i)(r'+s'+2-w)(r'+s+s'+3-p-w-i) / ((s+1-i)(s'+1-w)(r'+s'+2-p-w-i)) F(s,i),
/// or nullopt where the denominator vanishes.
inline std::optional<Rational> ekhad_g(int rp, int m, int p, int w, int s, int i) {
  const int sp = s + m;
  const long den = static_cast<long>(s + 1 - i) * (sp + 1 - w) * (rp + sp + 2 - p - w - i);
  if (den == 0) return std::nullopt;
  const long num = static_cast<long>(i) * (rp + s + 1 - p - i) * (sp + 1 - p - i) * (rp + sp + 2 - w) *
                   (rp + s + sp + 3 - p - w - i);
  return make_rational(num, den) * ekhad_f(rp, m, p, w, s, i);
}

/// G(s,i+1) - G(s,i) = (r'+s+1-w)(r'+s'+2-w) F(s,i) - (s+1)(r'+s'+2-p-w) F(s+1,i), where
/// F(s+1,i) carries s'+1. nullopt when G is undefined at either point.
inline std::optional<bool> ekhad_g_identity(int rp, int m, int p, int w, int s, int i) {
  const auto g1 = ekhad_g(rp, m, p, w, s, i + 1);
  const auto g0 = ekhad_g(rp, m, p, w, s, i);
  if (!g1 || !g0) return std::nullopt;
  const int sp = s + m;
  const Rational rhs = Rational((rp + s + 1 - w) * (rp + sp + 2 - w)) * ekhad_f(rp, m, p, w, s, i) -
                       Rational((s + 1) * (rp + sp + 2 - p - w)) * ekhad_f(rp, m, p, w, s + 1, i);
  return *g1 - *g0 == rhs;
}

inline Rational ekhad_sum(int rp, int m, int p, int w, int s) {
  Rational total = 0;
  for (int i = 0; i <= s; ++i) total += ekhad_f(rp, m, p, w, s, i);
  return total;
}

struct EkhadGrid {
  int max_q = 12;
  int max_rp = 4;
  int max_m = 4;
  int max_p = 3;
  int max_w = 7;
  int max_s = 6;
};

struct EkhadReport {
  long checked = 0;
  long skipped = 0;  // grid points where G has a zero denominator
  long failures = 0;
  bool ok() const { return failures == 0; }
};

/// Both recurrences plus the two vanishing conclusions (w > r' with s >= w-r';
/// w > m with s >= 1; p <= m throughout) on the grid.
inline EkhadReport ekhad_checks(const EkhadGrid& grid = {}) {
  EkhadReport rep;
  auto tally = [&](bool ok) {
    ++rep.checked;
    if (!ok) ++rep.failures;
  };
  for (int q = 0; q <= grid.max_q; ++q)
    for (int w = 0; w <= q; ++w)
      for (int wp = w + 1; wp <= q; ++wp)
        for (int j = w; j <= wp; ++j) tally(ekhad_n_identity(q, w, wp, j));
  for (int rp = 0; rp <= grid.max_rp; ++rp)
    for (int m = 0; m <= grid.max_m; ++m)
      for (int p = 0; p <= std::min(m, grid.max_p); ++p)
        for (int w = 0; w <= grid.max_w; ++w)
          for (int s = 0; s <= grid.max_s; ++s) {
            for (int i = 0; i <= s; ++i) {
              auto r = ekhad_g_identity(rp, m, p, w, s, i);
              if (!r) {
                ++rep.skipped;
                continue;
              }
              tally(*r);
            }
            if (w > rp && s >= w - rp) tally(ekhad_sum(rp, m, p, w, s) == 0);
            if (w > m && s >= 1) tally(ekhad_sum(rp, m, p, w, s) == 0);
          }
  return rep;
}

// Betti bookkeeping.

/// dim of the primitive part: C(2g,k) - C(2g,k-2).
inline long primitive_dimension(int g, int k) { return Integer(binomial(2 * g, k) - binomial(2 * g, k - 2)).get_si(); }

/// Ordinary-degree coefficients of sum_k dim(primitive_k) x^(3k) Hilb(Q[a,b,g3]/I^{g-k}_{n+k}).
inline std::vector<long> betti_assembly(int g, int n, int up_to_ordinary_degree) {
  std::vector<long> out(up_to_ordinary_degree + 1, 0);
  for (int k = 0; k <= g; ++k) {
    const long mult = primitive_dimension(g, k);
    if (mult == 0) continue;
    const auto q = dim_quotient(g - k, n + k);
    for (std::size_t D = 0; D < q.per_degree.size(); ++D) {
      const int deg = 3 * k + 2 * static_cast<int>(D);
      if (deg <= up_to_ordinary_degree) out[deg] += mult * q.per_degree[D];
    }
  }
  return out;
}

// Simple-form generators.

/// For n >= 2 the lowest relations sit in total degree 2g-2+n, and there
/// b^(s-r) (a b + 2 g3)^r = r! rho^s_{r,s,0} with r + 2s = 2g-2+n. Admissibility needs
/// s >= g on top of s >= r: (a b + 2 g3)^2 is not a relation at g = 3, n = 2.
/// Also checks that nothing of lower degree lies in the ideal.
inline bool simple_form_check(int g, int n) {
  if (n < 2) throw std::invalid_argument("simple_form_check: need n >= 2");
  auto ideal = rho_ideal(g, n);
  const int D = 2 * g - 2 + n;
  for (int d = 0; d < D; ++d)
    if (ideal.slice(2 * d).dimension() != 0) return false;
  const auto b = var(invariant_table(), "b");
  const auto ab2g = var(invariant_table(), "a") * b + Rational(2) * var(invariant_table(), "g3");
  for (int r = 0; r <= D; ++r) {
    if ((D - r) % 2 != 0) continue;
    const int s = (D - r) / 2;
    if (s < r || s < g) continue;
    if (!ideal.slice(2 * D).contains(b.pow(s - r) * ab2g.pow(r))) return false;
  }
  return true;
}

// Identities among the xi-classes.

/// xi^k_{r,s} = sum_{l=0}^s (-1)^(s-l) [C(r+l,r) + C(r+l-1,r)] xi^k_{s-l} xi^k_{r+s+l} in the
/// g3-capped ring. The identity applies for r >= 2k.
inline bool xi_product_formula_check(int g, int k, int r, int s) {
  XiTable xt(k, g);
  GradedPoly rhs(invariant_table());
  for (int l = 0; l <= s; ++l) {
    const Integer c = binomial(r + l, r) + binomial(r + l - 1, r);
    if (c == 0) continue;
    Rational coeff(c);
    if ((s - l) % 2 != 0) coeff = -coeff;
    rhs += xt.normalize(xt(s - l) * xt(r + s + l)) * coeff;
  }
  return xi_rs(xt, r, s) == rhs;
}

/// xi^k_{2k,g+l} = b^l xi^k_{2k,g} in the g3-capped ring.
inline bool stability_check(int g, int k, int l) {
  XiTable xt(k, g);
  return xi_rs(xt, 2 * k, g + l) == xt.normalize(var(invariant_table(), "b").pow(l) * xi_rs(xt, 2 * k, g));
}

// Closure properties of the equivariant relation slices.

/// d/du maps V_D(M_{n+2}) into V_{D-1}(M_n), for D = 1 .. max_degree.
inline bool u_derivative_closure(RelationOracle& big, RelationOracle& small, int max_degree) {
  const auto u = equivariant_table()->index("u");
  for (int D = 1; D <= max_degree; ++D)
    for (const auto& p : big.equivariant_slice(D).basis())
      if (!small.equivariant_slice(D - 1).contains(derivative(p, u))) return false;
  return true;
}

/// (u^2 - b) V_D(M_n) lies in V_{D+2}(M_{n+1}), for D = 0 .. max_degree.
inline bool u2_minus_b_closure(RelationOracle& lo, RelationOracle& hi, int max_degree) {
  const auto w = var(equivariant_table(), "u").pow(2) - var(equivariant_table(), "b");
  for (int D = 0; D <= max_degree; ++D)
    for (const auto& p : lo.equivariant_slice(D).basis())
      if (!hi.equivariant_slice(D + 2).contains(w * p)) return false;
  return true;
}

/// Every class of xi_relations(g, n) lies in the relation slice of M_{n+2}.
inline bool xi_relation_membership(int g, int n, RelationOracle& oracle_n_plus_2) {
  for (const auto& rel : xi_relations(g, n)) {
    if (rel.poly.is_zero()) continue;
    if (!oracle_n_plus_2.ordinary_slice(rel.total_degree()).contains(rel.poly)) return false;
  }
  return true;
}

}  // namespace higgsrel
