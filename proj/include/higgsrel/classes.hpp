#pragma once

#include <higgsrel/poly.hpp>
#include <higgsrel/rational.hpp>
#include <higgsrel/series.hpp>
#include <higgsrel/slice.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace higgsrel {

inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// The classes xi^k_r from the three-term recursion
///   (r+1) xi_{r+1} = a xi_r + (r - 2k) b xi_{r-1} + 2 g3 xi_{r-2},
/// with xi_0 = 1 and xi_r = 0 for r < 0. With a cap, powers of g3 above the
/// cap are dropped (the ring Q[a,b,g3]/(g3^(cap+1))).
/// The table must contain a, b, g3; entries are computed lazily and cached.
class XiTable {
 public:
  XiTable(int k, std::optional<int> gamma_cap, TablePtr table = invariant_table())
      : k_(k), cap_(gamma_cap), table_(std::move(table)) {
    if (k < 0) throw std::invalid_argument("xi: k must be non-negative");
    a_ = var(table_, "a");
    b_ = var(table_, "b");
    g3_ = var(table_, "g3");
    g3_index_ = table_->index("g3");
    xi_.push_back(constant(table_, 1));
  }

  int k() const { return k_; }
  const std::optional<int>& gamma_cap() const { return cap_; }
  const TablePtr& table() const { return table_; }

  GradedPoly normalize(const GradedPoly& p) const { return cap_ ? cap_power(p, g3_index_, *cap_) : p; }

  GradedPoly operator()(int r) {
    if (r < 0) return GradedPoly(table_);
    while (static_cast<int>(xi_.size()) <= r) extend();
    return xi_[r];
  }

 private:
  void extend() {
    const int r = static_cast<int>(xi_.size()) - 1;  // computing xi_{r+1}
    GradedPoly next = a_ * xi_[r];
    if (r >= 1) next += Rational(r - 2 * k_) * b_ * xi_[r - 1];
    if (r >= 2) next += Rational(2) * g3_ * xi_[r - 2];
    xi_.push_back(normalize(next * make_rational(1, r + 1)));
  }

  int k_;
  std::optional<int> cap_;
  TablePtr table_;
  GradedPoly a_{invariant_table()}, b_{invariant_table()}, g3_{invariant_table()};
  std::size_t g3_index_ = 0;
  std::vector<GradedPoly> xi_;
};

inline GradedPoly xi(int g, int k, int r) {
  XiTable t(k, g);
  return t(r);
}

/// xi^k_{r,s} = sum_i C(r-2k+s-i, r-2k) b^(s-i) (2 g3)^i / i! xi^k_{r-i}; zero when r < 2k.
inline GradedPoly xi_rs(XiTable& xi_table, int r, int s) {
  const TablePtr& t = xi_table.table();
  GradedPoly out(t);
  if (r < 0 || s < 0) return out;
  const int k = xi_table.k();
  if (r < 2 * k) return out;
  const auto b = var(t, "b");
  const auto two_g3 = Rational(2) * var(t, "g3");
  for (int i = 0; i <= std::min(r, s); ++i) {
    if (xi_table.gamma_cap() && i > *xi_table.gamma_cap()) break;
    const Integer c = binomial(r - 2 * k + s - i, r - 2 * k);
    if (c == 0) continue;
    out += xi_table.normalize(b.pow(s - i) * two_g3.pow(i) * xi_table(r - i)) *
           make_rational(c, factorial(i));
  }
  return out;
}

inline GradedPoly xi_rs(int g, int k, int r, int s) {
  XiTable t(k, g);
  return xi_rs(t, r, s);
}

// Generators of the ideal I^g_n.

struct RhoIndex {
  int r = 0, s = 0, t = 0;

  int c(int g, int n) const { return r + 3 * s + 2 * t - 2 * g + 2 - n; }
  int total_degree() const { return r + 2 * s + 3 * t; }
  bool admissible(int g, int n) const {
    return r + 3 * s + 3 * t > 3 * g - 3 + n && r + 2 * s + 2 * t >= 2 * g - 2 + n;
  }
  bool operator==(const RhoIndex&) const = default;
};

/// sum_{i=0}^{min(c,r,s)} (c-i)! a^(r-i)/(r-i)! b^(s-i)/(s-i)! (2 g3)^(t+i)/i!, uncapped.
inline GradedPoly rho_poly(int c, int r, int s, int t, const TablePtr& table = invariant_table()) {
  if (c < 0) throw std::domain_error("rho: c = " + std::to_string(c) + " is negative");
  if (r < 0 || s < 0 || t < 0) throw std::domain_error("rho: negative index");
  const auto a = var(table, "a");
  const auto b = var(table, "b");
  const auto two_g3 = Rational(2) * var(table, "g3");
  GradedPoly out(table);
  for (int i = 0; i <= std::min({c, r, s}); ++i) {
    const Rational coeff = make_rational(factorial(c - i), factorial(r - i) * factorial(s - i) * factorial(i));
    out += a.pow(r - i) * b.pow(s - i) * two_g3.pow(t + i) * coeff;
  }
  return out;
}

inline GradedPoly rho(int g, int n, int r, int s, int t) {
  return rho_poly(RhoIndex{r, s, t}.c(g, n), r, s, t);
}

struct IdealGenerator {
  std::optional<RhoIndex> index;  // empty for g3^(g+1)
  int c = 0;
  int total_degree = 0;
  GradedPoly poly{invariant_table()};
};

/// Admissible rho generators of total degree <= max_total_degree, ordered by
/// degree then (r, s, t), followed by g3^(g+1) when it fits in the degree bound.
inline std::vector<IdealGenerator> ideal_generators(int g, int n, int max_total_degree) {
  if (g < 0 || n < 0) throw std::invalid_argument("ideal_generators: g and n must be non-negative");
  std::vector<IdealGenerator> out;
  for (int d = 0; d <= max_total_degree; ++d)
    for (int t = 0; 3 * t <= d; ++t)
      for (int s = 0; 3 * t + 2 * s <= d; ++s) {
        RhoIndex idx{d - 3 * t - 2 * s, s, t};
        if (!idx.admissible(g, n)) continue;
        const int c = idx.c(g, n);
        out.push_back(IdealGenerator{idx, c, d, rho_poly(c, idx.r, idx.s, idx.t)});
      }
  if (3 * (g + 1) <= max_total_degree)
    out.push_back(IdealGenerator{std::nullopt, 0, 3 * (g + 1), var(invariant_table(), "g3").pow(g + 1)});
  return out;
}

/// The ideal I^g_n as a GradedIdeal in Q[a,b,g3] (ordinary-degree slices).
inline GradedIdeal rho_ideal(int g, int n) {
  return GradedIdeal(invariant_table(), [g, n](int ordinary_degree) {
    std::vector<GradedPoly> gens;
    if (ordinary_degree % 2 != 0) return gens;
    const int d = ordinary_degree / 2;
    for (int t = 0; 3 * t <= d; ++t)
      for (int s = 0; 3 * t + 2 * s <= d; ++s) {
        RhoIndex idx{d - 3 * t - 2 * s, s, t};
        if (idx.admissible(g, n)) gens.push_back(rho_poly(idx.c(g, n), idx.r, idx.s, idx.t));
      }
    if (d == 3 * (g + 1)) gens.push_back(var(invariant_table(), "g3").pow(g + 1));
    return gens;
  });
}

// Zagier's closed form for xi^k_r.

/// Coefficient of x^m in cosh^(-2k) * (t/sinh t) * (t/tanh t)^r * ((1/x)(1 - tanh t / t))^p, t^2 = 3x.
inline Rational phi(int k, int m, int r, int p) {
  if (k < 0 || m < 0 || r < 0 || p < 0) throw std::invalid_argument("phi: indices must be non-negative");
  const int order = m + 1;
  auto prod = even_series(EvenSeriesKind::T_OVER_SINH, order);
  const auto inv_cosh_sq = even_series(EvenSeriesKind::INV_COSH_SQ, order);
  const auto t_over_tanh = even_series(EvenSeriesKind::T_OVER_TANH, order);
  const auto tail = even_series(EvenSeriesKind::ONE_MINUS_TANH_OVER_T, order);
  for (int i = 0; i < k; ++i) prod *= inv_cosh_sq;
  for (int i = 0; i < r; ++i) prod *= t_over_tanh;
  for (int i = 0; i < p; ++i) prod *= tail;
  return prod[m];
}

/// sum_{m,p} phi^k_m(r,p) / (3^(m+p) (r-2m-3p)! p!) a^(r-2m-3p) b^m (2 g3)^p, g3-capped at g.
inline GradedPoly xi_via_phi(int g, int k, int r) {
  if (r < 0) return GradedPoly(invariant_table());
  const auto t = invariant_table();
  const auto a = var(t, "a");
  const auto b = var(t, "b");
  const auto two_g3 = Rational(2) * var(t, "g3");
  GradedPoly out(t);
  for (int p = 0; 3 * p <= r && p <= g; ++p)
    for (int m = 0; 2 * m + 3 * p <= r; ++m) {
      const int e = r - 2 * m - 3 * p;
      const Rational coeff =
          phi(k, m, r, p) / (rational_power(3, m + p) * Rational(factorial(e) * factorial(p)));
      if (coeff != 0) out += a.pow(e) * b.pow(m) * two_g3.pow(p) * coeff;
    }
  return out;
}

// Equivariant classes in Q[a,b,g3,u].

/// The part of F^k(u,1) = sum xi^k_{r,s} u^r in the given total degree.
inline GradedPoly f_k_part(XiTable& xi_table, int total_degree) {
  const TablePtr& t = xi_table.table();
  GradedPoly out(t);
  if (total_degree < 0 || total_degree % 2 != 0) return out;
  const auto u = var(t, "u");
  const int half = total_degree / 2;
  for (int r = 0; r <= half; ++r) out += xi_rs(xi_table, r, half - r) * u.pow(r);
  return out;
}

/// F^k(u,1) in total degree 2g+2n; an equivariant relation on M_{n+2}.
inline GradedPoly equivariant_xi_family(int g, int n, int k) {
  if (n < 0 || k < 0 || k > n / 2) throw std::invalid_argument("equivariant_xi_family: k out of range");
  XiTable xt(k, g, equivariant_table());
  return f_k_part(xt, 2 * g + 2 * n);
}

/// Even n: ((2+u^2-b)^(n/2-k) F^k(u,1)) in total degree 2g+n+2k.
/// Odd n: ((1+u^2-b)(2+u^2-b)^((n-1)/2-k) F^k(u,1)) in total degree 2g+n+2k+1.
/// Both are equivariant relations on M_{n+2}.
inline GradedPoly divisible_equivariant_class(int g, int n, int k) {
  if (n < 0) throw std::invalid_argument("divisible_equivariant_class: n must be non-negative");
  const bool odd = n % 2 != 0;
  const int e = (odd ? (n - 1) / 2 : n / 2) - k;
  if (k < 0 || e < 0) throw std::invalid_argument("divisible_equivariant_class: k out of range");
  const int degree = 2 * g + n + 2 * k + (odd ? 1 : 0);

  // prefactor as a polynomial in w = u^2 - b
  std::vector<Rational> coeff(e + 1);
  for (int j = 0; j <= e; ++j) coeff[j] = Rational(binomial(e, j)) * rational_power(2, e - j);
  if (odd) {
    std::vector<Rational> shifted(e + 2, Rational(0));
    for (int j = 0; j <= e; ++j) {
      shifted[j] += coeff[j];
      shifted[j + 1] += coeff[j];
    }
    coeff = std::move(shifted);
  }

  const auto t = equivariant_table();
  XiTable xt(k, g, t);
  const auto w = var(t, "u") * var(t, "u") - var(t, "b");
  GradedPoly out(t);
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    if (coeff[j] == 0) continue;
    out += w.pow(static_cast<int>(j)) * f_k_part(xt, degree - 2 * static_cast<int>(j)) * coeff[j];
  }
  return xt.normalize(out);
}

struct XiRelation {
  int family = 1;  // 1: k = [n/2]-i, r = n-2i, s = g+i; 2: k = [n/2]+j, r = n+3j, s = g-j
  int index = 0;   // i or j
  int k = 0, r = 0, s = 0;
  GradedPoly poly{invariant_table()};
  int total_degree() const { return r + 2 * s; }
};

/// xi^k_{r,s} (n even) or xi^k_{r,s} - b xi^k_{r,s-1} (n odd), over both index
/// families; relations in the ordinary cohomology of M_{n+2}. Accepts n >= -2.
inline std::vector<XiRelation> xi_relations(int g, int n) {
  if (n < -2) throw std::invalid_argument("xi_relations: n must be at least -2");
  const int half = floor_div(n, 2);
  const bool odd = (n % 2) != 0;
  std::vector<XiRelation> out;
  auto add = [&](int family, int index, int k, int r, int s) {
    if (s < 0 || k < 0 || r < 0) return;
    XiTable xt(k, g);
    GradedPoly p = xi_rs(xt, r, s);
    if (odd) p -= var(invariant_table(), "b") * xi_rs(xt, r, s - 1);
    out.push_back(XiRelation{family, index, k, r, s, xt.normalize(p)});
  };
  for (int i = 0; i <= half; ++i) add(1, i, half - i, n - 2 * i, g + i);
  for (int j = 1; j <= g; ++j) add(2, j, half + j, n + 3 * j, g - j);
  return out;
}

}  // namespace higgsrel
