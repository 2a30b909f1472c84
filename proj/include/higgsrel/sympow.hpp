#pragma once

#include <higgsrel/linalg.hpp>
#include <higgsrel/poly.hpp>
#include <higgsrel/rational.hpp>
#include <higgsrel/series.hpp>
#include <higgsrel/slice.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace higgsrel {

/// The m-th symmetric product of a genus-g curve.
struct SymProdSpace {
  int m = 0;
  int g = 1;

  SymProdSpace(int m_, int g_) : m(m_), g(g_) {
    if (m < 0 || g < 0) throw std::invalid_argument("symmetric product needs m >= 0 and g >= 0");
  }
};

/// Q[eta, theta, u]: the ring the invariant computations run in.
inline TablePtr invariant_symprod_table() {
  static const TablePtr t = symprod_table(0);
  return t;
}

/// Q[eta, theta] alone, for slice computations on classes without u.
inline TablePtr eta_theta_table() {
  static const TablePtr t = std::make_shared<const VarTable>(std::vector<Variable>{{"eta", 2}, {"th", 2}});
  return t;
}

namespace detail {

inline GradedPoly theta_as_pairs(const TablePtr& t, int g) {
  GradedPoly th(t);
  for (int j = 1; j <= g; ++j) th += var(t, "xi" + std::to_string(j)) * var(t, "xi" + std::to_string(j + g));
  return th;
}

}  // namespace detail

/// Rewrites theta as sum_j xi_j xi_{j+g} inside the full symmetric-product ring.
inline GradedPoly expand_theta(const GradedPoly& p, int g) {
  const auto t = symprod_table(g);
  std::map<std::string, GradedPoly> images{{"th", detail::theta_as_pairs(t, g)}};
  return substitute(p, t, images);
}

/// Macdonald evaluation on [C_m]: eta^q xi_{j1} xi_{j1+g} ... evaluates to 1
/// when q + #pairs = m and the xi's come in matched pairs; a monomial stored
/// in sorted order picks up the sign of the reordering into pairs.
inline Rational evaluate_full(const SymProdSpace& space, const GradedPoly& p) {
  const int g = space.g;
  const GradedPoly q = p.table()->find("th") && max_power(p, p.table()->index("th")) > 0 ? expand_theta(p, g) : p;
  const VarTable& t = *q.table();
  const auto eta = t.find("eta");
  if (auto u = t.find("u"); u && max_power(q, *u) > 0) throw std::invalid_argument("evaluate_full: u is not a class on C_m");
  std::vector<int> xi_pos(2 * g + 1, -1);
  for (int j = 1; j <= 2 * g; ++j) {
    auto i = t.find("xi" + std::to_string(j));
    if (i) xi_pos[j] = static_cast<int>(*i);
  }
  Rational total = 0;
  for (const auto& [m, c] : q.terms()) {
    if (m.degree != 2 * space.m) continue;
    // every table variable other than eta and the xi's must be absent
    int seen = eta ? m.exps[*eta] : 0;
    std::vector<int> p_j(2 * g + 1, 0);
    for (int j = 1; j <= 2 * g; ++j)
      if (xi_pos[j] >= 0) {
        p_j[j] = m.exps[xi_pos[j]];
        seen += p_j[j];
      }
    int all = 0;
    for (int e : m.exps) all += e;
    if (all != seen) throw std::invalid_argument("evaluate_full: monomial outside eta and xi_j");
    bool matched = true;
    std::vector<int> order;  // pair order: j, j+g, j', j'+g, ...
    for (int j = 1; j <= g; ++j) {
      if (p_j[j] != p_j[j + g]) {
        matched = false;
        break;
      }
      if (p_j[j]) {
        order.push_back(j);
        order.push_back(j + g);
      }
    }
    if (!matched) continue;
    // the stored monomial is xi's in table order (ascending index); count inversions
    int inversions = 0;
    for (std::size_t x = 0; x < order.size(); ++x)
      for (std::size_t y = x + 1; y < order.size(); ++y)
        if (order[x] > order[y]) ++inversions;
    total += (inversions % 2 == 0) ? c : Rational(-c);
  }
  return total;
}

/// eta^a theta^b -> b! C(g, b) when a + b = m, else 0; p must be a polynomial in eta and theta.
inline Rational evaluate_invariant(const SymProdSpace& space, const GradedPoly& p) {
  const VarTable& t = *p.table();
  const auto eta = t.find("eta");
  const auto th = t.find("th");
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    const int a = eta ? m.exps[*eta] : 0;
    const int b = th ? m.exps[*th] : 0;
    int all = 0;
    for (int e : m.exps) all += e;
    if (all != a + b) throw std::invalid_argument("evaluate_invariant: polynomial must involve only eta and theta");
    if (a + b != space.m) continue;
    total += c * Rational(factorial(b) * binomial(space.g, b));
  }
  return total;
}

/// The eta^m coefficient of A(eta) (1 + eta B(eta))^g, i.e. A(eta) exp(theta B(eta)) on [C_m].
inline Rational residue_evaluate(const SymProdSpace& space, const Series<RationalRing>& A,
                                 const Series<RationalRing>& B) {
  if (A.order() <= space.m || B.order() <= space.m)
    throw std::invalid_argument("residue_evaluate: truncation order must exceed m");
  const int order = space.m + 1;
  const auto eta = Series<RationalRing>::x(RationalRing{}, order);
  const auto base = Series<RationalRing>::one(RationalRing{}, order) + eta * B.truncated(order);
  auto prod = A.truncated(order);
  for (int i = 0; i < space.g; ++i) prod *= base;
  return prod[space.m];
}

struct Pairing {
  int eta = 0;    // exponent of eta in the test class
  int theta = 0;  // exponent of theta in the test class
  Rational value;
};

/// A test class eta^a theta^b pairing nontrivially with q, or nullopt if q
/// vanishes in H*(C_m). q is homogeneous in eta and theta.
inline std::optional<Pairing> zero_class_witness(const SymProdSpace& space, const GradedPoly& q) {
  if (q.is_zero()) return std::nullopt;
  auto deg = q.degree();
  if (!deg) throw std::invalid_argument("is_zero_class: inhomogeneous class");
  if (*deg % 2 != 0) throw std::invalid_argument("is_zero_class: odd degree class");
  const int D = *deg / 2;
  if (D > space.m) return std::nullopt;
  const int rest = space.m - D;
  const TablePtr& t = q.table();
  for (int b = 0; b <= std::min(space.g, rest); ++b) {
    const int a = rest - b;
    const Rational v = evaluate_invariant(space, q * var(t, "eta").pow(a) * var(t, "th").pow(b));
    if (v != 0) return Pairing{a, b, v};
  }
  return std::nullopt;
}

inline bool is_zero_class(const SymProdSpace& space, const GradedPoly& q) { return !zero_class_witness(space, q); }

/// Linear functionals on the degree-D slice of Q[eta, theta] whose common kernel
/// is the set of classes vanishing on C_m.
inline Matrix zero_class_functionals(const SymProdSpace& space, int D) {
  const auto t = eta_theta_table();
  const auto monos = degree_slice_monomials(*t, 2 * D);
  Matrix rows;
  if (D > space.m) return rows;
  const int rest = space.m - D;
  for (int b = 0; b <= std::min(space.g, rest); ++b) {
    const auto test = var(t, "eta").pow(rest - b) * var(t, "th").pow(b);
    Vector row;
    for (const auto& m : monos) row.push_back(evaluate_invariant(space, GradedPoly::monomial(t, m) * test));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// (eta^p exp(theta) / (1 + eta)^q) in total degree l, over Q[eta, theta].
inline GradedPoly sym_vanishing_class(int p, int q, int l) {
  const auto t = invariant_symprod_table();
  GradedPoly out(t);
  for (int b = 0; b <= l; ++b) {
    const int j = l - p - b;  // power of eta taken from (1 + eta)^(-q)
    if (j < 0) continue;
    const Rational c = Rational(series_binomial(-q, j)) / Rational(factorial(b));
    out += var(t, "eta").pow(p + j) * var(t, "th").pow(b) * c;
  }
  return out;
}

/// The degree-l part of eta^p exp(theta)/(1+eta)^q vanishes on C_m
/// whenever m - g + q <= l and g + p - q < l. Throws if the hypotheses fail.
inline bool sym_vanishing_check(const SymProdSpace& space, int p, int q, int l) {
  if (p < 0 || q < 0 || l < 0) throw std::invalid_argument("sym_vanishing_check: negative parameter");
  if (!(space.m - space.g + q <= l) || !(space.g + p - q < l))
    throw std::invalid_argument("sym_vanishing_check: hypotheses m-g+q <= l and g+p-q < l do not hold");
  return is_zero_class(space, sym_vanishing_class(p, q, l));
}

/// Does p * xi_1 ... xi_k vanish in H*(C_m) of genus g? Tested against every
/// monomial in eta and the xi_j of complementary degree.
inline bool product_with_xis_vanishes(int g, int m, int k, const GradedPoly& p) {
  const auto t = symprod_table(g);
  GradedPoly prod = expand_theta(embed(p, t), g);
  for (int j = 1; j <= k; ++j) prod *= var(t, "xi" + std::to_string(j));
  if (prod.is_zero()) return true;
  auto deg = prod.degree();
  if (!deg) throw std::invalid_argument("xi_product_check: inhomogeneous class");
  const int rest = 2 * m - *deg;
  if (rest < 0) return true;
  const SymProdSpace space(m, g);
  const std::size_t th = t->index("th");
  const std::size_t u = t->index("u");
  for (const auto& mono : degree_slice_monomials(*t, rest)) {
    if (mono.exps[th] || mono.exps[u]) continue;
    if (evaluate_full(space, prod * GradedPoly::monomial(t, mono)) != 0) return false;
  }
  return true;
}

/// p vanishes on C^{g-k}_{m-k} iff p xi_1 ... xi_k vanishes on C^g_m.
/// When k > m every class counts as vanishing on the smaller product.
inline bool xi_product_check(int g, int m, int k, const GradedPoly& p) {
  if (k < 0 || k > g) throw std::invalid_argument("xi_product_check: need 0 <= k <= g");
  const GradedPoly q = embed(p, invariant_symprod_table());
  const bool small = (m - k < 0) ? true : is_zero_class(SymProdSpace(m - k, g - k), q);
  return small == product_with_xis_vanishes(g, m, k, q);
}

/// The same statement on a whole degree-D slice of Q[eta, theta]: the subspace of
/// classes vanishing on C^{g-k}_{m-k} equals the subspace whose product with
/// xi_1 ... xi_k vanishes on C^g_m.
inline bool xi_product_slice_check(int g, int m, int k, int D) {
  if (k < 0 || k > g) throw std::invalid_argument("xi_product_check: need 0 <= k <= g");
  const auto t = eta_theta_table();
  const auto monos = degree_slice_monomials(*t, 2 * D);
  const Vector zero_row(monos.size(), Rational(0));
  Matrix small_rows{zero_row};
  if (m - k >= 0)
    for (auto& row : zero_class_functionals(SymProdSpace(m - k, g - k), D)) small_rows.push_back(row);
  // the other side: pair p xi_1 ... xi_k against every eta/xi monomial
  const auto big = symprod_table(g);
  const int rest = 2 * m - (2 * D + k);
  Matrix big_rows{zero_row};
  if (rest >= 0) {
    std::vector<GradedPoly> lifted;
    for (const auto& mono : monos) {
      GradedPoly prod = expand_theta(embed(GradedPoly::monomial(t, mono), big), g);
      for (int j = 1; j <= k; ++j) prod *= var(big, "xi" + std::to_string(j));
      lifted.push_back(prod);
    }
    const SymProdSpace space(m, g);
    for (const auto& test : degree_slice_monomials(*big, rest)) {
      if (test.exps[big->index("th")] || test.exps[big->index("u")]) continue;
      const auto tp = GradedPoly::monomial(big, test);
      Vector row;
      for (const auto& l : lifted) row.push_back(evaluate_full(space, l * tp));
      big_rows.push_back(std::move(row));
    }
  }
  return SliceBasis::kernel(t, 2 * D, small_rows) == SliceBasis::kernel(t, 2 * D, big_rows);
}

}  // namespace higgsrel
