#pragma once

#include <higgsrel/classes.hpp>
#include <higgsrel/series.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace higgsrel {

inline PolyRing capped_invariant_ring(int g) {
  return PolyRing(invariant_table(), std::make_pair(invariant_table()->index("g3"), g));
}

/// F^k_0(x) = sum_r xi^k_r x^r, truncated at `order`, in the g3-capped ring.
inline Series<PolyRing> f0_series(int g, int k, int order) {
  XiTable xt(k, g);
  Series<PolyRing> f(capped_invariant_ring(g), order);
  for (int r = 0; r < order; ++r) f.at(r) = xt(r);
  return f;
}

/// Checks (1 - b x^2) F'(x) = (a + (1-2k) b x + 2 g3 x^2) F(x) on the
/// coefficients that the truncation determines. `coeffs` is F's coefficient list.
inline bool ode_holds(const std::vector<GradedPoly>& coeffs, int g, int k) {
  const int order = static_cast<int>(coeffs.size());
  if (order < 2) return true;
  const auto ring = capped_invariant_ring(g);
  const auto t = invariant_table();
  auto f = Series<PolyRing>::from_coefficients(ring, order, coeffs);
  auto df = derivative(f);  // order - 1
  const int n = order - 1;
  auto f_cut = f.truncated(n);

  Series<PolyRing> lhs_factor(ring, n);
  lhs_factor.at(0) = constant(t, 1);
  if (n > 2) lhs_factor.at(2) = -var(t, "b");
  Series<PolyRing> rhs_factor(ring, n);
  rhs_factor.at(0) = var(t, "a");
  if (n > 1) rhs_factor.at(1) = Rational(1 - 2 * k) * var(t, "b");
  if (n > 2) rhs_factor.at(2) = Rational(2) * var(t, "g3");
  return lhs_factor * df == rhs_factor * f_cut;
}

inline bool ode_check_F0(int g, int k, int order) {
  return ode_holds(f0_series(g, k, order).coefficients(), g, k);
}

/// Compares sum xi^k_{r,s} x^r y^s with
///   (1 - b y)^(2k-1) exp(2 g3 x y / (1 - b y)) F^k_0(x / (1 - b y))
/// on every coefficient x^r y^s with r + s < order and r >= 2k (below 2k the
/// left side is zero by convention and the identity does not apply).
inline bool bivariate_identity_check(int g, int k, int order) {
  using S2 = Series2<PolyRing>;
  const auto ring = capped_invariant_ring(g);
  const auto t = invariant_table();
  const auto b = var(t, "b");
  const auto x = S2::x(ring, order);
  const auto y = S2::y(ring, order);
  const auto one = S2::one(ring, order);

  const S2 one_minus_by = one - y.times(b);
  const S2 inv = geometric_inverse(one_minus_by);
  S2 prefactor = inv;
  for (int i = 0; i < 2 * k; ++i) prefactor *= one_minus_by;
  const S2 expo = exp((x * y * inv).times(Rational(2) * var(t, "g3")));
  const S2 rhs = prefactor * expo * compose(f0_series(g, k, order), x * inv);

  XiTable xt(k, g);
  for (int r = 2 * k; r < order; ++r)
    for (int s = 0; r + s < order; ++s)
      if (!(xi_rs(xt, r, s) == rhs(r, s))) return false;
  return true;
}

}  // namespace higgsrel
