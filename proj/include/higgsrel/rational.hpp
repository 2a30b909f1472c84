#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace higgsrel {

/// Exact rational scalar. mpq_class keeps values canonical as long as every
/// value built from a raw numerator/denominator pair goes through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative integer " + std::to_string(n));
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

/// C(a, b) with the convention C(a, b) = 0 whenever b < 0 or a < b.
/// In particular C(-1, 0) = 0.
inline Integer binomial(int a, int b) {
  if (b < 0 || a < b) return 0;
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return c;
}

/// Generalized binomial n(n-1)...(n-j+1)/j! for arbitrary integer n, j >= 0;
/// these are the coefficients of (1 + x)^n.
inline Integer series_binomial(int n, int j) {
  if (j < 0) return 0;
  Integer c;
  Integer top = n;
  mpz_bin_ui(c.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(j));
  return c;
}

inline Rational rational_power(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return rational_power(Rational(1) / base, -exponent);
  }
  Rational r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace higgsrel
