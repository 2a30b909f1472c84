#pragma once

#include <higgsrel/poly.hpp>
#include <higgsrel/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace higgsrel {

// Coefficient rings for truncated series. A ring supplies zero/one, products
// (with any quotient normalization) and scaling by rationals.

struct RationalRing {
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational scale(const Rational& a, const Rational& s) const { return a * s; }
  bool is_zero(const Rational& a) const { return a == 0; }
};

/// Polynomial coefficients, optionally in the quotient by var^(cap+1).
struct PolyRing {
  using value_type = GradedPoly;

  TablePtr table;
  std::optional<std::pair<std::size_t, int>> cap;  // (variable index, max exponent)

  explicit PolyRing(TablePtr t, std::optional<std::pair<std::size_t, int>> c = std::nullopt)
      : table(std::move(t)), cap(c) {}

  GradedPoly normalize(GradedPoly p) const { return cap ? cap_power(p, cap->first, cap->second) : p; }
  GradedPoly zero() const { return GradedPoly(table); }
  GradedPoly one() const { return constant(table, 1); }
  GradedPoly mul(const GradedPoly& a, const GradedPoly& b) const { return normalize(a * b); }
  GradedPoly scale(const GradedPoly& a, const Rational& s) const { return a * s; }
  bool is_zero(const GradedPoly& a) const { return a.is_zero(); }
};

/// Univariate truncated power series: coefficients of x^0 .. x^(order-1).
template <class Ring>
class Series {
 public:
  using value_type = typename Ring::value_type;

  Series(Ring ring, int order) : ring_(std::move(ring)), order_(order) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    c_.assign(order, ring_.zero());
  }

  static Series constant(Ring ring, int order, const value_type& v) {
    Series s(std::move(ring), order);
    if (order > 0) s.c_[0] = v;
    return s;
  }

  static Series one(Ring ring, int order) {
    auto v = ring.one();
    return constant(std::move(ring), order, v);
  }

  /// The formal variable x.
  static Series x(Ring ring, int order) {
    Series s(std::move(ring), order);
    if (order > 1) s.c_[1] = s.ring_.one();
    return s;
  }

  static Series from_coefficients(Ring ring, int order, const std::vector<value_type>& coeffs) {
    Series s(std::move(ring), order);
    for (std::size_t i = 0; i < coeffs.size() && static_cast<int>(i) < order; ++i) s.c_[i] = coeffs[i];
    return s;
  }

  const Ring& ring() const { return ring_; }
  int order() const { return order_; }
  const std::vector<value_type>& coefficients() const { return c_; }

  value_type operator[](int i) const { return (i >= 0 && i < order_) ? c_[i] : ring_.zero(); }
  value_type& at(int i) { return c_.at(i); }
  value_type constant_term() const { return (*this)[0]; }

  Series truncated(int order) const {
    Series s(ring_, order);
    for (int i = 0; i < order && i < order_; ++i) s.c_[i] = c_[i];
    return s;
  }

  Series& operator+=(const Series& o) {
    check(o);
    for (int i = 0; i < order_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check(o);
    for (int i = 0; i < order_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) {
    a.check(b);
    Series out(a.ring_, a.order_);
    for (int i = 0; i < a.order_; ++i) {
      if (a.ring_.is_zero(a.c_[i])) continue;
      for (int j = 0; i + j < a.order_; ++j) {
        if (a.ring_.is_zero(b.c_[j])) continue;
        out.c_[i + j] += a.ring_.mul(a.c_[i], b.c_[j]);
      }
    }
    return out;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  friend Series operator*(Series a, const Rational& s) {
    for (auto& v : a.c_) v = a.ring_.scale(v, s);
    return a;
  }
  friend Series operator*(const Rational& s, Series a) { return std::move(a) * s; }

  /// Multiplies every coefficient by a ring element.
  Series times(const value_type& v) const {
    Series out(ring_, order_);
    for (int i = 0; i < order_; ++i) out.c_[i] = ring_.mul(c_[i], v);
    return out;
  }

  bool operator==(const Series& o) const { return order_ == o.order_ && c_ == o.c_; }

 private:
  void check(const Series& o) const {
    if (o.order_ != order_) throw std::invalid_argument("series of different truncation orders");
  }

  Ring ring_;
  int order_;
  std::vector<value_type> c_;
};

/// Bivariate truncated power series: coefficients of x^i y^j with i + j < order.
template <class Ring>
class Series2 {
 public:
  using value_type = typename Ring::value_type;

  Series2(Ring ring, int order) : ring_(std::move(ring)), order_(order) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    c_.resize(order);
    for (int i = 0; i < order; ++i) c_[i].assign(order - i, ring_.zero());
  }

  static Series2 constant(Ring ring, int order, const value_type& v) {
    Series2 s(std::move(ring), order);
    if (order > 0) s.c_[0][0] = v;
    return s;
  }
  static Series2 one(Ring ring, int order) {
    auto v = ring.one();
    return constant(std::move(ring), order, v);
  }
  static Series2 x(Ring ring, int order) {
    Series2 s(std::move(ring), order);
    if (order > 1) s.c_[1][0] = s.ring_.one();
    return s;
  }
  static Series2 y(Ring ring, int order) {
    Series2 s(std::move(ring), order);
    if (order > 1) s.c_[0][1] = s.ring_.one();
    return s;
  }

  const Ring& ring() const { return ring_; }
  int order() const { return order_; }

  value_type operator()(int i, int j) const {
    if (i < 0 || j < 0 || i + j >= order_) return ring_.zero();
    return c_[i][j];
  }
  value_type& at(int i, int j) { return c_.at(i).at(j); }
  value_type constant_term() const { return (*this)(0, 0); }

  Series2& operator+=(const Series2& o) {
    check(o);
    for (int i = 0; i < order_; ++i)
      for (int j = 0; i + j < order_; ++j) c_[i][j] += o.c_[i][j];
    return *this;
  }
  Series2& operator-=(const Series2& o) {
    check(o);
    for (int i = 0; i < order_; ++i)
      for (int j = 0; i + j < order_; ++j) c_[i][j] -= o.c_[i][j];
    return *this;
  }
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }

  friend Series2 operator*(const Series2& a, const Series2& b) {
    a.check(b);
    const int n = a.order_;
    Series2 out(a.ring_, n);
    for (int i1 = 0; i1 < n; ++i1)
      for (int j1 = 0; i1 + j1 < n; ++j1) {
        if (a.ring_.is_zero(a.c_[i1][j1])) continue;
        for (int i2 = 0; i1 + j1 + i2 < n; ++i2)
          for (int j2 = 0; i1 + j1 + i2 + j2 < n; ++j2) {
            if (a.ring_.is_zero(b.c_[i2][j2])) continue;
            out.c_[i1 + i2][j1 + j2] += a.ring_.mul(a.c_[i1][j1], b.c_[i2][j2]);
          }
      }
    return out;
  }
  Series2& operator*=(const Series2& o) { return *this = *this * o; }

  friend Series2 operator*(Series2 a, const Rational& s) {
    for (auto& row : a.c_)
      for (auto& v : row) v = a.ring_.scale(v, s);
    return a;
  }
  friend Series2 operator*(const Rational& s, Series2 a) { return std::move(a) * s; }

  Series2 times(const value_type& v) const {
    Series2 out(ring_, order_);
    for (int i = 0; i < order_; ++i)
      for (int j = 0; i + j < order_; ++j) out.c_[i][j] = ring_.mul(c_[i][j], v);
    return out;
  }

  bool operator==(const Series2& o) const { return order_ == o.order_ && c_ == o.c_; }

 private:
  void check(const Series2& o) const {
    if (o.order_ != order_) throw std::invalid_argument("series of different truncation orders");
  }

  Ring ring_;
  int order_;
  std::vector<std::vector<value_type>> c_;
};

// Generic operations over Series and Series2.

/// exp(h) for h with zero constant term.
template <class S>
S exp(const S& h) {
  if (!h.ring().is_zero(h.constant_term())) throw std::domain_error("exp: series must have zero constant term");
  S result = S::one(h.ring(), h.order());
  S power = result;
  Integer fact = 1;
  for (int j = 1; j < h.order(); ++j) {
    power *= h;
    fact *= j;
    result += power * make_rational(Integer(1), fact);
  }
  return result;
}

/// 1/f for f with constant term one, via the geometric series in (1 - f).
template <class S>
S geometric_inverse(const S& f) {
  if (!(f.constant_term() == f.ring().one()))
    throw std::domain_error("geometric_inverse: series must have constant term one");
  S h = S::one(f.ring(), f.order()) - f;
  S result = S::one(f.ring(), f.order());
  S power = result;
  for (int j = 1; j < f.order(); ++j) {
    power *= h;
    result += power;
  }
  return result;
}

/// outer(inner) for inner with zero constant term; the result has inner's type
/// and truncation order.
template <class Ring, class S>
S compose(const Series<Ring>& outer, const S& inner) {
  if (!inner.ring().is_zero(inner.constant_term()))
    throw std::domain_error("compose: inner series must have zero constant term");
  const int n = std::min(outer.order(), inner.order());
  S result(inner.ring(), inner.order());
  for (int i = n - 1; i >= 0; --i) {
    result *= inner;
    result += S::constant(inner.ring(), inner.order(), outer[i]);
  }
  return result;
}

/// Termwise antiderivative with zero constant term (order preserved).
template <class Ring>
Series<Ring> integrate(const Series<Ring>& f) {
  Series<Ring> out(f.ring(), f.order());
  for (int i = 0; i + 1 < f.order(); ++i) out.at(i + 1) = f.ring().scale(f[i], make_rational(1, i + 1));
  return out;
}

/// Termwise derivative; the top coefficient becomes unknown and is dropped, so
/// the result has order - 1.
template <class Ring>
Series<Ring> derivative(const Series<Ring>& f) {
  const int n = std::max(0, f.order() - 1);
  Series<Ring> out(f.ring(), n);
  for (int i = 0; i < n; ++i) out.at(i) = f.ring().scale(f[i + 1], Rational(i + 1));
  return out;
}

// Even functions of t = sqrt(3x), expanded as rational series in x.

enum class EvenSeriesKind {
  T_OVER_TANH,            // t / tanh t
  T_OVER_SINH,            // t / sinh t
  INV_COSH_SQ,            // 1 / cosh^2 t
  ONE_MINUS_TANH_OVER_T,  // (3/t^2)(1 - tanh t / t)
};

namespace detail {

// sinh t / t and cosh t with t^2 = 3x.
inline Series<RationalRing> sinh_over_t(int order) {
  Series<RationalRing> s(RationalRing{}, order);
  for (int j = 0; j < order; ++j) s.at(j) = make_rational(Integer(1), factorial(2 * j + 1)) * rational_power(3, j);
  return s;
}

inline Series<RationalRing> cosh_series(int order) {
  Series<RationalRing> s(RationalRing{}, order);
  for (int j = 0; j < order; ++j) s.at(j) = make_rational(Integer(1), factorial(2 * j)) * rational_power(3, j);
  return s;
}

}  // namespace detail

inline Series<RationalRing> even_series(EvenSeriesKind kind, int order) {
  if (order < 1) throw std::invalid_argument("even_series: order must be at least 1");
  switch (kind) {
    case EvenSeriesKind::T_OVER_SINH:
      return geometric_inverse(detail::sinh_over_t(order));
    case EvenSeriesKind::T_OVER_TANH:
      return detail::cosh_series(order) * geometric_inverse(detail::sinh_over_t(order));
    case EvenSeriesKind::INV_COSH_SQ: {
      auto inv = geometric_inverse(detail::cosh_series(order));
      return inv * inv;
    }
    case EvenSeriesKind::ONE_MINUS_TANH_OVER_T: {
      // 1 - tanh t / t has zero constant term; dividing by x shifts down one place.
      const int n = order + 1;
      auto tanh_over_t = detail::sinh_over_t(n) * geometric_inverse(detail::cosh_series(n));
      auto diff = Series<RationalRing>::one(RationalRing{}, n) - tanh_over_t;
      Series<RationalRing> out(RationalRing{}, order);
      for (int i = 0; i < order; ++i) out.at(i) = diff[i + 1];
      return out;
    }
  }
  throw std::invalid_argument("even_series: unknown kind");
}

}  // namespace higgsrel
