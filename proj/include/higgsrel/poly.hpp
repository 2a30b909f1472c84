#pragma once

#include <higgsrel/rational.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace higgsrel {

struct Variable {
  std::string name;
  int weight;  // ordinary cohomological degree

  bool operator==(const Variable&) const = default;
};

/// Ordered list of named generators with their ordinary degrees. Odd-weight
/// generators anticommute and square to zero.
class VarTable {
 public:
  explicit VarTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].weight <= 0)
        throw std::invalid_argument("variable '" + vars_[i].name + "' needs a positive weight");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j].name == vars_[i].name)
          throw std::invalid_argument("duplicate variable name '" + vars_[i].name + "'");
      if (vars_[i].weight % 2 != 0) odd_.push_back(i);
    }
  }

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& variables() const { return vars_; }
  int weight(std::size_t i) const { return vars_.at(i).weight; }
  bool is_odd(std::size_t i) const { return vars_.at(i).weight % 2 != 0; }
  const std::vector<std::size_t>& odd_indices() const { return odd_; }
  bool has_odd() const { return !odd_.empty(); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    return *i;
  }

  bool operator==(const VarTable& other) const { return vars_ == other.vars_; }

 private:
  std::vector<Variable> vars_;
  std::vector<std::size_t> odd_;
};

using TablePtr = std::shared_ptr<const VarTable>;

inline bool same_table(const TablePtr& a, const TablePtr& b) {
  return a == b || (a && b && *a == *b);
}

// Standard tables. ASCII aliases: a = alpha, b = beta, g3 = gamma, th = theta.

/// alpha, beta, gamma.
inline TablePtr invariant_table() {
  static const TablePtr t = std::make_shared<const VarTable>(
      std::vector<Variable>{{"a", 2}, {"b", 4}, {"g3", 6}});
  return t;
}

/// alpha, beta, gamma and the equivariant parameter u.
inline TablePtr equivariant_table() {
  static const TablePtr t = std::make_shared<const VarTable>(
      std::vector<Variable>{{"a", 2}, {"b", 4}, {"g3", 6}, {"u", 2}});
  return t;
}

/// Full moduli table: alpha, beta, gamma, u, psi_1..psi_2g.
inline TablePtr moduli_table(int g) {
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  std::vector<Variable> v{{"a", 2}, {"b", 4}, {"g3", 6}, {"u", 2}};
  for (int j = 1; j <= 2 * g; ++j) v.push_back({"psi" + std::to_string(j), 3});
  return std::make_shared<const VarTable>(std::move(v));
}

/// Symmetric-product table: eta, theta, u, xi_1..xi_2g. With g = 0 this is
/// the invariant ring Q[eta, theta, u].
inline TablePtr symprod_table(int g) {
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  std::vector<Variable> v{{"eta", 2}, {"th", 2}, {"u", 2}};
  for (int j = 1; j <= 2 * g; ++j) v.push_back({"xi" + std::to_string(j), 1});
  return std::make_shared<const VarTable>(std::move(v));
}

struct Monomial {
  int degree = 0;           // ordinary degree, cached
  std::vector<int> exps;    // one exponent per table variable

  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic, highest degree first, then lexicographic in table order.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.degree != y.degree) return x.degree > y.degree;
    return x.exps > y.exps;
  }
};

inline Monomial unit_monomial(const VarTable& t) { return Monomial{0, std::vector<int>(t.size(), 0)}; }

inline Monomial make_monomial(const VarTable& t, std::vector<int> exps) {
  if (exps.size() != t.size()) throw std::invalid_argument("exponent vector does not match table");
  int deg = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw std::invalid_argument("negative exponent");
    deg += exps[i] * t.weight(i);
  }
  return Monomial{deg, std::move(exps)};
}

/// Product of two monomials in the graded-commutative sense. Returns the sign
/// (+1, -1, or 0 when an odd generator repeats) and writes the product to out.
inline int multiply_monomials(const VarTable& t, const Monomial& x, const Monomial& y, Monomial& out) {
  int sign = 1;
  if (t.has_odd()) {
    const auto& odd = t.odd_indices();
    // Moving each odd factor of y leftwards past the odd factors of x with larger index.
    int x_after = 0;
    for (auto it = odd.rbegin(); it != odd.rend(); ++it) {
      std::size_t i = *it;
      if (x.exps[i] && y.exps[i]) return 0;
      if (y.exps[i] && (x_after % 2)) sign = -sign;
      if (x.exps[i]) ++x_after;
    }
  }
  out.degree = x.degree + y.degree;
  out.exps.resize(x.exps.size());
  for (std::size_t i = 0; i < x.exps.size(); ++i) out.exps[i] = x.exps[i] + y.exps[i];
  return sign;
}

/// Sparse polynomial over Rational in a weight-graded, graded-commutative ring.
class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  explicit GradedPoly(TablePtr table) : table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("polynomial needs a variable table");
  }

  static GradedPoly constant(TablePtr table, const Rational& c) {
    GradedPoly p(std::move(table));
    if (c != 0) p.terms_.emplace(unit_monomial(*p.table_), c);
    return p;
  }

  static GradedPoly variable(TablePtr table, std::size_t i) {
    GradedPoly p(std::move(table));
    auto m = unit_monomial(*p.table_);
    m.exps.at(i) = 1;
    m.degree = p.table_->weight(i);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
  }

  static GradedPoly variable(TablePtr table, std::string_view name) {
    auto i = table->index(name);
    return variable(std::move(table), i);
  }

  static GradedPoly monomial(TablePtr table, Monomial m, const Rational& c = 1) {
    GradedPoly p(std::move(table));
    if (m.exps.size() != p.table_->size()) throw std::invalid_argument("monomial does not match table");
    if (c != 0 && !vanishes(*p.table_, m)) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(unit_monomial(*table_)); }

  /// Ordinary degree if the polynomial is non-zero and homogeneous.
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree;
    for (const auto& [m, c] : terms_)
      if (m.degree != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous() const { return terms_.empty() || degree().has_value(); }

  GradedPoly homogeneous_part(int ordinary_degree) const {
    GradedPoly p(table_);
    for (const auto& [m, c] : terms_)
      if (m.degree == ordinary_degree) p.terms_.emplace(m, c);
    return p;
  }

  /// Adds c * m, dropping the term if the coefficient cancels.
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GradedPoly& operator+=(const GradedPoly& o) {
    check_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  GradedPoly& operator-=(const GradedPoly& o) {
    check_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  GradedPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  GradedPoly operator-() const {
    GradedPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& s) { return a *= s; }
  friend GradedPoly operator*(const Rational& s, GradedPoly a) { return a *= s; }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    a.check_table(b);
    GradedPoly p(a.table_);
    Monomial prod;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int sign = multiply_monomials(*a.table_, ma, mb, prod);
        if (sign == 0) continue;
        Rational c = ca * cb;
        if (sign < 0) c = -c;
        p.add_term(prod, c);
      }
    return p;
  }

  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  GradedPoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    GradedPoly result = constant(table_, 1);
    GradedPoly base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  bool operator==(const GradedPoly& o) const { return same_table(table_, o.table_) && terms_ == o.terms_; }

 private:
  void check_table(const GradedPoly& o) const {
    if (!same_table(table_, o.table_)) throw std::invalid_argument("polynomials live over different variable tables");
  }

  static bool vanishes(const VarTable& t, const Monomial& m) {
    for (auto i : t.odd_indices())
      if (m.exps[i] > 1) return true;
    return false;
  }

  TablePtr table_;
  TermMap terms_;
};

inline GradedPoly var(const TablePtr& t, std::string_view name) { return GradedPoly::variable(t, name); }
inline GradedPoly constant(const TablePtr& t, const Rational& c) { return GradedPoly::constant(t, c); }

/// Total degree = half the ordinary degree.
inline int total_degree(int ordinary_degree) { return ordinary_degree / 2; }

/// Ring homomorphism sending variable i of p's table to images[i] (all over
/// `target`). Odd generators must map to odd elements, even to even, so that
/// graded commutativity is preserved.
inline GradedPoly substitute(const GradedPoly& p, const TablePtr& target, std::span<const GradedPoly> images) {
  const VarTable& src = *p.table();
  if (images.size() != src.size()) throw std::invalid_argument("substitute: one image per source variable required");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!same_table(images[i].table(), target))
      throw std::invalid_argument("substitute: image of '" + src[i].name + "' is over a different table");
    for (const auto& [m, c] : images[i].terms())
      if ((m.degree % 2 != 0) != src.is_odd(i))
        throw std::invalid_argument("substitute: image of '" + src[i].name + "' has the wrong parity");
  }
  // powers[i][e] = images[i]^e, filled lazily
  std::vector<std::vector<GradedPoly>> powers(images.size());
  auto power = [&](std::size_t i, int e) -> const GradedPoly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(constant(target, 1));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
    return pw[e];
  };
  GradedPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    GradedPoly term = constant(target, c);
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i]) term *= power(i, m.exps[i]);
    out += term;
  }
  return out;
}

/// Substitution by variable name; unnamed variables map to the same-named
/// variable of the target table.
inline GradedPoly substitute(const GradedPoly& p, const TablePtr& target,
                             const std::map<std::string, GradedPoly>& images) {
  const VarTable& src = *p.table();
  std::vector<GradedPoly> imgs;
  imgs.reserve(src.size());
  for (const auto& v : src.variables()) {
    if (auto it = images.find(v.name); it != images.end()) {
      imgs.push_back(it->second);
    } else if (target->find(v.name)) {
      imgs.push_back(var(target, v.name));
    } else {
      imgs.push_back(GradedPoly(target));  // never reached when p avoids v; checked below
      for (const auto& [m, c] : p.terms())
        if (m.exps[src.index(v.name)])
          throw std::invalid_argument("substitute: no image for variable '" + v.name + "'");
    }
  }
  // Unused unmapped variables were given a zero image; zero is of either parity.
  return substitute(p, target, imgs);
}

/// Re-expresses p over another table, matching variables by name and weight.
inline GradedPoly embed(const GradedPoly& p, const TablePtr& target) {
  if (same_table(p.table(), target)) return p;
  const VarTable& src = *p.table();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    map[i] = target->find(src[i].name);
    if (map[i] && target->weight(*map[i]) != src.weight(i))
      throw std::invalid_argument("embed: weight mismatch for '" + src[i].name + "'");
  }
  GradedPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(target->size(), 0);
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (!m.exps[i]) continue;
      if (!map[i]) throw std::invalid_argument("embed: target table lacks '" + src[i].name + "'");
      e[*map[i]] = m.exps[i];
    }
    // Odd variables keep their relative order only if the target lists them in
    // the same order; recompute through multiplication to get the sign right.
    GradedPoly term = constant(target, c);
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i]) term *= GradedPoly::variable(target, *map[i]).pow(m.exps[i]);
    out += term;
  }
  return out;
}

/// Coefficient of var^power, as a polynomial over the same table (var absent).
inline GradedPoly coefficient_of_power(const GradedPoly& p, std::size_t var_index, int power) {
  GradedPoly out(p.table());
  const int w = p.table()->weight(var_index);
  for (const auto& [m, c] : p.terms()) {
    if (m.exps[var_index] != power) continue;
    Monomial r = m;
    r.exps[var_index] = 0;
    r.degree -= power * w;
    out.add_term(r, c);
  }
  return out;
}

inline int max_power(const GradedPoly& p, std::size_t var_index) {
  int e = 0;
  for (const auto& [m, c] : p.terms()) e = std::max(e, m.exps[var_index]);
  return e;
}

/// Drops every term in which var appears with exponent above cap; models the
/// quotient by var^(cap+1).
inline GradedPoly cap_power(const GradedPoly& p, std::size_t var_index, int cap) {
  GradedPoly out(p.table());
  for (const auto& [m, c] : p.terms())
    if (m.exps[var_index] <= cap) out.add_term(m, c);
  return out;
}

/// Partial derivative with respect to an even variable.
inline GradedPoly derivative(const GradedPoly& p, std::size_t var_index) {
  if (p.table()->is_odd(var_index)) throw std::invalid_argument("derivative in an odd variable is not supported");
  GradedPoly out(p.table());
  const int w = p.table()->weight(var_index);
  for (const auto& [m, c] : p.terms()) {
    int e = m.exps[var_index];
    if (e == 0) continue;
    Monomial r = m;
    r.exps[var_index] = e - 1;
    r.degree -= w;
    out.add_term(r, c * e);
  }
  return out;
}

/// True iff var^power divides every term.
inline bool divisible_by_power(const GradedPoly& p, std::size_t var_index, int power) {
  for (const auto& [m, c] : p.terms())
    if (m.exps[var_index] < power) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Text format: terms `coeff*var^exp*...` joined by + and -.

inline std::string monomial_to_string(const VarTable& t, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (!m.exps[i]) continue;
    if (!s.empty()) s += '*';
    s += t[i].name;
    if (m.exps[i] > 1) s += '^' + std::to_string(m.exps[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string to_string(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const bool unit = std::all_of(m.exps.begin(), m.exps.end(), [](int e) { return e == 0; });
    if (unit) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += monomial_to_string(*p.table(), m);
    } else {
      out += mag.get_str() + "*" + monomial_to_string(*p.table(), m);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const GradedPoly& p) { return os << to_string(p); }

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, TablePtr table) : s_(text), table_(std::move(table)) {}

  GradedPoly parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    GradedPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GradedPoly expr() {
    GradedPoly p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  GradedPoly term() {
    GradedPoly p = unary();
    for (;;) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        GradedPoly d = unary();
        auto deg = d.degree();
        if (!deg || *deg != 0) throw ParseError("division by a non-constant", at);
        p *= Rational(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }

  GradedPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  GradedPoly power() {
    GradedPoly base = primary();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
      if (digits.empty()) throw ParseError("expected exponent", at);
      if (digits.size() > 6) throw ParseError("exponent too large", at);
      return base.pow(std::stoi(digits));
    }
    return base;
  }

  GradedPoly primary() {
    skip();
    if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      GradedPoly p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
      return constant(table_, Rational(Integer(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string name;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        name += s_[pos_++];
      auto i = table_->find(name);
      if (!i) throw ParseError("unknown variable '" + name + "'", at);
      return GradedPoly::variable(table_, *i);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  TablePtr table_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GradedPoly parse_poly(std::string_view text, const TablePtr& table) {
  return detail::PolyParser(text, table).parse();
}

}  // namespace higgsrel
