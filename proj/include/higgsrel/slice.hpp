#pragma once

#include <higgsrel/linalg.hpp>
#include <higgsrel/poly.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace higgsrel {

/// Every monomial of exactly the given ordinary degree, odd generators with
/// exponent at most one, in MonomialOrder.
inline std::vector<Monomial> degree_slice_monomials(const VarTable& t, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<int> e(t.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
    if (i == t.size()) {
      if (rem == 0) out.push_back(Monomial{degree, e});
      return;
    }
    const int w = t.weight(i);
    int hi = rem / w;
    if (t.is_odd(i) && hi > 1) hi = 1;
    for (int k = hi; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, rem - k * w);
    }
    e[i] = 0;
  };
  rec(0, degree);
  return out;
}

/// Canonical basis (reduced row-echelon form) of a linear subspace of one
/// degree slice of a polynomial ring. Two subspaces are equal iff their
/// SliceBasis objects compare equal.
class SliceBasis {
 public:
  SliceBasis(TablePtr table, int degree)
      : table_(std::move(table)), degree_(degree), monomials_(degree_slice_monomials(*table_, degree)) {
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  }

  static SliceBasis span(TablePtr table, int degree, std::span<const GradedPoly> polys) {
    SliceBasis b(std::move(table), degree);
    Matrix rows;
    rows.reserve(polys.size());
    for (const auto& p : polys) rows.push_back(b.coordinates(p));
    b.set_rows(std::move(rows));
    return b;
  }

  static SliceBasis whole(TablePtr table, int degree) {
    SliceBasis b(std::move(table), degree);
    b.set_rows(identity_matrix(b.monomials_.size()));
    return b;
  }

  /// All slice elements annihilated by every row of `functionals` (rows are
  /// indexed by the slice monomials).
  static SliceBasis kernel(TablePtr table, int degree, const Matrix& functionals) {
    SliceBasis b(std::move(table), degree);
    for (const auto& f : functionals)
      if (f.size() != b.monomials_.size()) throw std::invalid_argument("kernel: functional has wrong length");
    b.set_rows(nullspace(functionals, b.monomials_.size()));
    return b;
  }

  const TablePtr& table() const { return table_; }
  int degree() const { return degree_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t ambient_dimension() const { return monomials_.size(); }
  std::size_t dimension() const { return rows_.size(); }
  const Matrix& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::size_t index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::invalid_argument("monomial outside the slice");
    return it->second;
  }

  Vector coordinates(const GradedPoly& p) const {
    if (!same_table(p.table(), table_)) throw std::invalid_argument("slice: polynomial over a different table");
    Vector v(monomials_.size(), Rational(0));
    for (const auto& [m, c] : p.terms()) {
      if (m.degree != degree_)
        throw std::invalid_argument("slice: inhomogeneous input (term of degree " + std::to_string(m.degree) +
                                    " in slice of degree " + std::to_string(degree_) + ")");
      v[index_.at(m)] = c;
    }
    return v;
  }

  GradedPoly from_coordinates(const Vector& v) const {
    GradedPoly p(table_);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) p.add_term(monomials_[i], v[i]);
    return p;
  }

  std::vector<GradedPoly> basis() const {
    std::vector<GradedPoly> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(from_coordinates(r));
    return out;
  }

  Vector reduce(Vector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (rows_[i][j] != 0) v[j] -= f * rows_[i][j];
    }
    return v;
  }

  /// Normal form of p modulo this subspace.
  GradedPoly reduce(const GradedPoly& p) const { return from_coordinates(reduce(coordinates(p))); }

  bool contains(const GradedPoly& p) const { return is_zero_vector(reduce(coordinates(p))); }

  bool contains_all(std::span<const GradedPoly> ps) const {
    for (const auto& p : ps)
      if (!contains(p)) return false;
    return true;
  }

  SliceBasis extended(std::span<const GradedPoly> polys) const {
    SliceBasis b(table_, degree_);
    Matrix rows = rows_;
    for (const auto& p : polys) rows.push_back(coordinates(p));
    b.set_rows(std::move(rows));
    return b;
  }

  /// Linear functionals (rows over the slice monomials) whose common kernel is
  /// exactly this subspace: one per non-pivot column, reading off the normal form.
  Matrix quotient_functionals() const {
    std::vector<bool> is_pivot(monomials_.size(), false);
    for (auto p : pivots_) is_pivot[p] = true;
    Matrix out;
    for (std::size_t c = 0; c < monomials_.size(); ++c) {
      if (is_pivot[c]) continue;
      Vector f(monomials_.size(), Rational(0));
      f[c] = 1;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i][c] != 0) f[pivots_[i]] = -rows_[i][c];
      out.push_back(std::move(f));
    }
    return out;
  }

  bool is_subspace_of(const SliceBasis& other) const {
    check_compatible(other);
    for (const auto& r : rows_)
      if (!is_zero_vector(other.reduce(r))) return false;
    return true;
  }

  bool operator==(const SliceBasis& o) const {
    return same_table(table_, o.table_) && degree_ == o.degree_ && rows_ == o.rows_;
  }

 private:
  void set_rows(Matrix rows) {
    pivots_ = rref(rows, monomials_.size());
    rows_ = std::move(rows);
  }

  void check_compatible(const SliceBasis& o) const {
    if (!same_table(table_, o.table_) || degree_ != o.degree_)
      throw std::invalid_argument("slice bases over different slices");
  }

  TablePtr table_;
  int degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t, MonomialOrder> index_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

/// Homogeneous ideal in a commutative (even-variable) polynomial ring, built
/// slice by slice: slice(D) = span(generators of degree D, x_i * slice(D - w_i)).
/// Slices are cached, so an instance should stay confined to one thread.
class GradedIdeal {
 public:
  using GeneratorSource = std::function<std::vector<GradedPoly>(int ordinary_degree)>;

  GradedIdeal(TablePtr table, GeneratorSource generators)
      : table_(std::move(table)), generators_(std::move(generators)) {
    if (table_->has_odd()) throw std::invalid_argument("GradedIdeal expects a commutative table");
  }

  const TablePtr& table() const { return table_; }

  const SliceBasis& slice(int degree) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    while (static_cast<int>(slices_.size()) <= degree) build_next();
    return slices_[degree];
  }

  bool contains(const GradedPoly& p) {
    for (int d = 0;; ++d) {
      GradedPoly part = p.homogeneous_part(d);
      if (!part.is_zero() && !slice(d).contains(part)) return false;
      bool rest = false;
      for (const auto& [m, c] : p.terms())
        if (m.degree > d) rest = true;
      if (!rest) return true;
    }
  }

  /// dim of (ring / ideal) in the given ordinary degree.
  std::size_t quotient_dimension(int degree) {
    const auto& s = slice(degree);
    return s.ambient_dimension() - s.dimension();
  }

 private:
  void build_next() {
    const int d = static_cast<int>(slices_.size());
    std::vector<GradedPoly> spanning = generators_(d);
    for (std::size_t i = 0; i < table_->size(); ++i) {
      const int w = table_->weight(i);
      if (d - w < 0) continue;
      const GradedPoly x = GradedPoly::variable(table_, i);
      for (const auto& q : slices_[d - w].basis()) spanning.push_back(x * q);
    }
    slices_.push_back(SliceBasis::span(table_, d, spanning));
  }

  TablePtr table_;
  GeneratorSource generators_;
  std::vector<SliceBasis> slices_;
};

}  // namespace higgsrel
