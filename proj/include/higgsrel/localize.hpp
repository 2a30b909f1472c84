#pragma once

#include <higgsrel/classes.hpp>
#include <higgsrel/linalg.hpp>
#include <higgsrel/poly.hpp>
#include <higgsrel/slice.hpp>
#include <higgsrel/sympow.hpp>

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace higgsrel {

// Components of the circle-fixed locus of M^g_n.

struct FixedComponent {
  enum class Kind { MIN, SYM };
  Kind kind = Kind::MIN;
  int d = 0;  // SYM only
  int m = 0;  // SYM only: 2g + n - 1 - 2d

  static FixedComponent minimum() { return FixedComponent{}; }
  static FixedComponent sym(int g, int n, int d) { return FixedComponent{Kind::SYM, d, 2 * g + n - 1 - 2 * d}; }
  bool is_min() const { return kind == Kind::MIN; }
  std::string kind_name() const { return is_min() ? "MIN" : "SYM"; }
  bool operator==(const FixedComponent&) const = default;
};

/// MIN followed by SYM(d) for d = 1 .. g + floor((n-1)/2).
inline std::vector<FixedComponent> fixed_components(int g, int n) {
  if (g < 2) throw std::invalid_argument("fixed_components: need g >= 2");
  if (n < 0) throw std::invalid_argument("fixed_components: need n >= 0");
  std::vector<FixedComponent> out{FixedComponent::minimum()};
  for (int d = 1; d <= g + floor_div(n - 1, 2); ++d) out.push_back(FixedComponent::sym(g, n, d));
  return out;
}

/// Restriction to the symmetric-product component with index d:
///   a -> (2d-1)(eta-u) + theta, b -> (eta-u)^2, g3 -> -(eta-u)^2 theta / 2,
///   psi_j -> (eta-u) xi_j / 2.
/// Classes without psi land in Q[eta, theta, u]; otherwise in the full ring of genus g.
inline GradedPoly restrict_to_component(const GradedPoly& p, int g, int d) {
  const VarTable& src = *p.table();
  bool has_psi = false;
  for (std::size_t i : src.odd_indices())
    if (max_power(p, i) > 0) has_psi = true;
  const TablePtr target = has_psi ? symprod_table(g) : invariant_symprod_table();
  const auto e = var(target, "eta") - var(target, "u");
  const auto th = var(target, "th");
  std::map<std::string, GradedPoly> images{
      {"a", Rational(2 * d - 1) * e + th},
      {"b", e * e},
      {"g3", make_rational(-1, 2) * e * e * th},
  };
  if (has_psi)
    for (int j = 1; j <= 2 * g; ++j)
      images.emplace("psi" + std::to_string(j), make_rational(1, 2) * e * var(target, "xi" + std::to_string(j)));
  return substitute(p, target, images);
}

// The minimum stratum N.

/// Coefficients of (1-x^g)(1-x^(g+1))(1-x^(g+2)) / ((1-x)(1-x^2)(1-x^3)) up to x^max_degree.
inline std::vector<Integer> n_model_hilbert_series(int g, int max_degree) {
  std::vector<Integer> num(max_degree + 1, 0);
  num[0] = 1;
  for (int e : {g, g + 1, g + 2})
    for (int i = max_degree; i >= e; --i) num[i] -= num[i - e];
  for (int e : {1, 2, 3})
    for (int i = e; i <= max_degree; ++i) num[i] += num[i - e];
  return num;
}

/// The invariant cohomology of N as Q[a,b,g3] modulo xi^0_g, xi^0_{g+1},
/// xi^0_{g+2} and g3^(g+1). Construction verifies the quotient's Hilbert
/// series and throws if it disagrees. Slices are cached; keep an instance
/// on one thread.
class NModel {
 public:
  explicit NModel(int g) : g_(g), ideal_(make_ideal(g)) {
    if (g < 2) throw std::invalid_argument("NModel: need g >= 2");
    const int top = 3 * g + 3;
    const auto expected = n_model_hilbert_series(g, top);
    for (int D = 0; D <= top; ++D) {
      const auto got = ideal_.quotient_dimension(2 * D);
      if (Integer(static_cast<unsigned long>(got)) != expected[D])
        throw std::logic_error("NModel: quotient dimension " + std::to_string(got) + " in total degree " +
                               std::to_string(D) + " disagrees with the three-relation Hilbert series");
    }
  }

  int genus() const { return g_; }
  GradedIdeal& ideal() { return ideal_; }
  const SliceBasis& slice(int total_degree) { return ideal_.slice(2 * total_degree); }
  std::size_t quotient_dimension(int total_degree) { return ideal_.quotient_dimension(2 * total_degree); }

 private:
  static GradedIdeal make_ideal(int g) {
    return GradedIdeal(invariant_table(), [g](int ordinary_degree) {
      std::vector<GradedPoly> gens;
      if (ordinary_degree % 2 != 0) return gens;
      const int D = ordinary_degree / 2;
      XiTable xt(0, std::nullopt);
      if (D >= g && D <= g + 2) gens.push_back(xt(D));
      if (D == 3 * (g + 1)) gens.push_back(var(invariant_table(), "g3").pow(g + 1));
      return gens;
    });
  }

  int g_;
  GradedIdeal ideal_;
};

/// Every u-coefficient of p (a polynomial in a, b, g3 and possibly u) lies in the ideal of N.
inline bool n_membership(NModel& model, const GradedPoly& p) {
  if (p.is_zero()) return true;
  if (!p.is_homogeneous()) throw std::invalid_argument("n_membership: inhomogeneous class");
  const auto u = p.table()->find("u");
  const int top = u ? max_power(p, *u) : 0;
  for (int j = 0; j <= top; ++j) {
    GradedPoly c = u ? coefficient_of_power(p, *u, j) : p;
    if (c.is_zero()) continue;
    if (!model.ideal().contains(embed(c, invariant_table()))) return false;
  }
  return true;
}

// Equivariant relation checking.

struct ComponentVerdict {
  FixedComponent component;
  bool vanishes = true;
  std::optional<int> witness_u_power;  // SYM: u-coefficient that fails to vanish
  std::optional<Pairing> witness;      // SYM: the nonzero pairing
};

struct RelationReport {
  std::string poly;
  int g = 0, n = 0;
  int degree = 0;  // total degree
  std::vector<ComponentVerdict> components;
  bool verdict = true;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["poly"] = poly;
    j["g"] = g;
    j["n"] = n;
    j["degree"] = degree;
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : components) {
      nlohmann::ordered_json cj;
      cj["kind"] = c.component.kind_name();
      if (!c.component.is_min()) {
        cj["d"] = c.component.d;
        cj["m"] = c.component.m;
      }
      cj["verdict"] = c.vanishes;
      if (c.witness) {
        cj["witness"] = {{"u_power", *c.witness_u_power},
                         {"eta", c.witness->eta},
                         {"theta", c.witness->theta},
                         {"value", to_string(c.witness->value)}};
      }
      comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    j["verdict"] = verdict;
    return j;
  }
};

/// Restriction of p to a SYM component vanishes iff every u-coefficient is a zero class on C_m.
inline ComponentVerdict check_sym_component(int g, const FixedComponent& c, const GradedPoly& p) {
  ComponentVerdict v{c};
  const GradedPoly r = restrict_to_component(p, g, c.d);
  const SymProdSpace space(c.m, g);
  const std::size_t u = r.table()->index("u");
  const int top = max_power(r, u);
  for (int j = 0; j <= top; ++j) {
    const GradedPoly coeff = coefficient_of_power(r, u, j);
    if (auto w = zero_class_witness(space, coeff)) {
      v.vanishes = false;
      v.witness_u_power = j;
      v.witness = w;
      return v;
    }
  }
  return v;
}

/// Kirwan criterion on M^g_n: p is an equivariant relation iff it restricts to
/// zero on every fixed component. p is a homogeneous polynomial in a, b, g3, u.
inline RelationReport is_equivariant_relation(int g, int n, const GradedPoly& p, NModel* model = nullptr) {
  if (!p.is_homogeneous()) throw std::invalid_argument("is_equivariant_relation: inhomogeneous class");
  const GradedPoly q = embed(p, equivariant_table());
  std::optional<NModel> own;
  if (!model) {
    own.emplace(g);
    model = &*own;
  }
  RelationReport rep;
  rep.poly = to_string(q);
  rep.g = g;
  rep.n = n;
  rep.degree = q.is_zero() ? 0 : total_degree(*q.degree());
  for (const auto& c : fixed_components(g, n)) {
    ComponentVerdict v{c};
    if (c.is_min()) {
      v.vanishes = n_membership(*model, q);
    } else {
      v = check_sym_component(g, c, q);
    }
    rep.verdict = rep.verdict && v.vanishes;
    rep.components.push_back(std::move(v));
  }
  return rep;
}

/// Degreewise relation ideal of M^g_n computed by localization: the slice V_D
/// of Q[a,b,g3,u] restricting to zero on every fixed component, and its
/// image under u -> 0. Slices are cached; keep an instance on one thread.
class RelationOracle {
 public:
  RelationOracle(int g, int n) : g_(g), n_(n), model_(g), components_(fixed_components(g, n)) {}

  int genus() const { return g_; }
  int twist() const { return n_; }
  NModel& n_model() { return model_; }

  /// V_D as a subspace of the total-degree-D slice of Q[a,b,g3,u].
  const SliceBasis& equivariant_slice(int D) {
    auto it = equivariant_.find(D);
    if (it != equivariant_.end()) return it->second;
    return equivariant_.emplace(D, build_equivariant(D)).first->second;
  }

  /// The u -> 0 image of V_D, a subspace of the total-degree-D slice of Q[a,b,g3].
  const SliceBasis& ordinary_slice(int D) {
    auto it = ordinary_.find(D);
    if (it != ordinary_.end()) return it->second;
    const auto& v = equivariant_slice(D);
    const std::size_t u = equivariant_table()->index("u");
    std::vector<GradedPoly> images;
    for (const auto& b : v.basis()) images.push_back(embed(coefficient_of_power(b, u, 0), invariant_table()));
    return ordinary_.emplace(D, SliceBasis::span(invariant_table(), 2 * D, images)).first->second;
  }

 private:
  SliceBasis build_equivariant(int D) {
    const auto t = equivariant_table();
    const std::size_t u = t->index("u");
    const auto monos = degree_slice_monomials(*t, 2 * D);
    const std::size_t N = monos.size();
    Matrix rows;

    // MIN: the a,b,g3-part of each u^j coefficient lies in the ideal of N
    std::map<int, Matrix> min_functionals;
    std::map<int, SliceBasis> inv_slices;
    for (std::size_t i = 0; i < N; ++i) {
      const int j = monos[i].exps[u];
      if (!min_functionals.count(j)) {
        min_functionals.emplace(j, model_.slice(D - j).quotient_functionals());
        inv_slices.emplace(j, model_.slice(D - j));
      }
    }
    for (const auto& [j, funcs] : min_functionals) {
      const SliceBasis& s = inv_slices.at(j);
      for (const auto& f : funcs) {
        Vector row(N, Rational(0));
        for (std::size_t i = 0; i < N; ++i) {
          if (monos[i].exps[u] != j) continue;
          std::vector<int> e = monos[i].exps;
          e.erase(e.begin() + static_cast<long>(u));
          row[i] = f[s.index_of(make_monomial(*invariant_table(), e))];
        }
        rows.push_back(std::move(row));
      }
    }

    // SYM: pair every u^j coefficient of the restriction against eta^a theta^b
    for (const auto& c : components_) {
      if (c.is_min()) continue;
      const SymProdSpace space(c.m, g_);
      std::vector<GradedPoly> restricted;
      restricted.reserve(N);
      for (const auto& mono : monos) restricted.push_back(restrict_to_component(GradedPoly::monomial(t, mono), g_, c.d));
      const auto st = invariant_symprod_table();
      const std::size_t su = st->index("u");
      for (int j = 0; j <= D; ++j) {
        const int rest = c.m - (D - j);
        if (rest < 0) continue;
        for (int b = 0; b <= std::min(g_, rest); ++b) {
          const auto test = var(st, "eta").pow(rest - b) * var(st, "th").pow(b);
          Vector row(N, Rational(0));
          bool nonzero = false;
          for (std::size_t i = 0; i < N; ++i) {
            const GradedPoly coeff = coefficient_of_power(restricted[i], su, j);
            if (coeff.is_zero()) continue;
            row[i] = evaluate_invariant(space, coeff * test);
            if (row[i] != 0) nonzero = true;
          }
          if (nonzero) rows.push_back(std::move(row));
        }
      }
    }
    if (rows.empty()) rows.push_back(Vector(N, Rational(0)));
    return SliceBasis::kernel(t, 2 * D, rows);
  }

  int g_, n_;
  NModel model_;
  std::vector<FixedComponent> components_;
  std::map<int, SliceBasis> equivariant_;
  std::map<int, SliceBasis> ordinary_;
};

/// The ordinary relation slice of M^g_n in total degree D.
inline SliceBasis relation_oracle_slice(int g, int n, int D) {
  RelationOracle oracle(g, n);
  return oracle.ordinary_slice(D);
}

}  // namespace higgsrel
