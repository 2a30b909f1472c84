// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <higgsrel/higgsrel.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace higgsrel;

namespace {

struct Outcome {
  bool pass = true;
  long checked = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::string cell(std::initializer_list<std::pair<const char*, int>> kv) {
  std::ostringstream s;
  bool first = true;
  for (const auto& [k, v] : kv) {
    s << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return s.str();
}

Outcome dims() {
  Outcome o;
  for (int g = 2; g <= 4; ++g)
    for (int n = 0; n <= 4; ++n) {
      const auto rep = dim_report(g, n);
      o.expect(rep.quotient.total == rep.region && rep.region == rep.hi, cell({{"g", g}, {"n", n}}));
    }
  o.expect(dim_HI(2, 0) == 6 && dim_HI(2, 1) == 9 && dim_HI(3, 0) == 18, "spot values");
  return o;
}

Outcome main_theorem() {
  Outcome o;
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}}) {
    const auto rep = check_main_theorem(g, n, 3 * g + 3 + n);
    for (const auto& d : rep.degrees) o.expect(d.equal, cell({{"g", g}, {"n", n}, {"D", d.degree}}));
  }
  return o;
}

Outcome equivariant() {
  Outcome o;
  const auto u = equivariant_table()->index("u");
  for (int g = 2; g <= 4; ++g)
    for (int n = 0; n <= 3; ++n) {
      NModel model(g);
      for (int k = 0; k <= n / 2; ++k)
        o.expect(is_equivariant_relation(g, n + 2, equivariant_xi_family(g, n, k), &model).verdict,
                 "family " + cell({{"g", g}, {"n", n}, {"k", k}}));
      const bool odd = n % 2 != 0;
      for (int k = 0; k <= (odd ? (n - 1) / 2 : n / 2); ++k) {
        const auto p = divisible_equivariant_class(g, n, k);
        o.expect(is_equivariant_relation(g, n + 2, p, &model).verdict, "prefactor " + cell({{"g", g}, {"n", n}, {"k", k}}));
        o.expect(divisible_by_power(p, u, 2 * k + (odd ? 1 : 0)), "divisibility " + cell({{"g", g}, {"n", n}, {"k", k}}));
      }
    }
  return o;
}

Outcome xi_cross() {
  Outcome o;
  for (int g = 2; g <= 4; ++g)
    for (int k = 0; k <= 3; ++k) {
      for (int r = 0; r <= 10; ++r) o.expect(xi_via_phi(g, k, r) == xi(g, k, r), "phi " + cell({{"g", g}, {"k", k}, {"r", r}}));
      o.expect(ode_check_F0(g, k, 12), "ode " + cell({{"g", g}, {"k", k}}));
      o.expect(bivariate_identity_check(g, k, 12), "bivariate " + cell({{"g", g}, {"k", k}}));
    }
  for (int g = 1; g <= 3; ++g)
    for (int k = 0; k <= 2; ++k)
      for (int r = 2 * k; r <= 5; ++r)
        for (int s = 0; s <= 5; ++s)
          o.expect(xi_product_formula_check(g, k, r, s), "product " + cell({{"g", g}, {"k", k}, {"r", r}, {"s", s}}));
  for (int g = 1; g <= 4; ++g)
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l) o.expect(stability_check(g, k, l), "stability " + cell({{"g", g}, {"k", k}, {"l", l}}));
  return o;
}

GradedPoly expanded(const Series<RationalRing>& A, const Series<RationalRing>& B, int m) {
  const auto t = invariant_symprod_table();
  GradedPoly ap(t), bp(t);
  for (int i = 0; i <= m; ++i) {
    ap += var(t, "eta").pow(i) * A[i];
    bp += var(t, "eta").pow(i) * B[i];
  }
  const auto x = var(t, "th") * bp;
  GradedPoly e = constant(t, 1), pw = constant(t, 1);
  for (int j = 1; j <= m; ++j) {
    pw *= x;
    e += pw * make_rational(Integer(1), factorial(j));
  }
  return (e * ap).homogeneous_part(2 * m);
}

Outcome sympow() {
  Outcome o;
  const int order = 10;
  using RS = Series<RationalRing>;
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coeff(-6, 6), pos(0, 8);
  for (int g = 1; g <= 4; ++g)
    for (int m = 0; m <= 8; ++m) {
      const SymProdSpace space(m, g);
      // single monomials, then random three-term series
      for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
          RS A(RationalRing{}, order), B(RationalRing{}, order);
          A.at(i) = 1;
          B.at(j) = 1;
          o.expect(residue_evaluate(space, A, B) == evaluate_invariant(space, expanded(A, B, m)),
                   "residue " + cell({{"g", g}, {"m", m}, {"i", i}, {"j", j}}));
        }
      for (int trial = 0; trial < 6; ++trial) {
        RS A(RationalRing{}, order), B(RationalRing{}, order);
        for (int t = 0; t < 3; ++t) {
          A.at(pos(rng)) += coeff(rng);
          B.at(pos(rng)) += coeff(rng);
        }
        o.expect(residue_evaluate(space, A, B) == evaluate_invariant(space, expanded(A, B, m)),
                 "residue random " + cell({{"g", g}, {"m", m}, {"trial", trial}}));
      }
    }
  for (int g = 1; g <= 4; ++g)
    for (int m = 0; m <= 8; ++m)
      for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q)
          for (int l = 0; l <= 8; ++l) {
            if (!(m - g + q <= l) || !(g + p - q < l)) continue;
            o.expect(sym_vanishing_check(SymProdSpace(m, g), p, q, l),
                     "vanishing " + cell({{"g", g}, {"m", m}, {"p", p}, {"q", q}, {"l", l}}));
          }
  for (int g = 1; g <= 3; ++g)
    for (int m = 0; m <= 5; ++m)
      for (int k = 0; k <= std::min(g, 2); ++k)
        for (int D = 0; D <= m + 1; ++D)
          o.expect(xi_product_slice_check(g, m, k, D), "xi-product " + cell({{"g", g}, {"m", m}, {"k", k}, {"D", D}}));
  return o;
}

Outcome closure() {
  Outcome o;
  for (int g = 2; g <= 3; ++g) {
    std::vector<RelationOracle> oracles;
    for (int n = 0; n <= 4; ++n) oracles.emplace_back(g, n);
    for (int n = 0; n <= 2; ++n) {
      const int top = 3 * g + 3 + n + 2;
      o.expect(u_derivative_closure(oracles[n + 2], oracles[n], top), "d/du " + cell({{"g", g}, {"n", n}}));
      o.expect(u2_minus_b_closure(oracles[n], oracles[n + 1], top - 2), "u^2-b " + cell({{"g", g}, {"n", n}}));
    }
  }
  return o;
}

Outcome expressibility() {
  Outcome o;
  for (int k = 0; k <= 2; ++k)
    for (int r = 2 * k; r <= 8; ++r)
      for (int s = 0; s <= 6; ++s) {
        for (auto v : {XiVariant::PLAIN, XiVariant::BETA_DIFF}) {
          const bool diff = v == XiVariant::BETA_DIFF;
          if (diff && (r < 2 * k + 1 || s < 1)) continue;
          const auto e = express_xi_in_rho(k, r, s, v);
          bool ok = e.ok;
          for (const auto& t : e.terms)
            ok = ok && t.index.t <= r - 2 * k + (diff ? 1 : 0) && t.index.r + 3 * t.index.t <= r;
          o.expect(ok, std::string(diff ? "difference " : "plain ") + cell({{"k", k}, {"r", r}, {"s", s}}));
        }
      }
  return o;
}

Outcome n_model() {
  Outcome o;
  for (int g = 2; g <= 5; ++g) {
    bool ok = true;
    try {
      NModel model(g);
      const auto h = n_model_hilbert_series(g, 3 * g + 3);
      for (int D = 0; D <= 3 * g + 3; ++D) ok = ok && static_cast<long>(model.quotient_dimension(D)) == h[D];
    } catch (const std::exception&) {
      ok = false;
    }
    o.expect(ok, cell({{"g", g}}));
  }
  NModel two(2);
  o.expect(two.quotient_dimension(0) == 1 && two.quotient_dimension(1) == 1 && two.quotient_dimension(2) == 1 &&
               two.quotient_dimension(3) == 1 && two.quotient_dimension(4) == 0,
           "g=2 dims 1,1,1,1");
  return o;
}

Outcome section_identities() {
  Outcome o;
  for (int q = 0; q <= 12; ++q)
    for (int size = 0; 2 * size <= q; ++size) o.expect(l_matrix_check(q, size), "L " + cell({{"q", q}, {"size", size}}));
  const auto rep = ekhad_checks();
  o.checked += rep.checked - 1;
  o.expect(rep.ok(), "ekhad grid: " + std::to_string(rep.failures) + " failures");
  return o;
}

Outcome xi_relations_members() {
  Outcome o;
  for (int g = 2; g <= 3; ++g)
    for (int n = 0; n <= 2; ++n) {
      RelationOracle oracle(g, n + 2);
      for (const auto& rel : xi_relations(g, n)) {
        if (rel.poly.is_zero()) continue;
        o.expect(oracle.ordinary_slice(rel.total_degree()).contains(rel.poly),
                 cell({{"g", g}, {"n", n}, {"family", rel.family}, {"index", rel.index}}));
      }
    }
  o.expect(simple_form_check(2, 2), "simple form g=2 n=2");
  o.expect(simple_form_check(3, 2), "simple form g=3 n=2");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"dimension counts agree", dims},
      {"relation oracle equals I^g_n", main_theorem},
      {"equivariant classes are relations", equivariant},
      {"xi cross-validation", xi_cross},
      {"symmetric-product engine", sympow},
      {"closure of relation slices", closure},
      {"xi in terms of rho", expressibility},
      {"N-model Hilbert series", n_model},
      {"L-matrix and recurrences", section_identities},
      {"xi relations in the oracle; simple forms", xi_relations_members},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << o.checked
              << " checks, " << static_cast<int>(secs * 1000) << " ms)";
    if (!o.pass) {
      std::cout << ": " << o.failures.size() << " failing:";
      for (const auto& f : o.failures) std::cout << " [" << f << "]";
      ++failed;
    }
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
