#include <higgsrel/higgsrel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace higgsrel;
using json = nlohmann::ordered_json;

namespace {

constexpr int EXIT_PASS = 0;
constexpr int EXIT_MATH = 1;
constexpr int EXIT_USAGE = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  int lo = 0, hi = 0;
};

// "3" or "2..4", inclusive
Range parse_range(const std::string& text, const char* flag) {
  auto bad = [&] { return UsageError(std::string("bad value for ") + flag + ": '" + text + "'"); };
  auto to_int = [&](const std::string& s) {
    if (s.empty()) throw bad();
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = to_int(text);
  } else {
    r.lo = to_int(text.substr(0, dots));
    r.hi = to_int(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw UsageError(std::string("empty range for ") + flag + ": '" + text + "'");
  return r;
}

struct RunConfig {
  std::string g = "2";
  std::string n = "0";
  int max_degree = -1;  // -1: per-command default
  int order = -1;       // -1: HIGGSREL_ORDER or 12
  std::string format = "text";
  int jobs = 1;
  unsigned seed = 1;
  std::string poly;
  std::string suite = "all";

  Range g_range() const {
    auto r = parse_range(g, "--g");
    if (r.lo < 0) throw UsageError("--g must be non-negative");
    return r;
  }
  Range n_range() const {
    auto r = parse_range(n, "--n");
    if (r.lo < 0) throw UsageError("--n must be non-negative");
    return r;
  }
  int series_order() const {
    if (order >= 0) return order;
    if (const char* env = std::getenv("HIGGSREL_ORDER")) {
      auto r = parse_range(env, "HIGGSREL_ORDER");
      if (r.lo != r.hi || r.lo < 1) throw UsageError("HIGGSREL_ORDER must be a positive integer");
      return r.lo;
    }
    return 12;
  }
};

void need_moduli_genus(const Range& g) {
  if (g.lo < 2) throw UsageError("moduli-level commands need g >= 2");
}

// One unit of a sweep. Cells are pure, so they can run on any thread.
struct Cell {
  std::string suite;
  std::string name;
  bool pass = true;
  json detail = json::object();
  std::string summary;
};

using Task = std::function<Cell()>;

std::vector<Cell> run_cells(const std::vector<Task>& tasks, int jobs) {
  std::vector<Cell> out(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex err;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      out[i] = tasks[i]();
      const auto d = ++done;
      std::lock_guard<std::mutex> lock(err);
      std::cerr << "[" << d << "/" << tasks.size() << "] " << out[i].suite << " " << out[i].name
                << (out[i].pass ? " ok" : " FAILED") << "\n";
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string gn_name(int g, int n) { return "g=" + std::to_string(g) + " n=" + std::to_string(n); }

// suites

void dims_suite(const RunConfig& cfg, std::vector<Task>& tasks) {
  const auto gr = cfg.g_range(), nr = cfg.n_range();
  need_moduli_genus(gr);
  for (int g = gr.lo; g <= gr.hi; ++g)
    for (int n = nr.lo; n <= nr.hi; ++n)
      tasks.push_back([g, n] {
        const auto rep = dim_report(g, n);
        Cell c{"dims", gn_name(g, n), rep.equal()};
        c.detail["per_degree"] = rep.quotient.per_degree;
        c.detail["dim_quotient"] = rep.quotient.total;
        c.detail["region_count"] = rep.region;
        c.detail["region_count_closed_form"] = rep.region_closed;
        c.detail["dim_HI"] = rep.hi;
        c.detail["dim_HI_closed_form"] = rep.hi_closed;
        std::ostringstream s;
        s << "quotient=" << rep.quotient.total << " region=" << rep.region << " dim_HI=" << rep.hi;
        c.summary = s.str();
        return c;
      });
}

void main_suite(const RunConfig& cfg, std::vector<Task>& tasks) {
  const auto gr = cfg.g_range(), nr = cfg.n_range();
  need_moduli_genus(gr);
  for (int g = gr.lo; g <= gr.hi; ++g)
    for (int n = nr.lo; n <= nr.hi; ++n) {
      const int dmax = cfg.max_degree >= 0 ? cfg.max_degree : 3 * g + 3 + n;
      tasks.push_back([g, n, dmax] {
        const auto rep = check_main_theorem(g, n, dmax);
        Cell c{"main", gn_name(g, n), rep.ok};
        auto degs = json::array();
        for (const auto& d : rep.degrees)
          degs.push_back({{"degree", d.degree},
                          {"oracle_dim", d.oracle_dimension},
                          {"ideal_dim", d.ideal_dimension},
                          {"equal", d.equal}});
        c.detail["max_degree"] = dmax;
        c.detail["degrees"] = std::move(degs);
        c.summary = "degrees 0.." + std::to_string(dmax) + (rep.ok ? " all equal" : " MISMATCH");
        return c;
      });
    }
}

Cell count_cell(std::string suite, std::string name, long checked, long failures) {
  Cell c{std::move(suite), std::move(name), failures == 0};
  c.detail["checked"] = checked;
  c.detail["failures"] = failures;
  c.summary = std::to_string(checked) + " checked, " + std::to_string(failures) + " failed";
  return c;
}

void identities_suite(const RunConfig&, std::vector<Task>& tasks) {
  tasks.push_back([] {
    long checked = 0, failures = 0;
    for (int g = 1; g <= 3; ++g)
      for (int k = 0; k <= 2; ++k)
        for (int r = 2 * k; r <= 5; ++r)
          for (int s = 0; s <= 5; ++s, ++checked)
            if (!xi_product_formula_check(g, k, r, s)) ++failures;
    return count_cell("identities", "xi-product-formula", checked, failures);
  });
  tasks.push_back([] {
    long checked = 0, failures = 0;
    for (int g = 1; g <= 4; ++g)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l, ++checked)
          if (!stability_check(g, k, l)) ++failures;
    return count_cell("identities", "stability", checked, failures);
  });
  tasks.push_back([] {
    long checked = 0, failures = 0;
    for (int q = 0; q <= 12; ++q)
      for (int size = 0; 2 * size <= q; ++size, ++checked)
        if (!l_matrix_check(q, size)) ++failures;
    return count_cell("identities", "l-matrix", checked, failures);
  });
  tasks.push_back([] {
    const auto rep = ekhad_checks();
    Cell c = count_cell("identities", "ekhad", rep.checked, rep.failures);
    c.detail["skipped"] = rep.skipped;
    c.summary += ", " + std::to_string(rep.skipped) + " skipped (zero denominator)";
    return c;
  });
}

void series_suite(const RunConfig& cfg, std::vector<Task>& tasks) {
  const auto gr = cfg.g_range();
  const int order = cfg.series_order();
  for (int g = gr.lo; g <= gr.hi; ++g)
    for (int k = 0; k <= 3; ++k)
      tasks.push_back([g, k, order] {
        long checked = 0, failures = 0;
        for (int r = 0; r <= 10; ++r, ++checked)
          if (xi_via_phi(g, k, r) != xi(g, k, r)) ++failures;
        const bool ode = ode_check_F0(g, k, order);
        const bool biv = bivariate_identity_check(g, k, order);
        checked += 2;
        failures += !ode + !biv;
        Cell c = count_cell("series", "g=" + std::to_string(g) + " k=" + std::to_string(k), checked, failures);
        c.detail["order"] = order;
        c.detail["ode"] = ode;
        c.detail["bivariate"] = biv;
        return c;
      });
}

void sympow_suite(const RunConfig& cfg, std::vector<Task>& tasks) {
  const auto gr = cfg.g_range();
  const unsigned seed = cfg.seed;
  for (int g = gr.lo; g <= gr.hi; ++g) {
    tasks.push_back([g, seed] {
      // every cell draws from its own stream so the result does not depend on --jobs
      std::mt19937 rng(seed * 7919u + static_cast<unsigned>(g));
      std::uniform_int_distribution<int> coeff(-5, 5);
      long checked = 0, failures = 0;
      const int order = 10;
      for (int m = 0; m <= 8; ++m)
        for (int trial = 0; trial < 4; ++trial, ++checked) {
          std::vector<Rational> a(order), b(order);
          for (int i = 0; i < order; ++i) {
            a[i] = coeff(rng);
            b[i] = coeff(rng);
          }
          const auto A = Series<RationalRing>::from_coefficients(RationalRing{}, order, a);
          const auto B = Series<RationalRing>::from_coefficients(RationalRing{}, order, b);
          // the same pairing from the expanded class exp(theta B) A
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
          const SymProdSpace space(m, g);
          if (residue_evaluate(space, A, B) != evaluate_invariant(space, (e * ap).homogeneous_part(2 * m)))
            ++failures;
        }
      return count_cell("sympow", "residue g=" + std::to_string(g), checked, failures);
    });
    tasks.push_back([g] {
      long checked = 0, failures = 0;
      for (int m = 0; m <= 8; ++m)
        for (int p = 0; p <= 4; ++p)
          for (int q = 0; q <= 4; ++q)
            for (int l = 0; l <= 8; ++l) {
              if (!(m - g + q <= l) || !(g + p - q < l)) continue;
              ++checked;
              if (!sym_vanishing_check(SymProdSpace(m, g), p, q, l)) ++failures;
            }
      return count_cell("sympow", "vanishing g=" + std::to_string(g), checked, failures);
    });
    tasks.push_back([g] {
      long checked = 0, failures = 0;
      for (int m = 0; m <= 5; ++m)
        for (int k = 0; k <= std::min(g, 2); ++k)
          for (int D = 0; D <= m + 1; ++D, ++checked)
            if (!xi_product_slice_check(g, m, k, D)) ++failures;
      return count_cell("sympow", "xi-product g=" + std::to_string(g), checked, failures);
    });
  }
}

void emit(const RunConfig& cfg, const std::string& command, const std::vector<Cell>& cells, bool pass) {
  if (cfg.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["suite"] = cfg.suite;
    auto arr = json::array();
    for (const auto& c : cells)
      arr.push_back({{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["cells"] = std::move(arr);
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& c : cells)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.suite << " " << c.name << ": " << c.summary << "\n";
  std::cout << (pass ? "all passed" : "FAILURES") << " (" << cells.size() << " cells)\n";
}

int cmd_verify(const RunConfig& cfg) {
  static const std::vector<std::string> known{"dims", "main", "identities", "series", "sympow", "all"};
  if (std::find(known.begin(), known.end(), cfg.suite) == known.end())
    throw UsageError("unknown suite '" + cfg.suite + "'");
  const bool all = cfg.suite == "all";
  std::vector<Task> tasks;
  if (all || cfg.suite == "dims") dims_suite(cfg, tasks);
  if (all || cfg.suite == "main") main_suite(cfg, tasks);
  if (all || cfg.suite == "identities") identities_suite(cfg, tasks);
  if (all || cfg.suite == "series") series_suite(cfg, tasks);
  if (all || cfg.suite == "sympow") sympow_suite(cfg, tasks);
  const auto cells = run_cells(tasks, cfg.jobs);
  const bool pass = std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.pass; });
  emit(cfg, "verify", cells, pass);
  return pass ? EXIT_PASS : EXIT_MATH;
}

int cmd_gen(const RunConfig& cfg) {
  const auto gr = cfg.g_range(), nr = cfg.n_range();
  if (cfg.max_degree < 0) throw UsageError("gen needs --max-degree");
  json all = json::array();
  for (int g = gr.lo; g <= gr.hi; ++g)
    for (int n = nr.lo; n <= nr.hi; ++n) {
      const auto gens = ideal_generators(g, n, cfg.max_degree);
      if (cfg.format == "json") {
        auto arr = json::array();
        for (const auto& gen : gens) {
          json e;
          if (gen.index) {
            e["c"] = gen.c;
            e["r"] = gen.index->r;
            e["s"] = gen.index->s;
            e["t"] = gen.index->t;
          } else {
            e["gamma_power"] = g + 1;
          }
          e["degree"] = gen.total_degree;
          e["poly"] = to_string(gen.poly);
          arr.push_back(std::move(e));
        }
        all.push_back({{"g", g}, {"n", n}, {"max_degree", cfg.max_degree}, {"generators", std::move(arr)}});
        continue;
      }
      std::cout << "# " << gn_name(g, n) << " max-degree=" << cfg.max_degree << "\n";
      for (const auto& gen : gens) {
        std::cout << "D=" << gen.total_degree << " ";
        if (gen.index)
          std::cout << "(c=" << gen.c << ",r=" << gen.index->r << ",s=" << gen.index->s << ",t=" << gen.index->t << ")";
        else
          std::cout << "(g3^" << g + 1 << ")";
        std::cout << ": " << to_string(gen.poly) << "\n";
      }
    }
  if (cfg.format == "json") std::cout << json{{"schema", 1}, {"command", "gen"}, {"ideals", all}}.dump(2) << "\n";
  return EXIT_PASS;
}

int cmd_check(const RunConfig& cfg) {
  const auto gr = cfg.g_range(), nr = cfg.n_range();
  if (gr.lo != gr.hi || nr.lo != nr.hi) throw UsageError("check takes a single --g and --n");
  need_moduli_genus(gr);
  if (cfg.poly.empty()) throw UsageError("check needs --poly");
  const GradedPoly p = parse_poly(cfg.poly, equivariant_table());
  const auto rep = is_equivariant_relation(gr.lo, nr.lo, p);
  if (cfg.format == "json") {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    std::cout << "poly: " << rep.poly << "\n" << gn_name(rep.g, rep.n) << " degree=" << rep.degree << "\n";
    for (const auto& c : rep.components) {
      std::cout << "  " << c.component.kind_name();
      if (!c.component.is_min()) std::cout << " d=" << c.component.d << " m=" << c.component.m;
      std::cout << ": " << (c.vanishes ? "vanishes" : "nonzero");
      if (c.witness)
        std::cout << " (u^" << *c.witness_u_power << " paired with eta^" << c.witness->eta << " theta^"
                  << c.witness->theta << " gives " << to_string(c.witness->value) << ")";
      std::cout << "\n";
    }
    std::cout << "verdict: " << (rep.verdict ? "relation" : "not a relation") << "\n";
  }
  return rep.verdict ? EXIT_PASS : EXIT_MATH;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relations in the cohomology of rank-2 Higgs moduli spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--g", cfg.g, "genus, a value or a range a..b");
    sub->add_option("--n", cfg.n, "twist n, a value or a range a..b");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto* gen = app.add_subcommand("gen", "list generators of the ideal I^g_n");
  common(gen);
  gen->add_option("--max-degree", cfg.max_degree, "largest total degree")->check(CLI::NonNegativeNumber);

  auto* check = app.add_subcommand("check", "decide whether a class is an equivariant relation");
  common(check);
  check->add_option("--poly", cfg.poly, "polynomial in a, b, g3, u")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", cfg.suite, "dims | main | identities | series | sympow | all");
  verify->add_option("--max-degree", cfg.max_degree, "largest total degree for the main suite")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--order", cfg.order, "series truncation order")->check(CLI::PositiveNumber);
  verify->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "seed for sampled checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? EXIT_PASS : EXIT_USAGE;
  }

  try {
    if (*gen) return cmd_gen(cfg);
    if (*check) return cmd_check(cfg);
    return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: cannot parse polynomial: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  }
}
