#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "satmp/bp.hpp"
#include "satmp/factor_graph.hpp"
#include "satmp/generate.hpp"
#include "satmp/oracle.hpp"
#include "satmp/simplify.hpp"
#include "support.hpp"

using namespace satmp;
using namespace satmp::test;

static constexpr double kExact = 1e-12;

TEST_CASE("chain beliefs, marginals, entropy") {
  FactorGraph g = build_factor_graph(chain_formula());
  DecimationState st(g);
  auto [rep, b] = run_bp(st, {.t_max = 100, .eps = 1e-12, .seed = 5});
  REQUIRE(rep.status == RunStatus::Converged);
  CHECK(b.delta[0] == doctest::Approx(1.0).epsilon(kExact));
  CHECK(b.delta[1] == doctest::Approx(0.5).epsilon(kExact));
  CHECK(b.delta[2] == doctest::Approx(1.0).epsilon(kExact));

  std::vector<double> mu = bp_marginals(st, b);
  CHECK(mu[0] == doctest::Approx(1.0).epsilon(kExact));
  CHECK(mu[1] == doctest::Approx(1.0).epsilon(kExact));

  EntropyReport er = bp_entropy(st, b);
  CHECK(std::abs(er.entropy) < kExact);
  CHECK(er.count == doctest::Approx(1.0).epsilon(kExact));
}

TEST_CASE("single clause beliefs, marginals, entropy") {
  FactorGraph g = build_factor_graph(single_clause_formula());
  DecimationState st(g);
  auto [rep, b] = run_bp(st, {.t_max = 100, .eps = 1e-12, .seed = 5});
  REQUIRE(rep.status == RunStatus::Converged);
  CHECK(b.delta[0] == doctest::Approx(0.5).epsilon(kExact));
  CHECK(b.delta[1] == doctest::Approx(0.5).epsilon(kExact));

  std::vector<double> mu = bp_marginals(st, b);
  CHECK(mu[0] == doctest::Approx(2.0 / 3).epsilon(kExact));
  CHECK(mu[1] == doctest::Approx(2.0 / 3).epsilon(kExact));

  EntropyReport er = bp_entropy(st, b);
  CHECK(er.entropy == doctest::Approx(std::log(3.0)).epsilon(kExact));
  CHECK(er.count == doctest::Approx(3.0).epsilon(kExact));
}

TEST_CASE("an isolated variable is worth log 2") {
  CnfFormula one = make_formula(1, {{1}});
  CnfFormula padded = make_formula(2, {{1}});
  FactorGraph g1 = build_factor_graph(one);
  FactorGraph g2 = build_factor_graph(padded);
  DecimationState a(g1), b(g2);
  auto [r1, s1] = run_bp(a, {.eps = 1e-12, .seed = 1});
  auto [r2, s2] = run_bp(b, {.eps = 1e-12, .seed = 1});
  REQUIRE(r1.status == RunStatus::Converged);
  REQUIRE(r2.status == RunStatus::Converged);
  double d = bp_entropy(b, s2).entropy - bp_entropy(a, s1).entropy;
  CHECK(d == doctest::Approx(std::log(2.0)).epsilon(kExact));

  std::vector<double> mu = bp_marginals(b, s2);
  CHECK(mu[1] == doctest::Approx(0.5).epsilon(kExact));
}

TEST_CASE("tree marginals and counts are exact") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 30 && seed <= 120; ++seed) {
    CnfFormula f = generate_random_tree_formula(5 + seed % 19, 3, 1300 + seed);
    if (f.n_vars > 25) continue;
    SolutionSet sol = enumerate_solutions(f);
    if (sol.count == 0) continue;
    FactorGraph g = build_factor_graph(f);
    DecimationState st(g);
    auto [rep, b] = run_bp(st, {.t_max = 2000, .eps = 1e-13, .seed = seed});
    REQUIRE(rep.status == RunStatus::Converged);

    EntropyReport er = bp_entropy(st, b);
    double count = static_cast<double>(sol.count);
    CHECK(std::abs(er.count - count) / count < 1e-8);

    std::vector<double> mu = bp_marginals(st, b);
    std::vector<double> exact = exact_marginals(sol);
    for (std::int32_t v = 0; v < f.n_vars; ++v)
      CHECK(std::abs(mu[v] - exact[v]) < 1e-8);
    ++checked;
  }
  CHECK(checked == 30);
}

TEST_CASE("converged beliefs reproduce themselves") {
  CnfFormula f = generate_random_tree_formula(30, 3, 77);
  FactorGraph g = build_factor_graph(f);
  DecimationState st(g);
  auto [rep, b] = run_bp(st, {.eps = 1e-13, .seed = 3});
  REQUIRE(rep.status == RunStatus::Converged);
  for (std::int32_t e = 0; e < g.n_edges(); ++e) {
    bool contradiction = false;
    double d = bp_update_edge(st, b, e, &contradiction);
    CHECK_FALSE(contradiction);
    CHECK(d == doctest::Approx(b.delta[e]).epsilon(1e-10));
  }
}

TEST_CASE("contradictions surface") {
  // Opposed units converge (unit messages are 1 by definition) but the
  // variable has vanishing one-sided products.
  FactorGraph g = build_factor_graph(unsat_pair());
  DecimationState st(g);
  auto [rep, b] = run_bp(st, {.eps = 1e-12, .seed = 1});
  REQUIRE(rep.status == RunStatus::Converged);
  CHECK_THROWS_AS(bp_marginals(st, b), std::domain_error);
  CHECK_THROWS_AS(bp_entropy(st, b), std::domain_error);

  // With a third clause hanging off the contradicted variable, the update
  // itself hits a zero normalization.
  CnfFormula f = make_formula(2, {{1}, {-1}, {1, 2}});
  FactorGraph g2 = build_factor_graph(f);
  DecimationState st2(g2);
  auto [rep2, b2] = run_bp(st2, {.t_max = 200, .eps = 1e-12, .seed = 1});
  CHECK(rep2.status == RunStatus::Contradiction);
}
