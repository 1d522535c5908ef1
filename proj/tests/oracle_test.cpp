#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "satmp/generate.hpp"
#include "satmp/oracle.hpp"
#include "support.hpp"

using namespace satmp;
using namespace satmp::test;

TEST_CASE("example formula enumeration") {
  CnfFormula f = example_formula();
  SolutionSet s = enumerate_solutions(f);
  CHECK(s.count == 17);
  CHECK(s.complete_list);
  CHECK(s.solutions.size() == 17);
  for (std::uint32_t mask : s.solutions) CHECK(naive_satisfied(f, mask));

  std::vector<double> mu = exact_marginals(s);
  CHECK(mu[4] == doctest::Approx(1.0));        // the unit clause pins x5
  CHECK(mu[2] == doctest::Approx(5.0 / 17));
  CHECK(mu[0] == doctest::Approx(10.0 / 17));
  CHECK(mu[1] == doctest::Approx(9.0 / 17));
  CHECK(mu[3] == doctest::Approx(12.0 / 17));
  CHECK(mu[5] == doctest::Approx(10.0 / 17));

  std::vector<VarRole> roles = backbone(s);
  CHECK(roles[4] == VarRole::Forced1);
  for (std::int32_t v : {0, 1, 2, 3, 5}) CHECK(roles[v] == VarRole::Free);

  ClusterReport cr = cluster_solutions(s, 1);
  REQUIRE(cr.clusters.size() == 1);
  CHECK(cr.clusters[0].size == 17);
}

TEST_CASE("two separated solutions form two clusters") {
  SolutionSet s = enumerate_solutions(two_cluster_formula());
  CHECK(s.count == 2);
  ClusterReport cr = cluster_solutions(s, 1);
  REQUIRE(cr.clusters.size() == 2);
  std::vector<std::string> coords{cr.clusters[0].coordinates,
                                  cr.clusters[1].coordinates};
  std::sort(coords.begin(), coords.end());
  CHECK(coords[0] == "01");
  CHECK(coords[1] == "10");
  CHECK(cr.clusters[0].size == 1);
  CHECK(cr.clusters[1].size == 1);

  // At radius 2 the solutions merge and both variables become stars.
  ClusterReport wide = cluster_solutions(s, 2);
  REQUIRE(wide.clusters.size() == 1);
  CHECK(wide.clusters[0].coordinates == "**");
  CHECK(wide.q == 2);
}

TEST_CASE("one clause yields one free cluster") {
  SolutionSet s = enumerate_solutions(single_clause_formula());
  CHECK(s.count == 3);
  ClusterReport cr = cluster_solutions(s, 1);
  REQUIRE(cr.clusters.size() == 1);
  CHECK(cr.clusters[0].size == 3);
  CHECK(cr.clusters[0].coordinates == "**");
}

TEST_CASE("unsatisfiable input") {
  SolutionSet s = enumerate_solutions(unsat_pair());
  CHECK(s.count == 0);
  CHECK_THROWS_AS(exact_marginals(s), std::domain_error);
  CHECK_THROWS_AS(backbone(s), std::domain_error);
  ClusterReport cr = cluster_solutions(s, 1);
  CHECK(cr.clusters.empty());
}

TEST_CASE("solution list capping") {
  CnfFormula f = make_formula(12, {{1, 2}});
  SolutionSet s = enumerate_solutions(f, /*cap=*/16);
  CHECK(s.count == 3 * 1024);
  CHECK_FALSE(s.complete_list);
  CHECK(s.solutions.size() == 16);
  CHECK(s.ones[0] == 2 * 1024);  // exact despite the cap
  CHECK_THROWS_AS(cluster_solutions(s, 1), std::invalid_argument);
}

TEST_CASE("size limit enforced") {
  CnfFormula f;
  f.n_vars = 31;
  CHECK_THROWS_AS(enumerate_solutions(f), std::invalid_argument);
}

TEST_CASE("matches an independent enumerator on random formulas") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::int32_t n = 4 + static_cast<std::int32_t>(seed % 9);
    CnfFormula f = generate_random_ksat(
        {.n_vars = n,
         .n_clauses = static_cast<std::int32_t>((seed % 4 + 1) * n / 2),
         .k = 3,
         .seed = 7000 + seed});
    SolutionSet s = enumerate_solutions(f);
    CHECK(s.count == naive_count(f));
    for (std::int32_t v = 0; v < n; ++v) CHECK(s.ones[v] == naive_ones(f, v));
  }
}

TEST_CASE("tree oracle agrees with enumeration") {
  int unsat_seen = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CnfFormula f = generate_random_tree_formula(4 + seed % 15, 3, 8200 + seed);
    bool expected = enumerate_solutions(f).count > 0;
    CHECK(tree_satisfiable(f) == expected);
    unsat_seen += !expected;
  }
  CHECK(unsat_seen > 0);  // the corpus exercises both verdicts
}
