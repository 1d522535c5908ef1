#include "doctest.h"
#include "satmp/factor_graph.hpp"
#include "satmp/generate.hpp"
#include "satmp/sid.hpp"
#include "support.hpp"

using namespace satmp;
using namespace satmp::test;

TEST_CASE("fixtures solve through the decimation path") {
  for (const CnfFormula& f : {chain_formula(), example_formula(),
                              single_clause_formula(), two_cluster_formula()}) {
    SidResult r = sid_solve(build_factor_graph(f), {.seed = 1});
    REQUIRE(r.status == SidStatus::Sat);
    CHECK(r.assignment.is_complete());
    CHECK(satisfies(f, r.assignment));
  }
}

TEST_CASE("contradictory input is probably unsat") {
  SidResult r = sid_solve(build_factor_graph(unsat_pair()), {.seed = 1});
  CHECK(r.status == SidStatus::ProbablyUnsat);
}

TEST_CASE("iteration starvation reports non-convergence") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 500, .n_clauses = 2100, .k = 3, .seed = 10});
  SidResult r = sid_solve(build_factor_graph(f), {.t_max = 2, .seed = 1});
  CHECK(r.status == SidStatus::SpUnconverged);
  CHECK(r.rounds >= 1);
}

TEST_CASE("a starved residual search gives up") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 300, .n_clauses = 900, .k = 3, .seed = 5});
  SidConfig cfg{.seed = 2};
  cfg.walksat.max_flips = 1;
  cfg.walksat.noise = 0;
  SidResult r = sid_solve(build_factor_graph(f), cfg);
  CHECK(r.status == SidStatus::WalksatGiveUp);
  CHECK(r.walksat_flips == 1);
}

TEST_CASE("easy density hands off to the residual search immediately") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 400, .n_clauses = 1200, .k = 3, .seed = 6});
  SidResult r = sid_solve(build_factor_graph(f), {.seed = 3});
  REQUIRE(r.status == SidStatus::Sat);
  CHECK(satisfies(f, r.assignment));
  CHECK(r.rounds <= 2);  // surveys are trivial from the start
  CHECK(r.walksat_flips > 0);
  REQUIRE(!r.trace.empty());
  CHECK(r.trace.front().max_eta <= 1e-3);
}

TEST_CASE("hard density decimates before finishing") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 2000, .n_clauses = 8200, .k = 3, .seed = 7});
  SidConfig cfg{.seed = 4};
  SidResult r = sid_solve(build_factor_graph(f), cfg);
  if (r.status == SidStatus::Sat) {
    CHECK(satisfies(f, r.assignment));
    CHECK(r.rounds > 1);
    REQUIRE(r.trace.size() >= 2);
    CHECK(r.trace.front().max_eta > 0.1);
    // Rounds shrink the residual monotonically.
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].unfixed_after <= r.trace[i - 1].unfixed_after);
      CHECK(r.trace[i].active_clauses_after <= r.trace[i - 1].active_clauses_after);
    }
    for (const SidRound& row : r.trace) {
      CHECK(row.sp_sweeps > 0);
      CHECK(row.n_under + row.n_biased + row.n_balanced + row.n_mixed ==
            row.unfixed_after + row.fixed_by_bias + row.fixed_by_up);
    }
  } else {
    CHECK(r.status == SidStatus::SpUnconverged);  // honest small-size outcome
  }
}

TEST_CASE("deterministic per seed") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 800, .n_clauses = 3280, .k = 3, .seed = 9});
  FactorGraph g = build_factor_graph(f);
  SidConfig cfg{.seed = 11};
  SidResult a = sid_solve(g, cfg);
  SidResult b = sid_solve(g, cfg);
  CHECK(a.status == b.status);
  CHECK(a.rounds == b.rounds);
  CHECK(a.total_sp_sweeps == b.total_sp_sweeps);
  CHECK(a.walksat_flips == b.walksat_flips);
  CHECK(a.assignment.to_string() == b.assignment.to_string());
}
