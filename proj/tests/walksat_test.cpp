#include "doctest.h"
#include "satmp/generate.hpp"
#include "satmp/walksat.hpp"
#include "support.hpp"

using namespace satmp;
using namespace satmp::test;

TEST_CASE("solves the fixtures") {
  for (const CnfFormula& f : {example_formula(), chain_formula(),
                              single_clause_formula(), two_cluster_formula()}) {
    SearchOutcome out = walksat(f, {.max_flips = 10000, .seed = 3});
    REQUIRE(out.status == SearchStatus::Sat);
    CHECK(out.assignment.is_complete());
    CHECK(satisfies(f, out.assignment));
    CHECK(out.best_cost_seen == 0);
  }
}

TEST_CASE("gives up on unsatisfiable input") {
  SearchOutcome out = walksat(unsat_pair(), {.max_flips = 500, .seed = 1});
  CHECK(out.status == SearchStatus::GiveUp);
  CHECK(out.best_cost_seen >= 1);
  CHECK(out.flips_used == 500);

  SearchOutcome retried =
      walksat(unsat_pair(), {.max_flips = 500, .max_restarts = 2, .seed = 1});
  CHECK(retried.status == SearchStatus::GiveUp);
  CHECK(retried.flips_used == 1500);  // budget per try, accumulated
}

TEST_CASE("deterministic per seed") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 200, .n_clauses = 700, .k = 3, .seed = 6});
  WalksatParams p{.max_flips = 200000, .seed = 77};
  SearchOutcome a = walksat(f, p);
  SearchOutcome b = walksat(f, p);
  CHECK(a.status == b.status);
  CHECK(a.flips_used == b.flips_used);
  CHECK(a.assignment.to_string() == b.assignment.to_string());
}

TEST_CASE("noise extremes still search") {
  CnfFormula f = generate_random_ksat(
      {.n_vars = 50, .n_clauses = 100, .k = 3, .seed = 12});
  for (double noise : {0.0, 1.0}) {
    SearchOutcome out = walksat(f, {.max_flips = 500000, .noise = noise, .seed = 9});
    CHECK(out.status == SearchStatus::Sat);
  }
}

TEST_CASE("variables outside every clause still get values") {
  CnfFormula f = make_formula(4, {{1, 2}});
  SearchOutcome out = walksat(f, {.max_flips = 100, .seed = 2});
  REQUIRE(out.status == SearchStatus::Sat);
  CHECK(out.assignment.is_complete());
}

TEST_CASE("easy density is solved reliably") {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CnfFormula f = generate_random_ksat(
        {.n_vars = 1000, .n_clauses = 3000, .k = 3, .seed = 4000 + seed});
    SearchOutcome out = walksat(f, {.max_flips = 2'000'000, .seed = seed});
    if (out.status == SearchStatus::Sat) {
      REQUIRE(satisfies(f, out.assignment));
      ++solved;
    }
  }
  CHECK(solved >= 99);
}
