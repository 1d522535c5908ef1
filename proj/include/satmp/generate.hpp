#pragma once

#include <cstdint>

#include "satmp/formula.hpp"

namespace satmp {

struct GeneratorParams {
  std::int32_t n_vars = 0;
  std::int32_t n_clauses = 0;
  std::int32_t k = 3;
  std::uint64_t seed = 0;
};

// Random k-SAT: each clause draws k distinct variables uniformly and negates
// each with a fair coin. Duplicate clauses across the formula are allowed.
// Deterministic function of (n, m, k, seed).
// Throws std::invalid_argument if k < 1 or k > n_vars.
CnfFormula generate_random_ksat(const GeneratorParams& p);

// Random tree formula: starts from one root variable; repeatedly picks an
// existing variable, attaches a new clause of width uniform in 1..k_max with
// random couplings, all its other variables fresh, until at least n_target
// variables exist. Always connected and acyclic. Deterministic per seed.
// Throws std::invalid_argument if n_target < 1, k_max < 1, or n_target >= 2
// with k_max == 1 (connected growth needs width >= 2).
CnfFormula generate_random_tree_formula(std::int32_t n_target, std::int32_t k_max,
                                        std::uint64_t seed);

}  // namespace satmp
