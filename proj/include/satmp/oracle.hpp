#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satmp/formula.hpp"

namespace satmp {

// Complete enumeration over <= 30 variables. Assignments are bitmasks with
// bit v = value of 0-based variable v, enumerated in ascending (hence
// lexicographic over x_n..x_1) order.
struct SolutionSet {
  std::int32_t n_vars = 0;
  std::uint64_t count = 0;
  // Explicit solutions, present in full only when count <= cap.
  std::vector<std::uint32_t> solutions;
  bool complete_list = true;
  // ones[v] = number of solutions with variable v set to 1.
  std::vector<std::uint64_t> ones;
};

// Throws std::invalid_argument if f.n_vars > 30. cap bounds only the stored
// list; count and ones are always exact.
SolutionSet enumerate_solutions(const CnfFormula& f, std::uint64_t cap = 1u << 20);

// P(x_v = 1) under the uniform measure over solutions.
// Throws std::domain_error if the formula is unsatisfiable.
std::vector<double> exact_marginals(const SolutionSet& s);

enum class VarRole : std::int8_t { Forced0, Forced1, Free };

// Backbone of a satisfiable formula. Throws std::domain_error on UNSAT.
std::vector<VarRole> backbone(const SolutionSet& s);

struct Cluster {
  std::uint64_t size = 0;
  // Generalized coordinates: '0'/'1' where all members agree, '*' otherwise.
  std::string coordinates;
};

struct ClusterReport {
  std::int32_t q = 1;
  std::vector<Cluster> clusters;
};

// Partitions the solution list into clusters: two solutions are connected
// when their Hamming distance is <= q. Requires the complete list.
// Throws std::invalid_argument if the set's list is truncated.
ClusterReport cluster_solutions(const SolutionSet& s, std::int32_t q = 1);

inline Assignment decode_assignment(std::uint32_t mask, std::int32_t n_vars) {
  Assignment a(n_vars);
  for (std::int32_t v = 0; v < n_vars; ++v)
    a[v] = (mask >> v) & 1u ? VarState::One : VarState::Zero;
  return a;
}

}  // namespace satmp
