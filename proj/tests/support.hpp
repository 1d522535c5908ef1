#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "satmp/formula.hpp"

namespace satmp::test {

// Formula from DIMACS-style literal lists.
inline CnfFormula make_formula(std::int32_t n_vars,
                               std::initializer_list<std::vector<int>> clauses) {
  CnfFormula f;
  f.n_vars = n_vars;
  for (const auto& lits : clauses) {
    Clause c;
    for (int l : lits) c.literals.push_back(from_dimacs_lit(l));
    f.clauses.push_back(std::move(c));
  }
  return f;
}

// Six variables, six clauses, fourteen edges; 17 satisfying assignments.
inline CnfFormula example_formula() {
  return make_formula(
      6, {{1, -3}, {-1, 2, 4}, {-3, 5}, {-3, -4, 5}, {-2, 4, 6}, {5}});
}

// Forces x1 = 1 and then x2 = 1; unique solution.
inline CnfFormula chain_formula() { return make_formula(2, {{1}, {-1, 2}}); }

inline CnfFormula single_clause_formula() { return make_formula(2, {{1, 2}}); }

// Solutions 01 and 10: two clusters at flip distance 1.
inline CnfFormula two_cluster_formula() {
  return make_formula(2, {{1, 2}, {-1, -2}});
}

inline CnfFormula unsat_pair() { return make_formula(1, {{1}, {-1}}); }

// Clause-by-clause check of a bitmask assignment (bit v = variable v),
// independent of cost(). Only for n_vars small enough to enumerate.
inline bool naive_satisfied(const CnfFormula& f, std::uint32_t mask) {
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (const Literal& l : c.literals) {
      bool value = (mask >> (l.var - 1)) & 1u;
      if (value == l.satisfying_value()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

inline std::uint64_t naive_count(const CnfFormula& f) {
  std::uint64_t n = 0;
  for (std::uint32_t m = 0; m < (1u << f.n_vars); ++m) n += naive_satisfied(f, m);
  return n;
}

inline std::uint64_t naive_ones(const CnfFormula& f, std::int32_t v) {
  std::uint64_t n = 0;
  for (std::uint32_t m = 0; m < (1u << f.n_vars); ++m)
    if (((m >> v) & 1u) && naive_satisfied(f, m)) ++n;
  return n;
}

// SAT/UNSAT by dynamic programming over an acyclic clause-variable graph.
// feasible(v, skip) is the bitmask of workable values of v in its subtree
// when entered from clause `skip`: a clause below v works for value x when
// x satisfies it outright or some child variable can take its satisfying
// value, and every child subtree must admit some value at all. Linear in
// the formula size; only valid on forests.
class TreeSatOracle {
 public:
  explicit TreeSatOracle(const CnfFormula& f) : f_(f), var_clauses_(f.n_vars) {
    for (std::int32_t c = 0; c < f.n_clauses(); ++c)
      for (const Literal& l : f.clauses[c].literals)
        var_clauses_[l.var - 1].push_back(c);
  }

  bool satisfiable() {
    visited_.assign(f_.n_vars, 0);
    for (std::int32_t v = 0; v < f_.n_vars; ++v) {
      if (visited_[v]) continue;
      if (feasible(v, -1) == 0) return false;
    }
    return true;
  }

 private:
  int feasible(std::int32_t v, std::int32_t skip) {
    visited_[v] = 1;
    int mask = 3;
    for (std::int32_t c : var_clauses_[v])
      if (c != skip) mask &= clause_feasible(c, v);
    return mask;
  }

  // Bitmask of parent values under which clause c and everything below it
  // can be satisfied.
  int clause_feasible(std::int32_t c, std::int32_t parent) {
    int parent_want = 0;
    bool flexible = false;
    for (const Literal& l : f_.clauses[c].literals) {
      std::int32_t w = l.var - 1;
      int want = l.satisfying_value() ? 1 : 0;
      if (w == parent) {
        parent_want = 1 << want;
        continue;
      }
      int m = feasible(w, c);
      if (m == 0) return 0;
      if ((m >> want) & 1) flexible = true;
    }
    return flexible ? 3 : parent_want;
  }

  const CnfFormula& f_;
  std::vector<std::vector<std::int32_t>> var_clauses_;
  std::vector<char> visited_;
};

inline bool tree_satisfiable(const CnfFormula& f) {
  return TreeSatOracle(f).satisfiable();
}

}  // namespace satmp::test
