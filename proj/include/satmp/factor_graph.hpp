#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "satmp/formula.hpp"

namespace satmp {

// Bipartite factor graph of a CNF formula in flat CSR form.
//
// Edges carry dense ids assigned in clause-major order: clause c's edges are
// the contiguous range [clause_begin[c], clause_begin[c+1]), one per literal,
// in literal order. All message arrays in the propagation modules are indexed
// by these edge ids. Variables are 0-based here.
//
// V(i) is split by coupling sign: a variable's incident edge list stores the
// V_+ edges (J = -1, un-negated occurrences) first, then the V_- edges
// (J = +1), with var_pos_end marking the boundary.
struct FactorGraph {
  std::int32_t n_vars = 0;

  std::vector<std::int32_t> clause_begin;   // size n_clauses + 1
  std::vector<std::int32_t> edge_var;       // per edge: 0-based variable
  std::vector<std::int8_t> edge_coupling;   // per edge: J in {-1,+1}
  std::vector<std::int32_t> edge_clause;    // per edge: clause id

  std::vector<std::int32_t> var_begin;      // size n_vars + 1, into var_edges
  std::vector<std::int32_t> var_pos_end;    // size n_vars, V_+ / V_- boundary
  std::vector<std::int32_t> var_edges;      // edge ids

  std::int32_t n_clauses() const {
    return static_cast<std::int32_t>(clause_begin.size()) - 1;
  }
  std::int32_t n_edges() const { return static_cast<std::int32_t>(edge_var.size()); }
  std::int32_t clause_len(std::int32_t c) const {
    return clause_begin[c + 1] - clause_begin[c];
  }
  std::int32_t var_degree(std::int32_t v) const {
    return var_begin[v + 1] - var_begin[v];
  }

  // Edge ids of clause c form the contiguous range [begin, end).
  std::int32_t clause_edge_begin(std::int32_t c) const { return clause_begin[c]; }
  std::int32_t clause_edge_end(std::int32_t c) const { return clause_begin[c + 1]; }

  std::span<const std::int32_t> edges_of_var(std::int32_t v) const {
    return {var_edges.data() + var_begin[v],
            static_cast<std::size_t>(var_begin[v + 1] - var_begin[v])};
  }
  std::span<const std::int32_t> pos_edges_of_var(std::int32_t v) const {
    return {var_edges.data() + var_begin[v],
            static_cast<std::size_t>(var_pos_end[v] - var_begin[v])};
  }
  std::span<const std::int32_t> neg_edges_of_var(std::int32_t v) const {
    return {var_edges.data() + var_pos_end[v],
            static_cast<std::size_t>(var_begin[v + 1] - var_pos_end[v])};
  }

  // True when the graph is acyclic (every connected component is a tree).
  bool is_forest() const;
};

// Builds the graph; validates 1 <= var <= n_vars and coupling in {-1,+1}.
// Throws std::invalid_argument on violation.
FactorGraph build_factor_graph(const CnfFormula& f);

}  // namespace satmp
