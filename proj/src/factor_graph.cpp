#include "satmp/factor_graph.hpp"

#include <numeric>
#include <stdexcept>

namespace satmp {

FactorGraph build_factor_graph(const CnfFormula& f) {
  FactorGraph g;
  g.n_vars = f.n_vars;
  const std::int32_t m = f.n_clauses();

  std::int64_t n_edges = 0;
  for (const Clause& c : f.clauses) n_edges += static_cast<std::int64_t>(c.literals.size());
  if (n_edges > INT32_MAX) throw std::invalid_argument("factor graph: too many edges");

  g.clause_begin.reserve(m + 1);
  g.edge_var.reserve(n_edges);
  g.edge_coupling.reserve(n_edges);
  g.edge_clause.reserve(n_edges);

  g.clause_begin.push_back(0);
  for (std::int32_t c = 0; c < m; ++c) {
    for (const Literal& l : f.clauses[c].literals) {
      if (l.var < 1 || l.var > f.n_vars)
        throw std::invalid_argument("factor graph: variable " + std::to_string(l.var) +
                                    " out of range");
      if (l.coupling != -1 && l.coupling != +1)
        throw std::invalid_argument("factor graph: coupling must be -1 or +1");
      g.edge_var.push_back(l.var - 1);
      g.edge_coupling.push_back(l.coupling);
      g.edge_clause.push_back(c);
    }
    g.clause_begin.push_back(static_cast<std::int32_t>(g.edge_var.size()));
  }

  // Variable adjacency, V_+ edges first within each variable.
  std::vector<std::int32_t> pos_count(g.n_vars, 0), neg_count(g.n_vars, 0);
  for (std::int32_t e = 0; e < g.n_edges(); ++e) {
    if (g.edge_coupling[e] < 0)
      ++pos_count[g.edge_var[e]];
    else
      ++neg_count[g.edge_var[e]];
  }
  g.var_begin.assign(g.n_vars + 1, 0);
  g.var_pos_end.assign(g.n_vars, 0);
  for (std::int32_t v = 0; v < g.n_vars; ++v) {
    g.var_begin[v + 1] = g.var_begin[v] + pos_count[v] + neg_count[v];
    g.var_pos_end[v] = g.var_begin[v] + pos_count[v];
  }
  g.var_edges.assign(g.n_edges(), 0);
  std::vector<std::int32_t> pos_fill(g.n_vars, 0), neg_fill(g.n_vars, 0);
  for (std::int32_t e = 0; e < g.n_edges(); ++e) {
    std::int32_t v = g.edge_var[e];
    if (g.edge_coupling[e] < 0)
      g.var_edges[g.var_begin[v] + pos_fill[v]++] = e;
    else
      g.var_edges[g.var_pos_end[v] + neg_fill[v]++] = e;
  }
  return g;
}

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::int32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns false if x and y were already connected.
  bool unite(std::int32_t x, std::int32_t y) {
    std::int32_t rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent[rx] = ry;
    return true;
  }
};

}  // namespace

bool FactorGraph::is_forest() const {
  // Nodes: variables [0, n_vars), clauses [n_vars, n_vars + n_clauses).
  UnionFind uf(n_vars + n_clauses());
  for (std::int32_t e = 0; e < n_edges(); ++e)
    if (!uf.unite(edge_var[e], n_vars + edge_clause[e])) return false;
  return true;
}

}  // namespace satmp
