#include "satmp/oracle.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace satmp {

SolutionSet enumerate_solutions(const CnfFormula& f, std::uint64_t cap) {
  if (f.n_vars > 30)
    throw std::invalid_argument("enumerate_solutions: more than 30 variables");

  // Clause c is satisfied by assignment x iff (x & pos[c]) != 0 or
  // (~x & neg[c]) != 0.
  const std::size_t m = f.clauses.size();
  std::vector<std::uint32_t> pos(m, 0), neg(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (const Literal& l : f.clauses[c].literals) {
      std::uint32_t bit = 1u << (l.var - 1);
      if (l.coupling < 0)
        pos[c] |= bit;
      else
        neg[c] |= bit;
    }
  }

  SolutionSet s;
  s.n_vars = f.n_vars;
  s.ones.assign(f.n_vars, 0);
  const std::uint64_t total = 1ull << f.n_vars;
  for (std::uint64_t xi = 0; xi < total; ++xi) {
    const auto x = static_cast<std::uint32_t>(xi);
    bool sat = true;
    for (std::size_t c = 0; c < m; ++c) {
      if ((x & pos[c]) == 0 && (~x & neg[c]) == 0) {
        sat = false;
        break;
      }
    }
    if (!sat) continue;
    ++s.count;
    if (s.count <= cap)
      s.solutions.push_back(x);
    else
      s.complete_list = false;
    for (std::uint32_t bits = x; bits != 0; bits &= bits - 1)
      ++s.ones[std::countr_zero(bits)];
  }
  return s;
}

std::vector<double> exact_marginals(const SolutionSet& s) {
  if (s.count == 0) throw std::domain_error("exact_marginals: unsatisfiable formula");
  std::vector<double> mu(s.n_vars);
  for (std::int32_t v = 0; v < s.n_vars; ++v)
    mu[v] = static_cast<double>(s.ones[v]) / static_cast<double>(s.count);
  return mu;
}

std::vector<VarRole> backbone(const SolutionSet& s) {
  if (s.count == 0) throw std::domain_error("backbone: unsatisfiable formula");
  std::vector<VarRole> roles(s.n_vars);
  for (std::int32_t v = 0; v < s.n_vars; ++v) {
    if (s.ones[v] == 0)
      roles[v] = VarRole::Forced0;
    else if (s.ones[v] == s.count)
      roles[v] = VarRole::Forced1;
    else
      roles[v] = VarRole::Free;
  }
  return roles;
}

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::int32_t x, std::int32_t y) { parent[find(x)] = find(y); }
};

}  // namespace

ClusterReport cluster_solutions(const SolutionSet& s, std::int32_t q) {
  if (!s.complete_list)
    throw std::invalid_argument("cluster_solutions: solution list is truncated");
  const std::size_t n = s.solutions.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::popcount(s.solutions[i] ^ s.solutions[j]) <= q)
        uf.unite(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));

  ClusterReport rep;
  rep.q = q;
  std::vector<std::int32_t> root_cluster(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::int32_t r = uf.find(static_cast<std::int32_t>(i));
    std::int32_t ci = root_cluster[r];
    if (ci < 0) {
      ci = static_cast<std::int32_t>(rep.clusters.size());
      root_cluster[r] = ci;
      rep.clusters.push_back(Cluster{0, std::string(s.n_vars, '?')});
    }
    Cluster& cl = rep.clusters[ci];
    ++cl.size;
    for (std::int32_t v = 0; v < s.n_vars; ++v) {
      char bit = (s.solutions[i] >> v) & 1u ? '1' : '0';
      if (cl.coordinates[v] == '?')
        cl.coordinates[v] = bit;
      else if (cl.coordinates[v] != bit)
        cl.coordinates[v] = '*';
    }
  }
  return rep;
}

}  // namespace satmp
