#include "satmp/wp.hpp"

#include <numeric>

#include "satmp/rng.hpp"

namespace satmp {

namespace {

// Live edges: active clause, unfixed variable.
std::vector<std::int32_t> live_edges(const DecimationState& st) {
  const FactorGraph& g = st.graph();
  std::vector<std::int32_t> edges;
  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    if (!st.clause_active(c)) continue;
    for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e)
      if (!st.var_fixed(g.edge_var[e])) edges.push_back(e);
  }
  return edges;
}

// Signed warning sum of variable j over live incident edges: warnings from
// un-negated occurrences (pushing x_j to 1) count +1, negated ones -1.
// h_{j->a} = sum minus a's own contribution; H_j = the full sum.
std::int32_t signed_sum(const DecimationState& st, const WarningState& w,
                        std::int32_t j) {
  const FactorGraph& g = st.graph();
  std::int32_t s = 0;
  for (std::int32_t e : g.pos_edges_of_var(j))
    if (st.clause_active(g.edge_clause[e])) s += w.u[e];
  for (std::int32_t e : g.neg_edges_of_var(j))
    if (st.clause_active(g.edge_clause[e])) s -= w.u[e];
  return s;
}

}  // namespace

std::uint8_t wp_update_edge(const DecimationState& st, const WarningState& w,
                            std::int32_t edge) {
  const FactorGraph& g = st.graph();
  const std::int32_t c = g.edge_clause[edge];
  const std::int32_t i = g.edge_var[edge];
  for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
    const std::int32_t j = g.edge_var[e];
    if (j == i || st.var_fixed(j)) continue;
    const std::int32_t h = signed_sum(st, w, j) -
                           (g.edge_coupling[e] < 0 ? w.u[e] : -w.u[e]);
    // theta(h * J): the other variable must be pushed toward violating c.
    if (h * g.edge_coupling[e] <= 0) return 0;
  }
  return 1;
}

std::pair<ConvergenceReport, WarningState> run_wp(const DecimationState& st,
                                                  const WpConfig& cfg) {
  const FactorGraph& g = st.graph();
  WarningState w;
  w.u.assign(g.n_edges(), 0);
  Rng init_rng = Rng(cfg.seed).derive(0);
  Rng sweep_rng = Rng(cfg.seed).derive(1);

  std::vector<std::int32_t> edges = live_edges(st);
  for (std::int32_t e : edges) w.u[e] = init_rng.coin();

  // Incremental signed sums make each edge update O(clause width).
  std::vector<std::int32_t> sum(g.n_vars, 0);
  for (std::int32_t e : edges) {
    if (g.edge_coupling[e] < 0)
      sum[g.edge_var[e]] += w.u[e];
    else
      sum[g.edge_var[e]] -= w.u[e];
  }

  ConvergenceReport rep;
  for (std::int32_t t = 1; t <= cfg.t_max; ++t) {
    sweep_rng.shuffle(edges);
    bool changed = false;
    for (std::int32_t edge : edges) {
      const std::int32_t c = g.edge_clause[edge];
      const std::int32_t i = g.edge_var[edge];
      std::uint8_t u_new = 1;
      for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
        const std::int32_t j = g.edge_var[e];
        if (j == i || st.var_fixed(j)) continue;
        const std::int32_t h =
            sum[j] - (g.edge_coupling[e] < 0 ? w.u[e] : -w.u[e]);
        if (h * g.edge_coupling[e] <= 0) {
          u_new = 0;
          break;
        }
      }
      if (u_new != w.u[edge]) {
        changed = true;
        const std::int32_t d = static_cast<std::int32_t>(u_new) - w.u[edge];
        sum[i] += g.edge_coupling[edge] < 0 ? d : -d;
        w.u[edge] = u_new;
      }
    }
    rep.sweeps = t;
    rep.residual = changed ? 1 : 0;
    if (!changed) {
      rep.status = RunStatus::Converged;
      return {rep, std::move(w)};
    }
  }
  rep.status = RunStatus::Unconverged;
  return {rep, std::move(w)};
}

FieldSummary local_fields(const DecimationState& st, const WarningState& w) {
  const FactorGraph& g = st.graph();
  FieldSummary fs;
  fs.H.assign(g.n_vars, 0);
  fs.c.assign(g.n_vars, 0);
  for (std::int32_t v = 0; v < g.n_vars; ++v) {
    if (st.var_fixed(v)) continue;
    std::int32_t plus = 0, minus = 0;
    for (std::int32_t e : g.pos_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) plus += w.u[e];
    for (std::int32_t e : g.neg_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) minus += w.u[e];
    fs.H[v] = plus - minus;
    fs.c[v] = (plus > 0 && minus > 0) ? 1 : 0;
  }
  return fs;
}

WidResult wid_solve(const FactorGraph& g, const WidConfig& cfg) {
  const bool forest = g.is_forest();
  DecimationState st(g);
  WidResult res;
  Rng free_rng = Rng(cfg.seed).derive(0x77);

  if (st.contradiction()) {
    res.status = forest ? WidStatus::Unsat : WidStatus::ProbablyUnsat;
    return res;
  }

  while (st.n_unfixed_vars() > 0) {
    if (st.n_active_clauses() == 0) {
      // Free variables only; any values work.
      for (std::int32_t v = 0; v < g.n_vars; ++v)
        if (!st.var_fixed(v))
          st.fix_and_clean(v, cfg.random_free_choice ? free_rng.coin() : true);
      break;
    }
    ++res.rounds;
    WpConfig wp_cfg{cfg.t_max, Rng(cfg.seed).derive(res.rounds).seed()};
    auto [rep, w] = run_wp(st, wp_cfg);
    res.total_sweeps += rep.sweeps;
    if (rep.status != RunStatus::Converged) {
      res.status = WidStatus::Unconverged;
      return res;
    }
    FieldSummary fs = local_fields(st, w);
    for (std::int32_t v = 0; v < g.n_vars; ++v) {
      if (fs.c[v]) {
        res.status = forest ? WidStatus::Unsat : WidStatus::ProbablyUnsat;
        return res;
      }
    }
    bool any_nonzero = false;
    for (std::int32_t v = 0; v < g.n_vars; ++v) {
      if (st.var_fixed(v) || fs.H[v] == 0) continue;
      any_nonzero = true;
      st.fix_and_clean(v, fs.H[v] > 0);
      if (st.contradiction()) {
        res.status = forest ? WidStatus::Unsat : WidStatus::ProbablyUnsat;
        return res;
      }
    }
    if (!any_nonzero) {
      std::int32_t v = -1;
      if (cfg.random_free_choice) {
        std::int32_t k =
            static_cast<std::int32_t>(free_rng.below(st.n_unfixed_vars()));
        for (std::int32_t u = 0; u < g.n_vars; ++u)
          if (!st.var_fixed(u) && k-- == 0) {
            v = u;
            break;
          }
        st.fix_and_clean(v, free_rng.coin());
      } else {
        for (std::int32_t u = 0; u < g.n_vars; ++u)
          if (!st.var_fixed(u)) {
            v = u;
            break;
          }
        st.fix_and_clean(v, true);
      }
      if (st.contradiction()) {
        res.status = forest ? WidStatus::Unsat : WidStatus::ProbablyUnsat;
        return res;
      }
    }
  }
  res.status = WidStatus::Sat;
  res.assignment = st.assignment();
  return res;
}

}  // namespace satmp
