#include "satmp/bp.hpp"

#include <cmath>
#include <stdexcept>

#include "satmp/rng.hpp"

namespace satmp {

namespace {

constexpr double kTinyFactor = 1e-12;

// Product of (1 - delta) factors that switches to log space when a factor
// drops below kTinyFactor, with exact zeros counted separately.
struct Prod {
  double lin = 1;
  double logsum = 0;
  std::int32_t zeros = 0;
  bool tiny = false;

  void mul_one_minus(double delta) {
    double f = 1 - delta;
    if (f <= 0) {
      ++zeros;
      return;
    }
    if (f < kTinyFactor) tiny = true;
    lin *= f;
    logsum += std::log(f);
  }
  bool zero() const { return zeros > 0; }
};

// a / (a + b) for two one-sided products, stable when both are tiny.
// Returns -1 when both vanish (contradiction).
double ratio_of(const Prod& a, const Prod& b) {
  if (a.zero() && b.zero()) return -1;
  if (a.zero()) return 0;
  if (b.zero()) return 1;
  if (a.tiny || b.tiny) return 1 / (1 + std::exp(b.logsum - a.logsum));
  return a.lin / (a.lin + b.lin);
}

// ln(a + b), -inf if both vanish.
double log_sum_of(const Prod& a, const Prod& b) {
  if (a.zero() && b.zero()) return -HUGE_VAL;
  if (a.zero()) return b.logsum;
  if (b.zero()) return a.logsum;
  if (a.tiny || b.tiny) {
    double hi = std::max(a.logsum, b.logsum);
    return hi + std::log1p(std::exp(std::min(a.logsum, b.logsum) - hi));
  }
  return std::log(a.lin + b.lin);
}

// Cavity products of variable j with respect to clause a (edge e = (a,j)):
// p_u over the occurrences on a's side minus a itself, p_s over the full
// opposite side. gamma_{j->a} = p_u / (p_u + p_s).
void cavity_products(const DecimationState& st, const BeliefState& b,
                     std::int32_t e, Prod& p_u, Prod& p_s) {
  const FactorGraph& g = st.graph();
  const std::int32_t j = g.edge_var[e];
  const bool a_positive = g.edge_coupling[e] < 0;
  for (std::int32_t be : g.pos_edges_of_var(j)) {
    if (!st.clause_active(g.edge_clause[be])) continue;
    if (a_positive) {
      if (be != e) p_u.mul_one_minus(b.delta[be]);
    } else {
      p_s.mul_one_minus(b.delta[be]);
    }
  }
  for (std::int32_t be : g.neg_edges_of_var(j)) {
    if (!st.clause_active(g.edge_clause[be])) continue;
    if (a_positive) {
      p_s.mul_one_minus(b.delta[be]);
    } else {
      if (be != e) p_u.mul_one_minus(b.delta[be]);
    }
  }
}

double update_edge_impl(const DecimationState& st, const BeliefState& b,
                        std::int32_t edge, bool* contradiction) {
  const FactorGraph& g = st.graph();
  const std::int32_t c = g.edge_clause[edge];
  const std::int32_t i = g.edge_var[edge];
  double delta = 1;
  for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
    const std::int32_t j = g.edge_var[e];
    if (j == i || st.var_fixed(j)) continue;
    Prod p_u, p_s;
    cavity_products(st, b, e, p_u, p_s);
    double gamma = ratio_of(p_u, p_s);
    if (gamma < 0) {
      if (contradiction) *contradiction = true;
      return 0;
    }
    delta *= gamma;
  }
  return delta;
}

}  // namespace

double bp_update_edge(const DecimationState& st, const BeliefState& b,
                      std::int32_t edge, bool* contradiction) {
  return update_edge_impl(st, b, edge, contradiction);
}

std::pair<ConvergenceReport, BeliefState> run_bp(const DecimationState& st,
                                                 const BpConfig& cfg) {
  const FactorGraph& g = st.graph();
  BeliefState b;
  b.delta.assign(g.n_edges(), 0);
  Rng init_rng = Rng(cfg.seed).derive(0);
  Rng sweep_rng = Rng(cfg.seed).derive(1);

  std::vector<std::int32_t> edges;
  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    if (!st.clause_active(c)) continue;
    for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e)
      if (!st.var_fixed(g.edge_var[e])) edges.push_back(e);
  }
  for (std::int32_t e : edges) b.delta[e] = init_rng.uniform01();

  ConvergenceReport rep;
  for (std::int32_t t = 1; t <= cfg.t_max; ++t) {
    sweep_rng.shuffle(edges);
    double max_change = 0;
    bool contradiction = false;
    for (std::int32_t e : edges) {
      double d = update_edge_impl(st, b, e, &contradiction);
      if (contradiction) {
        rep.status = RunStatus::Contradiction;
        rep.sweeps = t;
        return {rep, std::move(b)};
      }
      max_change = std::max(max_change, std::abs(d - b.delta[e]));
      b.delta[e] = d;
    }
    rep.sweeps = t;
    rep.residual = max_change;
    if (max_change < cfg.eps) {
      rep.status = RunStatus::Converged;
      return {rep, std::move(b)};
    }
  }
  rep.status = RunStatus::Unconverged;
  return {rep, std::move(b)};
}

std::vector<double> bp_marginals(const DecimationState& st, const BeliefState& b) {
  const FactorGraph& g = st.graph();
  std::vector<double> mu(g.n_vars, 0.5);
  for (std::int32_t v = 0; v < g.n_vars; ++v) {
    if (st.var_fixed(v)) {
      mu[v] = st.assignment()[v] == VarState::One ? 1.0 : 0.0;
      continue;
    }
    // Weight of x_v = 1: clauses needing x_v = 0 must be satisfied elsewhere.
    Prod w1, w0;
    for (std::int32_t e : g.neg_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) w1.mul_one_minus(b.delta[e]);
    for (std::int32_t e : g.pos_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) w0.mul_one_minus(b.delta[e]);
    double m = ratio_of(w1, w0);
    if (m < 0)
      throw std::domain_error("bp_marginals: contradictory messages at variable " +
                              std::to_string(v + 1));
    mu[v] = m;
  }
  return mu;
}

EntropyReport bp_entropy(const DecimationState& st, const BeliefState& b) {
  const FactorGraph& g = st.graph();
  EntropyReport rep;
  rep.clause_term.assign(g.n_clauses(), 0);
  rep.var_term.assign(g.n_vars, 0);

  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    if (!st.clause_active(c)) continue;
    double term = 0;
    double gamma_prod = 1;
    for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
      if (st.var_fixed(g.edge_var[e])) continue;
      Prod p_u, p_s;
      cavity_products(st, b, e, p_u, p_s);
      double gamma = ratio_of(p_u, p_s);
      double log_norm = log_sum_of(p_u, p_s);
      if (gamma < 0 || !std::isfinite(log_norm))
        throw std::domain_error("bp_entropy: vanishing cavity normalization");
      gamma_prod *= gamma;
      term += log_norm;  // -ln C_{i->a}
    }
    if (gamma_prod >= 1)
      throw std::domain_error("bp_entropy: clause forced violated");
    term += std::log1p(-gamma_prod);  // -ln c_a
    rep.clause_term[c] = term;
    rep.entropy += term;
  }

  for (std::int32_t v = 0; v < g.n_vars; ++v) {
    if (st.var_fixed(v)) continue;
    Prod w1, w0;
    std::int32_t degree = 0;
    for (std::int32_t e : g.neg_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) {
        w1.mul_one_minus(b.delta[e]);
        ++degree;
      }
    for (std::int32_t e : g.pos_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) {
        w0.mul_one_minus(b.delta[e]);
        ++degree;
      }
    double log_norm = log_sum_of(w1, w0);  // -ln c_v
    if (!std::isfinite(log_norm))
      throw std::domain_error("bp_entropy: contradictory variable " +
                              std::to_string(v + 1));
    rep.var_term[v] = -(degree - 1) * log_norm;
    rep.entropy += rep.var_term[v];
  }
  rep.count = std::exp(rep.entropy);
  return rep;
}

}  // namespace satmp
