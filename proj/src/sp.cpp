#include "satmp/sp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "satmp/rng.hpp"

namespace satmp {

namespace {

// Exact eta == 1 is structural: it enters only through unit clauses and
// propagates through frozen messages; those exact zeros of (1 - eta) are
// counted apart so cavity terms can divide a factor back out, and a zero on
// both sides of a variable is a genuine contradiction. Two guards keep
// rounding from forging that signal in the strongly polarized regime:
// product reads are clamped back into their true range (0, 1], and any
// ratio whose complementary mass is nonzero is capped below 1, so 1 - eta
// stays positive for every non-structural survey.
constexpr double kEtaMax = 1 - 0x1p-52;

// True one-sided products lie in (0, 1]; incremental divide/multiply
// maintenance can drift a hair above 1 and underflow can erase the bottom,
// so reads are clamped back into range.
inline double clamp_prod(double x) {
  if (x > 1) return 1;
  return x > 0 ? x : std::numeric_limits<double>::denorm_min();
}

// One-sided product of (1 - eta) with exact-zero factors counted apart.
struct SideProd {
  double prod = 1;
  std::int32_t zeros = 0;

  void mul(double eta) {
    double f = 1 - eta;
    if (f <= 0)
      ++zeros;
    else
      prod *= f;
  }
  double value() const { return zeros > 0 ? 0 : clamp_prod(prod); }
  // Product with one factor (1 - eta) removed.
  double value_without(double eta) const {
    double f = 1 - eta;
    if (f <= 0) return zeros > 1 ? 0 : clamp_prod(prod);
    return zeros > 0 ? 0 : clamp_prod(prod / f);
  }
};

// Pi_u / (Pi_u + Pi_s + Pi_0) from the two one-sided cavity products.
// Returns -1 when both sides are structurally frozen (contradiction).
inline double cavity_ratio(double p_s, double p_u) {
  double pi_u = (1 - p_u) * p_s;
  double pi_s = (1 - p_s) * p_u;
  double pi_0 = p_s * p_u;
  double sum = pi_u + pi_s + pi_0;
  if (sum <= 0) return -1;
  double r = pi_u / sum;
  if (p_u > 0 && r > kEtaMax) r = kEtaMax;
  return r;
}

struct VarProducts {
  std::vector<double> pos_prod, neg_prod;
  std::vector<std::int32_t> pos_zeros, neg_zeros;

  void recompute(const DecimationState& st, const SurveyState& s) {
    const FactorGraph& g = st.graph();
    pos_prod.assign(g.n_vars, 1);
    neg_prod.assign(g.n_vars, 1);
    pos_zeros.assign(g.n_vars, 0);
    neg_zeros.assign(g.n_vars, 0);
    for (std::int32_t v = 0; v < g.n_vars; ++v) {
      if (st.var_fixed(v)) continue;
      for (std::int32_t e : g.pos_edges_of_var(v)) {
        if (!st.clause_active(g.edge_clause[e])) continue;
        double f = 1 - s.eta[e];
        if (f <= 0)
          ++pos_zeros[v];
        else
          pos_prod[v] *= f;
      }
      for (std::int32_t e : g.neg_edges_of_var(v)) {
        if (!st.clause_active(g.edge_clause[e])) continue;
        double f = 1 - s.eta[e];
        if (f <= 0)
          ++neg_zeros[v];
        else
          neg_prod[v] *= f;
      }
    }
  }

  void replace(std::int32_t v, bool pos_side, double eta_old, double eta_new) {
    double& prod = pos_side ? pos_prod[v] : neg_prod[v];
    std::int32_t& zeros = pos_side ? pos_zeros[v] : neg_zeros[v];
    double f_old = 1 - eta_old, f_new = 1 - eta_new;
    if (f_old <= 0)
      --zeros;
    else
      prod /= f_old;
    if (f_new <= 0)
      ++zeros;
    else
      prod *= f_new;
  }

  // Same-side product of variable v minus the clause's own factor.
  double cavity_same(std::int32_t v, bool pos_side, double eta_own) const {
    double p_same = pos_side ? pos_prod[v] : neg_prod[v];
    std::int32_t z_same = pos_side ? pos_zeros[v] : neg_zeros[v];
    double f = 1 - eta_own;
    if (f <= 0) return z_same > 1 ? 0 : clamp_prod(p_same);
    return z_same > 0 ? 0 : clamp_prod(p_same / f);
  }

  // Full other-side product of variable v.
  double full_other(std::int32_t v, bool pos_side) const {
    return pos_side ? (neg_zeros[v] > 0 ? 0 : clamp_prod(neg_prod[v]))
                    : (pos_zeros[v] > 0 ? 0 : clamp_prod(pos_prod[v]));
  }

  // Cavity ratio Pi_u / (Pi_u + Pi_s + Pi_0) of variable v for a clause on
  // the given side whose own survey is eta_own. Returns -1 on a vanishing
  // cavity sum (contradiction).
  double ratio(std::int32_t v, bool pos_side, double eta_own) const {
    return cavity_ratio(cavity_same(v, pos_side, eta_own),
                        full_other(v, pos_side));
  }
};

}  // namespace

double sp_update_edge(const DecimationState& st, const SurveyState& s,
                      std::int32_t edge, bool* contradiction) {
  const FactorGraph& g = st.graph();
  const std::int32_t c = g.edge_clause[edge];
  const std::int32_t i = g.edge_var[edge];
  double eta = 1;
  for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
    const std::int32_t j = g.edge_var[e];
    if (j == i || st.var_fixed(j)) continue;
    const bool pos_side = g.edge_coupling[e] < 0;
    SideProd same, other;
    auto fold = [&](std::int32_t be, SideProd& acc) {
      if (st.clause_active(g.edge_clause[be]) && be != e) acc.mul(s.eta[be]);
    };
    for (std::int32_t be : g.pos_edges_of_var(j)) {
      if (!st.clause_active(g.edge_clause[be])) continue;
      if (pos_side)
        fold(be, same);
      else
        other.mul(s.eta[be]);
    }
    for (std::int32_t be : g.neg_edges_of_var(j)) {
      if (!st.clause_active(g.edge_clause[be])) continue;
      if (pos_side)
        other.mul(s.eta[be]);
      else
        fold(be, same);
    }
    double r = cavity_ratio(same.value(), other.value());
    if (r < 0) {
      if (contradiction) *contradiction = true;
      return 0;
    }
    eta *= r;
  }
  return eta;
}

ConvergenceReport run_sp(const DecimationState& st, SurveyState& s,
                         const SpConfig& cfg, bool reinitialize) {
  const FactorGraph& g = st.graph();
  if (static_cast<std::int32_t>(s.eta.size()) != g.n_edges())
    s.eta.assign(g.n_edges(), 0);
  Rng init_rng = Rng(cfg.seed).derive(0);
  Rng sweep_rng = Rng(cfg.seed).derive(1);

  std::vector<std::int32_t> clauses = st.active_clauses();
  if (reinitialize) {
    for (std::int32_t c : clauses)
      for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e)
        if (!st.var_fixed(g.edge_var[e])) s.eta[e] = init_rng.uniform01();
  }

  VarProducts vp;
  vp.recompute(st, s);

  // Scratch per clause; widths are small.
  std::vector<double> ratio_buf, prefix_buf, eta_buf;
  std::vector<std::int32_t> edge_buf;

  ConvergenceReport rep;
  for (std::int32_t t = 1; t <= cfg.t_max; ++t) {
    if (t % 128 == 0) vp.recompute(st, s);  // shed accumulated rounding
    sweep_rng.shuffle(clauses);
    double max_change = 0;
    for (std::int32_t c : clauses) {
      edge_buf.clear();
      ratio_buf.clear();
      for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
        const std::int32_t j = g.edge_var[e];
        if (st.var_fixed(j)) continue;
        double r = vp.ratio(j, g.edge_coupling[e] < 0, s.eta[e]);
        if (r < 0) {
          rep.status = RunStatus::Contradiction;
          rep.sweeps = t;
          return rep;
        }
        edge_buf.push_back(e);
        ratio_buf.push_back(r);
      }
      const auto w = static_cast<std::int32_t>(edge_buf.size());
      // eta for literal i = product of the other ratios, via prefix/suffix
      // products (no division, zeros flow through).
      prefix_buf.assign(w + 1, 1);
      for (std::int32_t k = 0; k < w; ++k)
        prefix_buf[k + 1] = prefix_buf[k] * ratio_buf[k];
      eta_buf.assign(w, 1);
      double suffix = 1;
      for (std::int32_t k = w - 1; k >= 0; --k) {
        eta_buf[k] = prefix_buf[k] * suffix;
        suffix *= ratio_buf[k];
      }
      for (std::int32_t k = 0; k < w; ++k) {
        const std::int32_t e = edge_buf[k];
        const double old = s.eta[e];
        if (old == eta_buf[k]) continue;
        max_change = std::max(max_change, std::abs(eta_buf[k] - old));
        vp.replace(g.edge_var[e], g.edge_coupling[e] < 0, old, eta_buf[k]);
        s.eta[e] = eta_buf[k];
      }
    }
    rep.sweeps = t;
    rep.residual = max_change;
    if (max_change < cfg.eps) {
      rep.status = RunStatus::Converged;
      return rep;
    }
  }
  rep.status = RunStatus::Unconverged;
  return rep;
}

std::pair<ConvergenceReport, SurveyState> run_sp(const DecimationState& st,
                                                 const SpConfig& cfg) {
  SurveyState s;
  ConvergenceReport rep = run_sp(st, s, cfg, true);
  return {rep, std::move(s)};
}

double max_survey(const DecimationState& st, const SurveyState& s) {
  const FactorGraph& g = st.graph();
  double m = 0;
  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    if (!st.clause_active(c)) continue;
    for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e)
      if (!st.var_fixed(g.edge_var[e])) m = std::max(m, s.eta[e]);
  }
  return m;
}

std::vector<BiasTriple> compute_biases(const DecimationState& st,
                                       const SurveyState& s) {
  const FactorGraph& g = st.graph();
  std::vector<BiasTriple> biases(g.n_vars);
  for (std::int32_t v = 0; v < g.n_vars; ++v) {
    if (st.var_fixed(v)) continue;  // keeps (0, 0, 1)
    SideProd pos, neg;
    for (std::int32_t e : g.pos_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) pos.mul(s.eta[e]);
    for (std::int32_t e : g.neg_edges_of_var(v))
      if (st.clause_active(g.edge_clause[e])) neg.mul(s.eta[e]);
    double p_pos = pos.value(), p_neg = neg.value();
    double pi_plus = (1 - p_pos) * p_neg;   // warned by un-negated clauses
    double pi_minus = (1 - p_neg) * p_pos;  // warned by negated clauses
    double pi_zero = p_pos * p_neg;
    double sum = pi_plus + pi_minus + pi_zero;
    if (sum <= 0)
      throw std::domain_error("compute_biases: contradictory warnings at variable " +
                              std::to_string(v + 1));
    biases[v] = BiasTriple{pi_plus / sum, pi_minus / sum,
                           1 - pi_plus / sum - pi_minus / sum};
  }
  return biases;
}

ComplexityReport compute_complexity(const DecimationState& st, const SurveyState& s) {
  const FactorGraph& g = st.graph();
  ComplexityReport rep;
  rep.clause_term.assign(g.n_clauses(), 0);
  rep.var_term.assign(g.n_vars, 0);

  // Full one-sided products per variable, then each cavity term is one
  // division away.
  VarProducts vp;
  vp.recompute(st, s);

  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    if (!st.clause_active(c)) continue;
    // log(prod_j sum_j - prod_j pi_u_j) computed as
    // log(prod_j sum_j) + log1p(-prod_j ratio_j), which survives the
    // polarized regime where the direct difference rounds to zero.
    double log_sum = 0, ratio_prod = 1;
    for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
      const std::int32_t j = g.edge_var[e];
      if (st.var_fixed(j)) continue;
      const bool pos_side = g.edge_coupling[e] < 0;
      double p_s = vp.cavity_same(j, pos_side, s.eta[e]);
      double p_u = vp.full_other(j, pos_side);
      double sum = p_s + p_u - p_s * p_u;
      double r = cavity_ratio(p_s, p_u);
      if (sum <= 0 || r < 0)
        throw std::domain_error("compute_complexity: contradictory variable " +
                                std::to_string(j + 1));
      log_sum += std::log(sum);
      ratio_prod *= r;
    }
    if (ratio_prod >= 1)
      throw std::domain_error("compute_complexity: clause " + std::to_string(c) +
                              " forced violated");
    rep.clause_term[c] = log_sum + std::log1p(-ratio_prod);
    rep.total += rep.clause_term[c];
  }

  for (std::int32_t v = 0; v < g.n_vars; ++v) {
    if (st.var_fixed(v)) continue;
    double p_pos = vp.pos_zeros[v] > 0 ? 0 : clamp_prod(vp.pos_prod[v]);
    double p_neg = vp.neg_zeros[v] > 0 ? 0 : clamp_prod(vp.neg_prod[v]);
    double norm = p_pos + p_neg - p_pos * p_neg;
    if (norm <= 0)
      throw std::domain_error("compute_complexity: contradictory variable " +
                              std::to_string(v + 1));
    std::int32_t degree = st.active_degree(v);
    rep.var_term[v] = (degree - 1) * std::log(norm);
    rep.total -= rep.var_term[v];
  }
  std::int32_t n_unfixed = st.n_unfixed_vars();
  rep.per_unfixed_var = n_unfixed > 0 ? rep.total / n_unfixed : 0;
  return rep;
}

VarCategory categorize(const BiasTriple& b) {
  if (b.zero > 0.9) return VarCategory::UnderConstrained;
  if (std::max(b.plus, b.minus) > 0.9) return VarCategory::Biased;
  if (std::abs(b.plus - b.minus) < 0.05 && b.zero < 0.2) return VarCategory::Balanced;
  return VarCategory::Mixed;
}

std::vector<VarCategory> categorize_variables(const std::vector<BiasTriple>& biases) {
  std::vector<VarCategory> cats;
  cats.reserve(biases.size());
  for (const BiasTriple& b : biases) cats.push_back(categorize(b));
  return cats;
}

}  // namespace satmp
