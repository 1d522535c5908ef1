#include "satmp/sid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "satmp/rng.hpp"

namespace satmp {

namespace {

bool all_clauses_satisfied(const FactorGraph& g, const Assignment& a) {
  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    bool sat = false;
    for (std::int32_t e = g.clause_edge_begin(c); e < g.clause_edge_end(c); ++e) {
      bool want_one = g.edge_coupling[e] < 0;
      if ((a[g.edge_var[e]] == VarState::One) == want_one) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

// SAT results are verified against the full input; a failure here is an
// internal error, not a property of the instance.
void verify_sat(const FactorGraph& g, const Assignment& a) {
  if (!all_clauses_satisfied(g, a))
    throw std::logic_error("sid_solve: produced an unverified assignment");
}

void count_categories(const std::vector<BiasTriple>& biases,
                      const DecimationState& st, SidRound& row) {
  for (std::int32_t v = 0; v < static_cast<std::int32_t>(biases.size()); ++v) {
    if (st.var_fixed(v)) continue;
    switch (categorize(biases[v])) {
      case VarCategory::UnderConstrained: ++row.n_under; break;
      case VarCategory::Biased: ++row.n_biased; break;
      case VarCategory::Balanced: ++row.n_balanced; break;
      case VarCategory::Mixed: ++row.n_mixed; break;
    }
  }
}

}  // namespace

SidResult sid_solve(const FactorGraph& g, const SidConfig& cfg) {
  if (!(cfg.fix_fraction > 0 && cfg.fix_fraction <= 1))
    throw std::invalid_argument("sid_solve: fix_fraction must be in (0,1]");

  SidResult res;
  DecimationState st(g);
  if (st.contradiction()) {
    res.status = SidStatus::ProbablyUnsat;
    return res;
  }

  SurveyState s;
  bool fresh = true;
  std::int32_t restarts_used = 0;
  std::uint64_t run_counter = 0;
  const Rng base(cfg.seed);

  while (true) {
    if (st.n_active_clauses() == 0) {
      for (std::int32_t v = 0; v < g.n_vars; ++v)
        if (!st.var_fixed(v)) st.fix_and_clean(v, true);
      res.assignment = st.assignment();
      verify_sat(g, res.assignment);
      res.status = SidStatus::Sat;
      return res;
    }

    ++res.rounds;
    SidRound row;
    row.round = res.rounds;

    SpConfig sp_cfg{cfg.t_max, cfg.eps, base.derive(0x100 + run_counter++).seed()};
    ConvergenceReport rep = run_sp(st, s, sp_cfg, fresh);
    fresh = false;
    res.total_sp_sweeps += rep.sweeps;
    row.sp_sweeps = rep.sweeps;

    if (rep.status == RunStatus::Contradiction) {
      res.status = SidStatus::ProbablyUnsat;
      res.trace.push_back(row);
      return res;
    }
    if (rep.status == RunStatus::Unconverged) {
      if (restarts_used < cfg.restarts) {
        ++restarts_used;
        fresh = true;  // re-randomize the surveys, keep the decimation
        --res.rounds;
        continue;
      }
      res.status = SidStatus::SpUnconverged;
      res.trace.push_back(row);
      return res;
    }

    row.max_eta = max_survey(st, s);

    std::vector<BiasTriple> biases;
    try {
      biases = compute_biases(st, s);
    } catch (const std::domain_error&) {
      res.status = SidStatus::ProbablyUnsat;
      res.trace.push_back(row);
      return res;
    }
    count_categories(biases, st, row);
    try {
      ComplexityReport cx = compute_complexity(st, s);
      row.sigma = cx.total;
      row.sigma_per_var = cx.per_unfixed_var;
    } catch (const std::domain_error&) {
      row.sigma = std::numeric_limits<double>::quiet_NaN();
      row.sigma_per_var = row.sigma;
    }

    if (row.max_eta > cfg.eps) {
      // Non-trivial surveys: decimate by bias rank.
      const std::int32_t n_t = st.n_unfixed_vars();
      std::int32_t n_fix = static_cast<std::int32_t>(
          std::ceil(cfg.fix_fraction * static_cast<double>(n_t)));
      n_fix = std::max(n_fix, 1);
      n_fix = std::min(n_fix, n_t);

      std::vector<std::int32_t> order;
      order.reserve(n_t);
      for (std::int32_t v = 0; v < g.n_vars; ++v)
        if (!st.var_fixed(v)) order.push_back(v);
      auto bias_of = [&](std::int32_t v) {
        return std::abs(biases[v].plus - biases[v].minus);
      };
      std::stable_sort(order.begin(), order.end(),
                       [&](std::int32_t aa, std::int32_t bb) {
                         return bias_of(aa) > bias_of(bb);
                       });
      row.max_bias = order.empty() ? 0 : bias_of(order[0]);

      for (std::int32_t k = 0; k < n_fix; ++k) {
        std::int32_t v = order[k];
        st.fix_and_clean(v, biases[v].plus > biases[v].minus);
        if (st.contradiction()) {
          res.status = SidStatus::ProbablyUnsat;
          res.trace.push_back(row);
          return res;
        }
      }
      row.fixed_by_bias = n_fix;

      const std::int32_t unfixed_before_up = st.n_unfixed_vars();
      PropagateStatus up = st.unit_propagate();
      row.fixed_by_up = unfixed_before_up - st.n_unfixed_vars();
      row.unfixed_after = st.n_unfixed_vars();
      row.active_clauses_after = st.n_active_clauses();
      res.trace.push_back(row);

      if (up == PropagateStatus::Contradiction) {
        res.status = SidStatus::ProbablyUnsat;
        return res;
      }
      if (up == PropagateStatus::Sat) {
        res.assignment = st.assignment();
        verify_sat(g, res.assignment);
        res.status = SidStatus::Sat;
        return res;
      }
      continue;
    }

    // Trivial surveys: the residual is paramagnetic; run local search.
    row.unfixed_after = st.n_unfixed_vars();
    row.active_clauses_after = st.n_active_clauses();
    res.trace.push_back(row);

    CnfFormula residual = st.residual_formula();
    WalksatParams wp = cfg.walksat;
    if (wp.max_flips == 0)
      wp.max_flips = std::max<std::int64_t>(
          std::int64_t{4000} * st.n_unfixed_vars(), 1'000'000);
    wp.seed = base.derive(0xd1ce).seed();
    SearchOutcome outcome = walksat(residual, wp);
    res.walksat_flips = outcome.flips_used;
    if (outcome.status != SearchStatus::Sat) {
      res.status = SidStatus::WalksatGiveUp;
      return res;
    }
    res.assignment = st.assignment();
    for (std::int32_t v = 0; v < g.n_vars; ++v)
      if (!st.var_fixed(v)) res.assignment[v] = outcome.assignment[v];
    verify_sat(g, res.assignment);
    res.status = SidStatus::Sat;
    return res;
  }
}

}  // namespace satmp
