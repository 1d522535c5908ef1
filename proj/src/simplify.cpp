#include "satmp/simplify.hpp"

#include <cassert>

namespace satmp {

DecimationState::DecimationState(const FactorGraph& g)
    : g_(&g),
      assign_(g.n_vars),
      active_(g.n_clauses(), 1),
      free_len_(g.n_clauses()),
      n_active_(g.n_clauses()),
      n_unfixed_(g.n_vars) {
  for (std::int32_t c = 0; c < g.n_clauses(); ++c) {
    free_len_[c] = g.clause_len(c);
    if (free_len_[c] == 0) contradiction_ = true;
    if (free_len_[c] == 1) pending_units_.push_back(c);
  }
}

std::int32_t DecimationState::active_degree(std::int32_t v) const {
  std::int32_t d = 0;
  for (std::int32_t e : g_->edges_of_var(v)) d += active_[g_->edge_clause[e]];
  return d;
}

void DecimationState::fix_and_clean(std::int32_t v, bool value) {
  assert(!var_fixed(v));
  assign_[v] = value ? VarState::One : VarState::Zero;
  --n_unfixed_;
  for (std::int32_t e : g_->edges_of_var(v)) {
    std::int32_t c = g_->edge_clause[e];
    if (!active_[c]) continue;
    bool satisfied = (g_->edge_coupling[e] < 0) == value;
    if (satisfied) {
      active_[c] = 0;
      --n_active_;
    } else {
      if (--free_len_[c] == 0)
        contradiction_ = true;
      else if (free_len_[c] == 1)
        pending_units_.push_back(c);
    }
  }
}

PropagateStatus DecimationState::unit_propagate(Rng* rng) {
  while (!contradiction_ && !pending_units_.empty()) {
    std::size_t pick = rng ? static_cast<std::size_t>(rng->below(pending_units_.size()))
                           : pending_units_.size() - 1;
    std::int32_t c = pending_units_[pick];
    pending_units_[pick] = pending_units_.back();
    pending_units_.pop_back();
    if (!active_[c] || free_len_[c] != 1) continue;  // stale entry
    for (std::int32_t e = g_->clause_edge_begin(c); e < g_->clause_edge_end(c); ++e) {
      std::int32_t v = g_->edge_var[e];
      if (!var_fixed(v)) {
        fix_and_clean(v, g_->edge_coupling[e] < 0);
        break;
      }
    }
  }
  if (contradiction_) return PropagateStatus::Contradiction;
  if (n_active_ == 0) {
    for (std::int32_t v = 0; v < g_->n_vars; ++v)
      if (!var_fixed(v)) fix_and_clean(v, true);
    return PropagateStatus::Sat;
  }
  return PropagateStatus::Residual;
}

std::vector<std::int32_t> DecimationState::active_clauses() const {
  std::vector<std::int32_t> ids;
  ids.reserve(n_active_);
  for (std::int32_t c = 0; c < g_->n_clauses(); ++c)
    if (active_[c]) ids.push_back(c);
  return ids;
}

CnfFormula DecimationState::residual_formula() const {
  CnfFormula f;
  f.n_vars = g_->n_vars;
  f.clauses.reserve(n_active_);
  for (std::int32_t c = 0; c < g_->n_clauses(); ++c) {
    if (!active_[c]) continue;
    Clause cl;
    cl.literals.reserve(free_len_[c]);
    for (std::int32_t e = g_->clause_edge_begin(c); e < g_->clause_edge_end(c); ++e)
      if (!var_fixed(g_->edge_var[e]))
        cl.literals.push_back(Literal{g_->edge_var[e] + 1, g_->edge_coupling[e]});
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

}  // namespace satmp
