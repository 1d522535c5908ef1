#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "satmp/factor_graph.hpp"
#include "satmp/formula.hpp"
#include "satmp/rng.hpp"

namespace satmp {

enum class PropagateStatus : std::int8_t { Sat, Contradiction, Residual };

// Mutable simplification state over an immutable factor graph: which
// variables are fixed and which clauses are still active. Fixing a variable
// removes the clauses it satisfies and deletes its literal from the rest
// (tracked by per-clause free-literal counts; the graph itself is never
// edited). Decimated variables stay in place as degree-0 nodes.
//
// The underlying FactorGraph must outlive the state. Message-passing runs
// take the state const; it is mutated only between runs.
class DecimationState {
 public:
  explicit DecimationState(const FactorGraph& g);

  const FactorGraph& graph() const { return *g_; }
  const Assignment& assignment() const { return assign_; }
  Assignment& assignment() { return assign_; }

  bool clause_active(std::int32_t c) const { return active_[c] != 0; }
  std::int32_t clause_free_len(std::int32_t c) const { return free_len_[c]; }
  bool var_fixed(std::int32_t v) const { return assign_[v] != VarState::Unfixed; }

  std::int32_t n_active_clauses() const { return n_active_; }
  std::int32_t n_unfixed_vars() const { return n_unfixed_; }
  bool contradiction() const { return contradiction_; }

  // Degree of v among active clauses (walks the adjacency list).
  std::int32_t active_degree(std::int32_t v) const;

  // Fixes v (must be unfixed) and cleans: deactivates satisfied clauses,
  // drops the opposite literal elsewhere. Sets the contradiction flag if a
  // clause runs out of literals; newly-unit clauses queue for propagation.
  void fix_and_clean(std::int32_t v, bool value);

  // Repeatedly satisfies unit clauses until none remain or a contradiction
  // appears. Returns Sat when no active clause is left (remaining free
  // variables are then filled with 1, making the assignment complete),
  // Contradiction on an empty clause, Residual otherwise (free variables
  // stay Unfixed). With an rng, pending unit clauses are processed in random
  // order; the final status is order-independent either way.
  PropagateStatus unit_propagate(Rng* rng = nullptr);

  // Ids of currently active clauses, ascending.
  std::vector<std::int32_t> active_clauses() const;

  // The current simplified formula, original variable ids, active clauses in
  // ascending id order with their surviving literals.
  CnfFormula residual_formula() const;

 private:
  const FactorGraph* g_;
  Assignment assign_;
  std::vector<std::uint8_t> active_;
  std::vector<std::int32_t> free_len_;
  std::vector<std::int32_t> pending_units_;
  std::int32_t n_active_ = 0;
  std::int32_t n_unfixed_ = 0;
  bool contradiction_ = false;
};

}  // namespace satmp
