#pragma once

#include <cstdint>
#include <vector>

#include "satmp/simplify.hpp"

namespace satmp {

enum class RunStatus : std::int8_t { Converged, Unconverged, Contradiction };

struct ConvergenceReport {
  RunStatus status = RunStatus::Unconverged;
  std::int32_t sweeps = 0;   // sweeps executed, including the one that
                             // detected a fixed point
  double residual = 0;       // max message change in the last sweep
};

// Warnings u_{a->i} in {0,1}, indexed by edge id. Entries of dead edges
// (inactive clause or fixed variable) are meaningless.
struct WarningState {
  std::vector<std::uint8_t> u;
};

struct WpConfig {
  std::int32_t t_max = 1000;
  std::uint64_t seed = 0;
};

// Local fields H_i and contradiction flags c_i from a warning fixed point.
// H[i] = (warnings pushing x_i to 1) - (warnings pushing x_i to 0); c[i] = 1
// when both directions receive at least one warning. Fixed variables get
// H = 0, c = 0.
struct FieldSummary {
  std::vector<std::int32_t> H;
  std::vector<std::uint8_t> c;
};

// One warning update for edge (a,i): product over the other free variables j
// of clause a of theta(h_{j->a} * J_j^a), where h is the cavity field of j
// without a. Pure function of the current warnings; exact 0/1 arithmetic.
std::uint8_t wp_update_edge(const DecimationState& st, const WarningState& w,
                            std::int32_t edge);

// Random {0,1} init, then sequential sweeps over live edges in a fresh
// random permutation per sweep; converged when a sweep changes nothing.
std::pair<ConvergenceReport, WarningState> run_wp(const DecimationState& st,
                                                  const WpConfig& cfg);

FieldSummary local_fields(const DecimationState& st, const WarningState& w);

enum class WidStatus : std::int8_t { Sat, Unsat, ProbablyUnsat, Unconverged };

struct WidResult {
  WidStatus status = WidStatus::Unconverged;
  Assignment assignment;  // complete iff status == Sat
  std::int32_t rounds = 0;
  std::int32_t total_sweeps = 0;
};

struct WidConfig {
  std::int32_t t_max = 1000;
  std::uint64_t seed = 0;
  // When true, the all-fields-zero step fixes a uniformly random unfixed
  // variable to a random value instead of the lowest-index one to 1.
  bool random_free_choice = false;
};

// Warning-inspired decimation. Each round runs WP to a fixed point, then
// either reports a contradiction, fixes all variables with nonzero field,
// or fixes one free variable arbitrarily. UNSAT verdicts are only issued
// when the input graph is a forest (where the contradiction test is exact);
// loopy inputs yield ProbablyUnsat.
WidResult wid_solve(const FactorGraph& g, const WidConfig& cfg);

}  // namespace satmp
