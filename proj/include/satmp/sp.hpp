#pragma once

#include <cstdint>
#include <vector>

#include "satmp/simplify.hpp"
#include "satmp/wp.hpp"

namespace satmp {

// Surveys eta_{a->i} in [0,1] indexed by edge id: probability that clause a
// sends a warning to variable i over the cluster ensemble.
struct SurveyState {
  std::vector<double> eta;
};

struct SpConfig {
  std::int32_t t_max = 1000;
  double eps = 1e-3;
  std::uint64_t seed = 0;
};

// One survey update for edge (a,i): product over the other free j of clause a
// of Pi_u / (Pi_u + Pi_s + Pi_0) from j's cavity. Pure function of the
// current state; sets *contradiction when some cavity sum vanishes.
double sp_update_edge(const DecimationState& st, const SurveyState& s,
                      std::int32_t edge, bool* contradiction = nullptr);

// Sweeps update whole clauses at a time (all etas of one clause together),
// visiting active clauses in a fresh random permutation per sweep.
// Converged when the max eta change in a sweep is < eps. `reinitialize`
// draws fresh uniform etas on the live edges; pass false to warm-start from
// the given state (decimation keeps surveys between rounds).
ConvergenceReport run_sp(const DecimationState& st, SurveyState& s,
                         const SpConfig& cfg, bool reinitialize = true);

// Fresh-state convenience overload.
std::pair<ConvergenceReport, SurveyState> run_sp(const DecimationState& st,
                                                 const SpConfig& cfg);

// Largest survey on a live edge (0 when none).
double max_survey(const DecimationState& st, const SurveyState& s);

struct BiasTriple {
  double plus = 0;   // W+: frozen to 1
  double minus = 0;  // W-: frozen to 0
  double zero = 1;   // W0: unfrozen
};

// Per-variable (W+, W-, W0) from the converged surveys. Fixed and isolated
// variables report (0, 0, 1). Throws std::domain_error when both one-sided
// products vanish (contradictory warnings).
std::vector<BiasTriple> compute_biases(const DecimationState& st,
                                       const SurveyState& s);

struct ComplexityReport {
  double total = 0;             // Sigma, natural log units
  double per_unfixed_var = 0;   // Sigma / #unfixed variables
  std::vector<double> clause_term;  // Sigma_a per clause (0 when inactive)
  std::vector<double> var_term;     // (n_i - 1) * Sigma_i per variable
};

// Bethe complexity Sigma = sum_a Sigma_a - sum_i (n_i - 1) Sigma_i of a
// converged state. Throws std::domain_error on a forced-violated clause or
// contradictory variable.
ComplexityReport compute_complexity(const DecimationState& st, const SurveyState& s);

enum class VarCategory : std::int8_t { UnderConstrained, Biased, Balanced, Mixed };

// Thresholds, checked in order: W0 > 0.9 under-constrained;
// max(W+, W-) > 0.9 biased; |W+ - W-| < 0.05 and W0 < 0.2 balanced;
// everything else mixed.
VarCategory categorize(const BiasTriple& b);
std::vector<VarCategory> categorize_variables(const std::vector<BiasTriple>& biases);

}  // namespace satmp
