#pragma once

#include <cstdint>
#include <vector>

#include "satmp/simplify.hpp"
#include "satmp/wp.hpp"

namespace satmp {

// Messages delta_{a->i} in [0,1] indexed by edge id: probability that clause
// a sends a warning to variable i under the uniform measure over solutions.
struct BeliefState {
  std::vector<double> delta;
};

struct BpConfig {
  std::int32_t t_max = 1000;
  double eps = 1e-3;
  std::uint64_t seed = 0;
};

// One update for edge (a,i): delta = prod over other free j in a of
// gamma_{j->a}, where gamma = P_u / (P_u + P_s) from j's cavity products.
// Returns a value in [0,1]; sets *contradiction (when given) if some cavity
// normalization P_u + P_s vanishes.
double bp_update_edge(const DecimationState& st, const BeliefState& b,
                      std::int32_t edge, bool* contradiction = nullptr);

// Uniform [0,1) init, sequential sweeps over live edges in fresh random
// permutations; converged when the max change in a sweep is < eps. A zero
// cavity normalization aborts with Contradiction.
std::pair<ConvergenceReport, BeliefState> run_bp(const DecimationState& st,
                                                 const BpConfig& cfg);

// Marginals mu_i = P(x_i = 1) from a message fixed point. Isolated or fixed
// variables: 1/2 for free ones, their value for fixed ones. Throws
// std::domain_error when both one-sided products vanish (contradiction).
std::vector<double> bp_marginals(const DecimationState& st, const BeliefState& b);

struct EntropyReport {
  double entropy = 0;        // natural log units
  double count = 1;          // exp(entropy)
  std::vector<double> clause_term;  // per clause: -ln c_a - sum_i ln C_{i->a}
  std::vector<double> var_term;     // per variable: (n_i - 1) ln c_i
};

// Bethe entropy from the normalization constants of a converged state.
// exp(S) equals the number of solutions on satisfiable tree instances.
// Throws std::domain_error on a vanishing normalization.
EntropyReport bp_entropy(const DecimationState& st, const BeliefState& b);

}  // namespace satmp
