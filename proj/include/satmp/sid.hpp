#pragma once

#include <cstdint>
#include <vector>

#include "satmp/sp.hpp"
#include "satmp/walksat.hpp"

namespace satmp {

enum class SidStatus : std::int8_t {
  Sat,
  SpUnconverged,
  ProbablyUnsat,
  WalksatGiveUp,
};

struct SidConfig {
  std::int32_t t_max = 1000;
  double eps = 1e-3;
  double fix_fraction = 0.01;  // fraction of unfixed variables per round
  std::int32_t restarts = 0;   // extra full restarts on non-convergence
  // Applied to the paramagnetic residual; max_flips == 0 scales the budget
  // with the residual size (4000 per variable, at least one million).
  WalksatParams walksat{.max_flips = 0};
  std::uint64_t seed = 0;
};

struct SidRound {
  std::int32_t round = 0;
  std::int32_t sp_sweeps = 0;
  double max_eta = 0;
  double sigma = 0;             // complexity before fixing (NaN if unavailable)
  double sigma_per_var = 0;
  double max_bias = 0;
  std::int32_t fixed_by_bias = 0;
  std::int32_t fixed_by_up = 0;
  std::int32_t unfixed_after = 0;
  std::int32_t active_clauses_after = 0;
  // Category counts at this round's fixed point.
  std::int32_t n_under = 0, n_biased = 0, n_balanced = 0, n_mixed = 0;
};

struct SidResult {
  SidStatus status = SidStatus::SpUnconverged;
  Assignment assignment;  // complete and verified iff status == Sat
  std::int32_t rounds = 0;
  std::int64_t total_sp_sweeps = 0;  // summed over all rounds and restarts
  std::int64_t walksat_flips = 0;
  std::vector<SidRound> trace;
};

// Survey-inspired decimation. Each round reconverges SP (warm-started from
// the previous fixed point), then fixes the ceil(f * N_t) unfixed variables
// of largest |W+ - W-| toward their majority sign and unit-propagates.
// Trivial surveys (max eta <= eps) hand the residual formula to walksat.
// Restarts re-randomize the surveys with a fresh seed.
SidResult sid_solve(const FactorGraph& g, const SidConfig& cfg);

}  // namespace satmp
