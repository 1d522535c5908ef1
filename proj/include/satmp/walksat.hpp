#pragma once

#include <cstdint>

#include "satmp/formula.hpp"

namespace satmp {

struct WalksatParams {
  std::int64_t max_flips = 1'000'000;
  double noise = 0.5;  // probability of a random walk move
  std::int32_t max_restarts = 0;  // extra re-randomized tries after the first
  std::uint64_t seed = 0;
};

enum class SearchStatus : std::int8_t { Sat, GiveUp };

struct SearchOutcome {
  SearchStatus status = SearchStatus::GiveUp;
  Assignment assignment;  // complete; satisfying iff status == Sat
  std::int64_t flips_used = 0;
  std::int64_t best_cost_seen = 0;
};

// Focused random walk: pick a violated clause uniformly; with probability
// `noise` flip a uniform variable of it, otherwise flip one with minimal
// break count (ties uniform). Each restart re-randomizes the assignment and
// gets a fresh flip budget; flips_used accumulates across restarts.
// Variables not occurring in any clause keep their random initial values.
SearchOutcome walksat(const CnfFormula& f, const WalksatParams& p);

}  // namespace satmp
