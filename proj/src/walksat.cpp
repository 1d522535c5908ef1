#include "satmp/walksat.hpp"

#include <algorithm>

#include "satmp/rng.hpp"

namespace satmp {

namespace {

// Flat occurrence/bookkeeping structure. numtrue[c] counts satisfied
// literals of clause c; critical[c] is the unique satisfying variable when
// numtrue[c] == 1; breakcount[v] counts clauses that v's flip would violate.
struct WalkState {
  const CnfFormula& f;
  std::vector<std::int32_t> occ_begin;  // per 2*var+sign, into occ
  std::vector<std::int32_t> occ;        // clause ids
  std::vector<std::int8_t> value;       // current assignment, 0/1 per var
  std::vector<std::int32_t> numtrue;
  std::vector<std::int32_t> critical;
  std::vector<std::int32_t> breakcount;
  std::vector<std::int32_t> unsat;        // stack of violated clause ids
  std::vector<std::int32_t> unsat_index;  // position in unsat, or -1

  explicit WalkState(const CnfFormula& formula) : f(formula) {
    const std::int32_t n = f.n_vars;
    const auto m = static_cast<std::int32_t>(f.clauses.size());
    std::vector<std::int32_t> cnt(2 * n, 0);
    for (const Clause& c : f.clauses)
      for (const Literal& l : c.literals) ++cnt[slot(l)];
    occ_begin.assign(2 * n + 1, 0);
    for (std::int32_t s = 0; s < 2 * n; ++s) occ_begin[s + 1] = occ_begin[s] + cnt[s];
    occ.assign(occ_begin.back(), 0);
    std::vector<std::int32_t> fill(2 * n, 0);
    for (std::int32_t c = 0; c < m; ++c)
      for (const Literal& l : f.clauses[c].literals)
        occ[occ_begin[slot(l)] + fill[slot(l)]++] = c;
    value.assign(n, 0);
    numtrue.assign(m, 0);
    critical.assign(m, 0);
    breakcount.assign(n, 0);
    unsat_index.assign(m, -1);
  }

  static std::int32_t slot(const Literal& l) {
    return 2 * (l.var - 1) + (l.coupling < 0 ? 1 : 0);
  }
  // Occurrences of variable v that a current value `val` satisfies.
  std::pair<std::int32_t, std::int32_t> sat_occ_range(std::int32_t v, std::int8_t val) const {
    std::int32_t s = 2 * v + val;
    return {occ_begin[s], occ_begin[s + 1]};
  }

  void randomize(Rng& rng) {
    for (auto& x : value) x = static_cast<std::int8_t>(rng.coin());
    std::fill(numtrue.begin(), numtrue.end(), 0);
    std::fill(breakcount.begin(), breakcount.end(), 0);
    std::fill(unsat_index.begin(), unsat_index.end(), -1);
    unsat.clear();
    const auto m = static_cast<std::int32_t>(f.clauses.size());
    for (std::int32_t c = 0; c < m; ++c) {
      for (const Literal& l : f.clauses[c].literals) {
        if (value[l.var - 1] == static_cast<std::int8_t>(l.satisfying_value())) {
          ++numtrue[c];
          critical[c] = l.var - 1;
        }
      }
      if (numtrue[c] == 0) push_unsat(c);
      if (numtrue[c] == 1) ++breakcount[critical[c]];
    }
  }

  void push_unsat(std::int32_t c) {
    unsat_index[c] = static_cast<std::int32_t>(unsat.size());
    unsat.push_back(c);
  }
  void pop_unsat(std::int32_t c) {
    std::int32_t pos = unsat_index[c];
    std::int32_t last = unsat.back();
    unsat[pos] = last;
    unsat_index[last] = pos;
    unsat.pop_back();
    unsat_index[c] = -1;
  }

  void flip(std::int32_t v) {
    std::int8_t old = value[v];
    value[v] = static_cast<std::int8_t>(1 - old);
    // Clauses whose literal on v just became false.
    auto [b0, e0] = sat_occ_range(v, old);
    for (std::int32_t i = b0; i < e0; ++i) {
      std::int32_t c = occ[i];
      if (--numtrue[c] == 0) {
        push_unsat(c);
        --breakcount[v];
      } else if (numtrue[c] == 1) {
        // Find the remaining satisfying variable.
        for (const Literal& l : f.clauses[c].literals) {
          if (value[l.var - 1] == static_cast<std::int8_t>(l.satisfying_value())) {
            critical[c] = l.var - 1;
            break;
          }
        }
        ++breakcount[critical[c]];
      }
    }
    // Clauses whose literal on v just became true.
    auto [b1, e1] = sat_occ_range(v, value[v]);
    for (std::int32_t i = b1; i < e1; ++i) {
      std::int32_t c = occ[i];
      if (++numtrue[c] == 1) {
        pop_unsat(c);
        critical[c] = v;
        ++breakcount[v];
      } else if (numtrue[c] == 2) {
        --breakcount[critical[c]];
      }
    }
  }
};

}  // namespace

SearchOutcome walksat(const CnfFormula& f, const WalksatParams& p) {
  SearchOutcome out;
  Rng rng(p.seed);
  for (const Clause& c : f.clauses) {
    if (c.literals.empty()) {  // unsatisfiable no matter what; don't walk
      out.assignment = Assignment(f.n_vars);
      for (std::int32_t v = 0; v < f.n_vars; ++v)
        out.assignment[v] = rng.coin() ? VarState::One : VarState::Zero;
      out.best_cost_seen = cost(f, out.assignment);
      return out;
    }
  }
  WalkState st(f);
  out.best_cost_seen = static_cast<std::int64_t>(f.clauses.size()) + 1;

  for (std::int32_t attempt = 0; attempt <= p.max_restarts; ++attempt) {
    st.randomize(rng);
    out.best_cost_seen =
        std::min(out.best_cost_seen, static_cast<std::int64_t>(st.unsat.size()));
    for (std::int64_t flip = 0; flip < p.max_flips; ++flip) {
      if (st.unsat.empty()) break;
      std::int32_t c = st.unsat[rng.below(st.unsat.size())];
      const Clause& cl = f.clauses[c];
      std::int32_t pick;
      if (rng.uniform01() < p.noise) {
        pick = cl.literals[rng.below(cl.literals.size())].var - 1;
      } else {
        std::int32_t best = INT32_MAX, n_best = 0;
        pick = -1;
        for (const Literal& l : cl.literals) {
          std::int32_t bc = st.breakcount[l.var - 1];
          if (bc < best) {
            best = bc;
            n_best = 1;
            pick = l.var - 1;
          } else if (bc == best && rng.below(static_cast<std::uint64_t>(++n_best)) == 0) {
            pick = l.var - 1;
          }
        }
      }
      st.flip(pick);
      ++out.flips_used;
      out.best_cost_seen =
          std::min(out.best_cost_seen, static_cast<std::int64_t>(st.unsat.size()));
    }
    if (st.unsat.empty()) {
      out.status = SearchStatus::Sat;
      break;
    }
  }
  out.assignment = Assignment(f.n_vars);
  for (std::int32_t v = 0; v < f.n_vars; ++v)
    out.assignment[v] = st.value[v] ? VarState::One : VarState::Zero;
  out.best_cost_seen =
      std::min(out.best_cost_seen, static_cast<std::int64_t>(st.unsat.size()));
  return out;
}

}  // namespace satmp
