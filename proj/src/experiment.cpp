#include "satmp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "satmp/generate.hpp"
#include "satmp/rng.hpp"

namespace satmp {

namespace {

std::int32_t pool_size(std::int32_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SATMP_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<std::int32_t>(hw) : 1;
}

TableRow run_table_instance(const TableSpec& spec, std::int32_t cell_idx,
                            std::int32_t inst_idx) {
  const TableCell& cell = spec.cells[cell_idx];
  TableRow row;
  row.cell = cell_idx;
  row.instance = inst_idx;
  row.seed = Rng(spec.seed)
                 .derive(static_cast<std::uint64_t>(cell_idx) * 1'000'003u + inst_idx)
                 .seed();

  GeneratorParams gp;
  gp.n_vars = cell.n;
  gp.n_clauses = static_cast<std::int32_t>(std::lround(cell.alpha * cell.n));
  gp.k = spec.k;
  gp.seed = row.seed;

  auto t0 = std::chrono::steady_clock::now();
  CnfFormula f = generate_random_ksat(gp);
  FactorGraph g = build_factor_graph(f);
  SidConfig solver = spec.solver;
  solver.fix_fraction = cell.fix_fraction;
  solver.seed = Rng(row.seed).derive(0xabc).seed();
  SidResult r = sid_solve(g, solver);
  auto t1 = std::chrono::steady_clock::now();

  row.status = r.status;
  row.rounds = r.rounds;
  row.sp_sweeps = r.total_sp_sweeps;
  row.walksat_flips = r.walksat_flips;
  row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

}  // namespace

TableResult run_table_experiment(const TableSpec& spec) {
  TableResult result;
  const auto n_cells = static_cast<std::int32_t>(spec.cells.size());
  const std::int32_t total = n_cells * spec.instances;
  result.rows.assign(total, TableRow{});

  std::int32_t workers = std::min(pool_size(spec.threads), std::max(total, 1));
  std::atomic<std::int32_t> next{0};
  auto work = [&]() {
    while (true) {
      std::int32_t task = next.fetch_add(1);
      if (task >= total) break;
      result.rows[task] =
          run_table_instance(spec, task / spec.instances, task % spec.instances);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::int32_t w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  for (std::int32_t c = 0; c < n_cells; ++c) {
    TableCellSummary sum;
    sum.cell = c;
    std::int64_t sweeps = 0;
    for (std::int32_t i = 0; i < spec.instances; ++i) {
      const TableRow& row = result.rows[c * spec.instances + i];
      if (row.status == SidStatus::Sat) {
        ++sum.solved;
        sweeps += row.sp_sweeps;
      }
    }
    sum.solved_fraction =
        spec.instances > 0 ? static_cast<double>(sum.solved) / spec.instances : 0;
    sum.mean_sp_sweeps_solved =
        sum.solved > 0 ? static_cast<double>(sweeps) / sum.solved : 0;
    result.cells.push_back(sum);
  }
  return result;
}

std::vector<ScanRow> run_complexity_scan(const ScanSpec& spec) {
  GeneratorParams gp;
  gp.n_vars = spec.n;
  gp.n_clauses = static_cast<std::int32_t>(std::lround(spec.alpha_start * spec.n));
  gp.k = spec.k;
  gp.seed = Rng(spec.seed).derive(1).seed();
  CnfFormula f = generate_random_ksat(gp);
  Rng removal = Rng(spec.seed).derive(2);

  std::vector<ScanRow> rows;
  std::uint64_t run_idx = 0;
  while (true) {
    double alpha = static_cast<double>(f.clauses.size()) / spec.n;
    if (alpha < spec.alpha_end) break;

    FactorGraph g = build_factor_graph(f);
    DecimationState st(g);
    SpConfig cfg{spec.t_max, spec.eps, Rng(spec.seed).derive(0x800 + run_idx++).seed()};
    auto [rep, s] = run_sp(st, cfg);

    ScanRow row;
    row.alpha = alpha;
    row.m_active = static_cast<std::int32_t>(f.clauses.size());
    row.status = rep.status;
    row.sweeps = rep.sweeps;
    row.sigma_per_var = std::numeric_limits<double>::quiet_NaN();
    if (rep.status == RunStatus::Converged) {
      row.max_eta = max_survey(st, s);
      try {
        row.sigma_per_var = compute_complexity(st, s).per_unfixed_var;
      } catch (const std::domain_error&) {
      }
    }
    rows.push_back(row);

    for (std::int32_t r = 0; r < spec.step_clauses && !f.clauses.empty(); ++r) {
      std::size_t pick = removal.below(f.clauses.size());
      f.clauses[pick] = std::move(f.clauses.back());
      f.clauses.pop_back();
    }
    if (f.clauses.empty()) break;
  }
  return rows;
}

const char* to_string(SidStatus s) {
  switch (s) {
    case SidStatus::Sat: return "SAT";
    case SidStatus::SpUnconverged: return "SP_UNCONVERGED";
    case SidStatus::ProbablyUnsat: return "PROBABLY_UNSAT";
    case SidStatus::WalksatGiveUp: return "WALKSAT_GIVE_UP";
  }
  return "?";
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "CONVERGED";
    case RunStatus::Unconverged: return "UNCONVERGED";
    case RunStatus::Contradiction: return "CONTRADICTION";
  }
  return "?";
}

void write_table_csv(const TableSpec& spec, const TableResult& result,
                     std::ostream& out) {
  out << "# schema: satmp/table/v1\n";
  out << "row_type,cell,n,alpha,f,instance,seed,status,rounds,sp_sweeps,"
         "walksat_flips,wall_ms,solved_fraction,mean_sp_sweeps_solved\n";
  for (const TableRow& r : result.rows) {
    const TableCell& cell = spec.cells[r.cell];
    out << "instance," << r.cell << ',' << cell.n << ',' << cell.alpha << ','
        << cell.fix_fraction << ',' << r.instance << ',' << r.seed << ','
        << to_string(r.status) << ',' << r.rounds << ',' << r.sp_sweeps << ','
        << r.walksat_flips << ',' << r.wall_ms << ",,\n";
  }
  for (const TableCellSummary& s : result.cells) {
    const TableCell& cell = spec.cells[s.cell];
    out << "aggregate," << s.cell << ',' << cell.n << ',' << cell.alpha << ','
        << cell.fix_fraction << ",,,,,,,," << s.solved_fraction << ','
        << s.mean_sp_sweeps_solved << '\n';
  }
}

void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << "# schema: satmp/scan/v1\n";
  out << "alpha,m_active,status,sweeps,max_eta,sigma_per_var\n";
  for (const ScanRow& r : rows)
    out << r.alpha << ',' << r.m_active << ',' << to_string(r.status) << ','
        << r.sweeps << ',' << r.max_eta << ',' << r.sigma_per_var << '\n';
}

void write_sid_trace_csv(const SidResult& result, std::ostream& out) {
  out << "# schema: satmp/sid-trace/v1\n";
  out << "round,sp_sweeps,max_eta,sigma,sigma_per_var,max_bias,fixed_by_bias,"
         "fixed_by_up,unfixed_after,active_clauses_after,n_under,n_biased,"
         "n_balanced,n_mixed\n";
  for (const SidRound& r : result.trace)
    out << r.round << ',' << r.sp_sweeps << ',' << r.max_eta << ',' << r.sigma
        << ',' << r.sigma_per_var << ',' << r.max_bias << ',' << r.fixed_by_bias
        << ',' << r.fixed_by_up << ',' << r.unfixed_after << ','
        << r.active_clauses_after << ',' << r.n_under << ',' << r.n_biased << ','
        << r.n_balanced << ',' << r.n_mixed << '\n';
}

}  // namespace satmp
