#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "satmp/sid.hpp"

namespace satmp {

// Success-rate table over a grid of (n, alpha, f) cells, `instances` seeded
// instances each. Instance seeds derive from (seed, cell index, instance
// index), so rows do not depend on execution order or thread count.
struct TableCell {
  std::int32_t n = 0;
  double alpha = 0;
  double fix_fraction = 0.01;
};

struct TableSpec {
  std::vector<TableCell> cells;
  std::int32_t instances = 10;
  std::int32_t k = 3;
  std::uint64_t seed = 0;
  SidConfig solver;   // per-instance seed is overwritten
  std::int32_t threads = 0;  // 0: SATMP_THREADS env var, else hardware
};

struct TableRow {
  std::int32_t cell = 0;
  std::int32_t instance = 0;
  std::uint64_t seed = 0;
  SidStatus status = SidStatus::SpUnconverged;
  std::int32_t rounds = 0;
  std::int64_t sp_sweeps = 0;
  std::int64_t walksat_flips = 0;
  double wall_ms = 0;  // excluded from determinism comparisons
};

struct TableCellSummary {
  std::int32_t cell = 0;
  std::int32_t solved = 0;
  double solved_fraction = 0;
  double mean_sp_sweeps_solved = 0;  // over solved instances only
};

struct TableResult {
  std::vector<TableRow> rows;          // cell-major, instance order
  std::vector<TableCellSummary> cells;
};

TableResult run_table_experiment(const TableSpec& spec);

// Complexity scan: one instance at alpha_start, SP rerun from scratch after
// each removal of `step_clauses` random clauses, down through alpha_end.
// Non-convergence is recorded per row and the scan continues.
struct ScanSpec {
  std::int32_t n = 0;
  double alpha_start = 4.3;
  double alpha_end = 3.8;
  std::int32_t step_clauses = 1000;
  std::int32_t k = 3;
  std::uint64_t seed = 0;  // instance and removal order
  std::int32_t t_max = 1000;
  double eps = 1e-3;
};

struct ScanRow {
  double alpha = 0;           // current clause count / n
  std::int32_t m_active = 0;
  RunStatus status = RunStatus::Unconverged;
  std::int32_t sweeps = 0;
  double max_eta = 0;
  double sigma_per_var = 0;   // NaN when unavailable
};

std::vector<ScanRow> run_complexity_scan(const ScanSpec& spec);

// CSV emission. Schema lines make the formats versioned:
//   "# schema: satmp/table/v1" and "# schema: satmp/scan/v1".
void write_table_csv(const TableSpec& spec, const TableResult& result,
                     std::ostream& out);
void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out);
void write_sid_trace_csv(const SidResult& result, std::ostream& out);

const char* to_string(SidStatus s);
const char* to_string(RunStatus s);

}  // namespace satmp
