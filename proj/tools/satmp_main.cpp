// satmp: command-line front-end for the message-passing SAT toolkit.
//
// Exit codes: 10 satisfied (verified assignment), 20 unsatisfiable or
// probably-unsatisfiable, 30 unconverged / search gave up, 0 informational
// reports, 64 usage or input errors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "satmp/bp.hpp"
#include "satmp/experiment.hpp"
#include "satmp/formula.hpp"
#include "satmp/generate.hpp"
#include "satmp/oracle.hpp"
#include "satmp/sid.hpp"
#include "satmp/sp.hpp"
#include "satmp/walksat.hpp"
#include "satmp/wp.hpp"

namespace {

using nlohmann::json;
using namespace satmp;

constexpr int kExitInfo = 0;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUnconverged = 30;
constexpr int kExitUsage = 64;

// Instance source shared by the solver subcommands: a DIMACS file or
// generator parameters, exactly one of the two.
struct SourceOpts {
  std::string dimacs;
  std::int32_t n = 0;
  double alpha = -1;
  std::int32_t m = -1;
  std::int32_t k = 3;
};

void add_source_flags(CLI::App* cmd, SourceOpts& src) {
  cmd->add_option("--dimacs", src.dimacs, "DIMACS CNF input file");
  cmd->add_option("--n", src.n, "variables of a generated random instance");
  cmd->add_option("--alpha", src.alpha, "clause density m/n (with --n)");
  cmd->add_option("--m", src.m, "clause count (with --n, alternative to --alpha)");
  cmd->add_option("--k", src.k, "clause width of a generated instance");
}

std::int32_t clause_count(const SourceOpts& src) {
  if ((src.alpha >= 0) == (src.m >= 0))
    throw std::runtime_error("generator needs exactly one of --alpha or --m");
  if (src.m >= 0) return src.m;
  return static_cast<std::int32_t>(std::lround(src.alpha * src.n));
}

CnfFormula load_source(const SourceOpts& src, std::uint64_t seed) {
  const bool have_file = !src.dimacs.empty();
  const bool have_gen = src.n > 0;
  if (have_file == have_gen)
    throw std::runtime_error("need exactly one input source: --dimacs or --n");
  if (have_file) return parse_dimacs_file(src.dimacs).formula;
  GeneratorParams p;
  p.n_vars = src.n;
  p.n_clauses = clause_count(src);
  p.k = src.k;
  p.seed = seed;
  return generate_random_ksat(p);
}

// Stream selection for subcommands with an --out flag; empty means stdout.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open output file: " + path);
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

json histogram_json(std::int32_t under, std::int32_t biased,
                    std::int32_t balanced, std::int32_t mixed) {
  return json{{"under_constrained", under},
              {"biased", biased},
              {"balanced", balanced},
              {"mixed", mixed}};
}

int run_gen_cmd(const SourceOpts& src, std::uint64_t seed,
                const std::string& out_path) {
  if (src.n <= 0) throw std::runtime_error("gen needs --n > 0");
  GeneratorParams p;
  p.n_vars = src.n;
  p.n_clauses = clause_count(src);
  p.k = src.k;
  p.seed = seed;
  CnfFormula f = generate_random_ksat(p);
  OutStream out(out_path);
  out.get() << "c random k-sat n=" << p.n_vars << " m=" << p.n_clauses
            << " k=" << p.k << " seed=" << p.seed << '\n';
  emit_dimacs(f, out.get());
  return kExitInfo;
}

int run_wp_cmd(const SourceOpts& src, std::int32_t t_max, std::uint64_t seed) {
  CnfFormula f = load_source(src, seed);
  FactorGraph g = build_factor_graph(f);
  DecimationState st(g);
  auto [rep, w] = run_wp(st, WpConfig{t_max, seed});
  json j{{"status", to_string(rep.status)}, {"sweeps", rep.sweeps}};
  if (rep.status != RunStatus::Converged) {
    print_json(j);
    return kExitUnconverged;
  }
  FieldSummary fields = local_fields(st, w);
  std::int64_t nonzero = 0;
  for (std::uint8_t u : w.u) nonzero += u;
  j["H"] = fields.H;
  j["c"] = fields.c;
  j["u_nonzero_count"] = nonzero;
  print_json(j);
  return kExitInfo;
}

int run_bp_cmd(const SourceOpts& src, std::int32_t t_max, double eps,
               std::uint64_t seed) {
  CnfFormula f = load_source(src, seed);
  FactorGraph g = build_factor_graph(f);
  DecimationState st(g);
  auto [rep, b] = run_bp(st, BpConfig{t_max, eps, seed});
  json j{{"status", to_string(rep.status)}, {"sweeps", rep.sweeps}};
  if (rep.status == RunStatus::Contradiction) {
    print_json(j);
    return kExitUnsat;
  }
  if (rep.status == RunStatus::Unconverged) {
    print_json(j);
    return kExitUnconverged;
  }
  try {
    EntropyReport ent = bp_entropy(st, b);
    j["mu"] = bp_marginals(st, b);
    j["S"] = ent.entropy;
    j["count"] = ent.count;
  } catch (const std::domain_error& e) {
    j["status"] = to_string(RunStatus::Contradiction);
    j["error"] = e.what();
    print_json(j);
    return kExitUnsat;
  }
  print_json(j);
  return kExitInfo;
}

int run_sp_cmd(const SourceOpts& src, std::int32_t t_max, double eps,
               std::uint64_t seed) {
  CnfFormula f = load_source(src, seed);
  FactorGraph g = build_factor_graph(f);
  DecimationState st(g);
  auto [rep, s] = run_sp(st, SpConfig{t_max, eps, seed});
  json j{{"status", to_string(rep.status)}, {"sweeps", rep.sweeps}};
  if (rep.status == RunStatus::Contradiction) {
    print_json(j);
    return kExitUnsat;
  }
  if (rep.status == RunStatus::Unconverged) {
    print_json(j);
    return kExitUnconverged;
  }
  j["max_eta"] = max_survey(st, s);
  try {
    std::vector<BiasTriple> biases = compute_biases(st, s);
    std::vector<VarCategory> cats = categorize_variables(biases);
    std::int32_t counts[4] = {0, 0, 0, 0};
    for (VarCategory c : cats) ++counts[static_cast<int>(c)];
    double max_bias = 0;
    for (const BiasTriple& b : biases)
      max_bias = std::max(max_bias, std::abs(b.plus - b.minus));
    j["max_bias"] = max_bias;
    j["categories_histogram"] =
        histogram_json(counts[0], counts[1], counts[2], counts[3]);
  } catch (const std::domain_error& e) {
    j["error"] = e.what();
    print_json(j);
    return kExitUnsat;
  }
  try {
    ComplexityReport c = compute_complexity(st, s);
    j["sigma"] = c.total;
    j["sigma_per_var"] = c.per_unfixed_var;
  } catch (const std::domain_error&) {
    j["sigma"] = nullptr;
    j["sigma_per_var"] = nullptr;
  }
  print_json(j);
  return kExitInfo;
}

int run_sid_cmd(const SourceOpts& src, const SidConfig& base, std::uint64_t seed,
                const std::string& trace_path) {
  CnfFormula f = load_source(src, seed);
  FactorGraph g = build_factor_graph(f);
  SidConfig cfg = base;
  cfg.seed = seed;
  SidResult r = sid_solve(g, cfg);

  json j{{"status", to_string(r.status)},
         {"rounds", r.rounds},
         {"total_sp_iterations", r.total_sp_sweeps},
         {"walksat_flips", r.walksat_flips}};
  json sigma_trace = json::array();
  for (const SidRound& round : r.trace) sigma_trace.push_back(round.sigma);
  j["sigma_trace"] = sigma_trace;
  if (!r.trace.empty()) {
    const SidRound& first = r.trace.front();
    j["categories_histogram"] = histogram_json(first.n_under, first.n_biased,
                                               first.n_balanced, first.n_mixed);
  } else {
    j["categories_histogram"] = nullptr;
  }
  if (r.status == SidStatus::Sat) j["assignment"] = r.assignment.to_string();
  if (!trace_path.empty()) {
    OutStream out(trace_path);
    write_sid_trace_csv(r, out.get());
  }
  print_json(j);
  switch (r.status) {
    case SidStatus::Sat: return kExitSat;
    case SidStatus::ProbablyUnsat: return kExitUnsat;
    case SidStatus::SpUnconverged:
    case SidStatus::WalksatGiveUp: return kExitUnconverged;
  }
  return kExitUsage;
}

int run_walksat_cmd(const SourceOpts& src, const WalksatParams& base,
                    std::uint64_t seed) {
  CnfFormula f = load_source(src, seed);
  WalksatParams p = base;
  p.seed = seed;
  SearchOutcome out = walksat(f, p);
  json j{{"status", out.status == SearchStatus::Sat ? "SAT" : "GIVE_UP"},
         {"flips_used", out.flips_used},
         {"best_cost_seen", out.best_cost_seen}};
  if (out.status == SearchStatus::Sat)
    j["assignment"] = out.assignment.to_string();
  print_json(j);
  return out.status == SearchStatus::Sat ? kExitSat : kExitUnconverged;
}

int run_oracle_cmd(const SourceOpts& src, std::uint64_t seed, bool count_mode,
                   bool marginals_mode, bool clusters_mode, bool backbone_mode,
                   std::int32_t max_dist) {
  const int modes = int(count_mode) + int(marginals_mode) + int(clusters_mode) +
                    int(backbone_mode);
  if (modes > 1)
    throw std::runtime_error(
        "pick one of --count, --marginals, --clusters, --backbone");
  CnfFormula f = load_source(src, seed);
  SolutionSet s = enumerate_solutions(f);
  json j{{"count", s.count}};
  if (marginals_mode) {
    if (s.count == 0) {
      j["error"] = "unsatisfiable";
      print_json(j);
      return kExitUnsat;
    }
    j["mu"] = exact_marginals(s);
  } else if (backbone_mode) {
    if (s.count == 0) {
      j["error"] = "unsatisfiable";
      print_json(j);
      return kExitUnsat;
    }
    std::string roles;
    for (VarRole r : backbone(s))
      roles += r == VarRole::Forced0 ? '0' : r == VarRole::Forced1 ? '1' : '*';
    j["backbone"] = roles;
  } else if (clusters_mode) {
    ClusterReport rep = cluster_solutions(s, max_dist);
    j["q"] = rep.q;
    j["n_clusters"] = rep.clusters.size();
    json arr = json::array();
    for (const Cluster& c : rep.clusters)
      arr.push_back(json{{"size", c.size}, {"coordinates", c.coordinates}});
    j["clusters"] = arr;
  }
  print_json(j);
  return kExitInfo;
}

int run_table_cmd(const std::vector<std::string>& cell_specs,
                  std::int32_t instances, std::int32_t k, std::uint64_t seed,
                  std::int32_t threads, const SidConfig& solver,
                  const std::string& out_path) {
  TableSpec spec;
  for (const std::string& text : cell_specs) {
    TableCell cell;
    char trailing;
    if (std::sscanf(text.c_str(), "%d:%lf:%lf%c", &cell.n, &cell.alpha,
                    &cell.fix_fraction, &trailing) != 3 ||
        cell.n <= 0)
      throw std::runtime_error("bad --cell, expected n:alpha:f, got: " + text);
    spec.cells.push_back(cell);
  }
  if (instances < 1) throw std::runtime_error("--instances must be >= 1");
  spec.instances = instances;
  spec.k = k;
  spec.seed = seed;
  spec.solver = solver;
  spec.threads = threads;
  TableResult result = run_table_experiment(spec);
  OutStream out(out_path);
  write_table_csv(spec, result, out.get());
  return kExitInfo;
}

int run_scan_cmd(const ScanSpec& spec, const std::string& out_path) {
  if (spec.n <= 0) throw std::runtime_error("scan needs --n > 0");
  if (spec.alpha_start <= spec.alpha_end || spec.alpha_end < 0)
    throw std::runtime_error("scan needs --alpha-start > --alpha-end >= 0");
  if (spec.step_clauses <= 0) throw std::runtime_error("--step must be > 0");
  std::vector<ScanRow> rows = run_complexity_scan(spec);
  OutStream out(out_path);
  write_scan_csv(rows, out.get());
  return kExitInfo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"message-passing SAT toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::int32_t t_max = 1000;
  double eps = 1e-3;
  std::string out_path;

  CLI::App* gen = app.add_subcommand("gen", "emit a random k-SAT instance as DIMACS");
  SourceOpts gen_src;
  gen->add_option("--n", gen_src.n, "variables")->required();
  gen->add_option("--alpha", gen_src.alpha, "clause density m/n");
  gen->add_option("--m", gen_src.m, "clause count (alternative to --alpha)");
  gen->add_option("--k", gen_src.k, "clause width");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* wp = app.add_subcommand("wp", "warning propagation report");
  SourceOpts wp_src;
  add_source_flags(wp, wp_src);
  wp->add_option("--tmax", t_max, "maximum sweeps");
  wp->add_option("--seed", seed, "run seed");

  CLI::App* bp = app.add_subcommand("bp", "belief propagation report");
  SourceOpts bp_src;
  add_source_flags(bp, bp_src);
  bp->add_option("--tmax", t_max, "maximum sweeps");
  bp->add_option("--eps", eps, "convergence threshold");
  bp->add_option("--seed", seed, "run seed");

  CLI::App* sp = app.add_subcommand("sp", "survey propagation report");
  SourceOpts sp_src;
  add_source_flags(sp, sp_src);
  sp->add_option("--tmax", t_max, "maximum sweeps");
  sp->add_option("--eps", eps, "convergence threshold");
  sp->add_option("--seed", seed, "run seed");

  CLI::App* sid = app.add_subcommand("sid", "survey-inspired decimation solver");
  SourceOpts sid_src;
  SidConfig sid_cfg;
  std::string trace_path;
  add_source_flags(sid, sid_src);
  sid->add_option("--tmax", sid_cfg.t_max, "maximum SP sweeps per round");
  sid->add_option("--eps", sid_cfg.eps, "SP convergence threshold");
  sid->add_option("--f", sid_cfg.fix_fraction, "fraction fixed per round");
  sid->add_option("--restarts", sid_cfg.restarts, "extra restarts on non-convergence");
  sid->add_option("--walksat-flips", sid_cfg.walksat.max_flips,
                  "flip budget for the residual search (0: scale with residual size)");
  sid->add_option("--walksat-noise", sid_cfg.walksat.noise,
                  "noise for the residual search");
  sid->add_option("--seed", seed, "run seed");
  sid->add_option("--trace-csv", trace_path, "write per-round trace CSV here");

  CLI::App* ws = app.add_subcommand("walksat", "focused random walk search");
  SourceOpts ws_src;
  WalksatParams ws_params;
  add_source_flags(ws, ws_src);
  ws->add_option("--flips", ws_params.max_flips, "flip budget per try");
  ws->add_option("--noise", ws_params.noise, "random walk probability");
  ws->add_option("--restarts", ws_params.max_restarts, "extra re-randomized tries");
  ws->add_option("--seed", seed, "run seed");

  CLI::App* oracle = app.add_subcommand("oracle", "exact enumeration (<= 30 variables)");
  SourceOpts oracle_src;
  bool count_mode = false, marginals_mode = false, clusters_mode = false,
       backbone_mode = false;
  std::int32_t max_dist = 1;
  add_source_flags(oracle, oracle_src);
  oracle->add_flag("--count", count_mode, "solution count (default)");
  oracle->add_flag("--marginals", marginals_mode, "per-variable P(x=1)");
  oracle->add_flag("--clusters", clusters_mode, "flip-connectivity clusters");
  oracle->add_flag("--backbone", backbone_mode, "forced/free role per variable");
  oracle->add_option("--max-dist", max_dist, "cluster connectivity distance");
  oracle->add_option("--seed", seed, "generator seed");

  CLI::App* table = app.add_subcommand("table", "success-rate grid, CSV output");
  std::vector<std::string> cell_specs;
  std::int32_t instances = 10, table_k = 3, threads = 0;
  SidConfig table_cfg;
  table->add_option("--cell", cell_specs, "grid cell as n:alpha:f (repeatable)")
      ->required();
  table->add_option("--instances", instances, "instances per cell");
  table->add_option("--k", table_k, "clause width");
  table->add_option("--seed", seed, "experiment seed");
  table->add_option("--threads", threads, "worker pool size (0: SATMP_THREADS env)");
  table->add_option("--tmax", table_cfg.t_max, "maximum SP sweeps per round");
  table->add_option("--eps", table_cfg.eps, "SP convergence threshold");
  table->add_option("--restarts", table_cfg.restarts, "solver restarts");
  table->add_option("--walksat-flips", table_cfg.walksat.max_flips,
                    "flip budget for residual search (0: scale with residual size)");
  table->add_option("--walksat-noise", table_cfg.walksat.noise,
                    "noise for residual search");
  table->add_option("--out", out_path, "output CSV file (default stdout)");

  CLI::App* scan = app.add_subcommand("scan", "complexity vs density scan, CSV output");
  ScanSpec scan_spec;
  scan->add_option("--n", scan_spec.n, "variables");
  scan->add_option("--alpha-start", scan_spec.alpha_start, "initial density");
  scan->add_option("--alpha-end", scan_spec.alpha_end, "final density");
  scan->add_option("--step", scan_spec.step_clauses, "clauses removed per step");
  scan->add_option("--k", scan_spec.k, "clause width");
  scan->add_option("--seed", scan_spec.seed, "instance and removal seed");
  scan->add_option("--tmax", scan_spec.t_max, "maximum SP sweeps");
  scan->add_option("--eps", scan_spec.eps, "SP convergence threshold");
  scan->add_option("--out", out_path, "output CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen_cmd(gen_src, seed, out_path);
    if (wp->parsed()) return run_wp_cmd(wp_src, t_max, seed);
    if (bp->parsed()) return run_bp_cmd(bp_src, t_max, eps, seed);
    if (sp->parsed()) return run_sp_cmd(sp_src, t_max, eps, seed);
    if (sid->parsed()) return run_sid_cmd(sid_src, sid_cfg, seed, trace_path);
    if (ws->parsed()) return run_walksat_cmd(ws_src, ws_params, seed);
    if (oracle->parsed())
      return run_oracle_cmd(oracle_src, seed, count_mode, marginals_mode,
                            clusters_mode, backbone_mode, max_dist);
    if (table->parsed())
      return run_table_cmd(cell_specs, instances, table_k, seed, threads,
                           table_cfg, out_path);
    if (scan->parsed()) return run_scan_cmd(scan_spec, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
