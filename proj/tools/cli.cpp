#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hsched/config.h"
#include "hsched/csv_io.h"
#include "hsched/error.h"
#include "hsched/gain_matrix.h"
#include "hsched/harness.h"
#include "hsched/path_solver.h"
#include "hsched/sweep.h"
#include "json.hpp"

namespace hsched::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPrecedence =
    "Configuration precedence (lowest to highest): built-in defaults, the --config file, "
    "--set key=value overrides (dotted keys, e.g. --set policy.k_per_day=8), then the dedicated "
    "flags --seed and --output-dir. Worker count: --jobs, else $HS_JOBS, else hardware threads.";

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> jobs;
  bool quiet = false;
};

void add_common(CLI::App* app, Common& c, bool needs_config) {
  auto* cfg = app->add_option("--config", c.config, "JSON experiment configuration");
  if (needs_config) cfg->required();
  app->add_option("--set", c.overrides, "Override a config value: dotted.key=value (repeatable)");
  app->add_option("--seed", c.seed, "Seed override (scenario seed, or master seed for sweep)");
  app->add_option("--output-dir", c.output_dir, "Directory for all outputs");
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--quiet", c.quiet, "Suppress progress output");
}

std::size_t resolve_jobs(const Common& c) {
  if (c.jobs) return *c.jobs;
  if (const char* env = std::getenv("HS_JOBS")) {
    std::size_t value = 0;
    std::istringstream in(env);
    if (!(in >> value) || value == 0 || !in.eof()) throw ConfigError("HS_JOBS", "expected a positive integer");
    return value;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

ExperimentConfig load(const Common& c) {
  if (!fs::is_regular_file(c.config)) throw ConfigError("--config", "no such file '" + c.config + "'");
  ExperimentConfig cfg = load_experiment_config(c.config, c.overrides);
  if (c.output_dir) cfg.output_dir = *c.output_dir;
  return cfg;
}

fs::path prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("output_dir", "cannot create directory '" + dir + "'");
  return fs::path(dir);
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::vector<std::size_t> parse_node_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw ConfigError("--mandatory", "cannot parse node '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ConfigError("--mandatory", "empty node list");
  return out;
}

std::vector<ScenarioTrajectory> history_samples(const ScenarioConfig& sc, std::size_t n) {
  std::vector<ScenarioTrajectory> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(sc.make_trajectory(sc.distribution, history_seed(sc.seed, sc.distribution, j)));
  return out;
}

int gen_scenario(const Common& c, std::ostream& out) {
  ExperimentConfig cfg = load(c);
  if (c.seed) cfg.scenario.seed = *c.seed;
  const fs::path dir = prepare_output_dir(cfg.output_dir);

  const ScenarioConfig& sc = cfg.scenario;
  const TimeGrid grid = sc.make_grid();
  const auto schedule = sc.make_schedule();
  const auto base = sc.make_base();
  const ScenarioTrajectory traj = sc.make_trajectory();

  std::string profile = "slot,center,half_width\n";
  for (Slot t = 0; t < base.size(); ++t) {
    profile += std::to_string(t) + ',' + format_double(base[t].center) + ',' + format_double(base[t].half_width) + '\n';
  }
  write_file_atomic(dir / "resolved_config.json", to_json(cfg));
  write_file_atomic(dir / "base_profile.csv", profile);
  write_file_atomic(dir / "trajectory.csv", trajectory_csv(traj));
  write_file_atomic(dir / "gains_ar.csv", gain_matrix_csv(ar_gain_matrix(base, schedule)));
  write_file_atomic(dir / "gains_hr.csv", gain_matrix_csv(hr_gain_matrix(traj)));

  if (!c.quiet) {
    std::vector<std::size_t> m(grid.mandatory().begin(), grid.mandatory().end());
    std::string mandatory;
    for (std::size_t i = 0; i < m.size(); ++i) mandatory += (i ? "," : "") + std::to_string(m[i]);
    out << "slots: " << grid.slots_total() << " (T = " << grid.last_slot() << ")\n"
        << "mandatory: " << mandatory << "\n"
        << "seed: " << sc.seed << "\n"
        << "wrote: " << dir.string() << "/{trajectory,base_profile,gains_ar,gains_hr}.csv\n";
  }
  return kOk;
}

int solve_path(const std::string& gains_path, std::size_t k, const std::string& mandatory_text,
               const std::optional<std::string>& output, const Common& c, std::ostream& out) {
  if (!fs::is_regular_file(gains_path)) throw ConfigError("--gains", "no such file '" + gains_path + "'");
  PathInstance instance;
  instance.mandatory = parse_node_list(mandatory_text);
  instance.k = k;
  instance.gains = parse_gain_matrix_csv(read_file(gains_path));
  try {
    instance.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--mandatory", e.what());
  }
  std::optional<fs::path> csv_path;
  if (output) {
    csv_path = fs::path(*output);
  } else if (c.output_dir) {
    csv_path = prepare_output_dir(*c.output_dir) / "path.csv";
  }

  const PathSolution sol = solve_kpath(instance);
  out << "nodes: " << join(sol.nodes) << "\n";
  out << "arc_weights:";
  for (double w : sol.arc_weights) out << ' ' << format_double(w);
  out << "\n";
  out << "total: " << format_double(sol.total) << "\n";
  if (csv_path) write_file_atomic(*csv_path, path_csv(sol));
  return kOk;
}

int run_policy_cmd(const Common& c, std::ostream& out) {
  ExperimentConfig cfg = load(c);
  if (c.seed) cfg.scenario.seed = *c.seed;
  const fs::path dir = prepare_output_dir(cfg.output_dir);

  const ScenarioConfig& sc = cfg.scenario;
  const TimeGrid grid = sc.make_grid();
  const auto schedule = sc.make_schedule();
  const auto base = sc.make_base();
  const ScenarioTrajectory traj = sc.make_trajectory();
  const PolicyConfig& policy = cfg.policy;
  const std::size_t k_global = policy.k_per_day * grid.days();

  std::vector<ScenarioTrajectory> history;
  if (policy.threshold.approach == Approach::kHR || policy.factor.variant == FactorVariant::kZhouExponential) {
    history = history_samples(sc, policy.threshold.n_history);
  }
  const ResolvedThreshold resolved = resolve_threshold(policy, base, schedule, grid, history);
  PolicyConfig effective = policy;
  effective.factor = resolved.factor;

  DecisionTrace trace;
  const RunResult res = run_policy(traj, effective, grid, resolved.tau, &trace);
  const RunResult opt = run_optpath(traj, grid, k_global);

  nlohmann::json summary = {{"approach", to_string(policy.threshold.approach)},
                            {"tau", resolved.tau},
                            {"objective", res.objective},
                            {"n_starts", res.n_starts},
                            {"starts", res.start_slots},
                            {"optpath_objective", opt.objective},
                            {"optpath_starts", opt.start_slots}};
  write_file_atomic(dir / "resolved_config.json", to_json(cfg));
  write_file_atomic(dir / "trace.csv", trace_csv(trace));
  write_file_atomic(dir / "result.json", summary.dump(2) + "\n");

  if (!c.quiet) {
    out << "approach: " << to_string(policy.threshold.approach) << "\n"
        << "tau: " << format_double(resolved.tau) << "\n"
        << "starts: " << join(res.start_slots) << "\n"
        << "objective: " << format_double(res.objective) << "\n"
        << "optpath_objective: " << format_double(opt.objective) << "\n";
  }
  return kOk;
}

int sweep_cmd(const Common& c, std::ostream& out) {
  ExperimentConfig cfg = load(c);
  if (c.seed) cfg.sweep.master_seed = *c.seed;
  const std::size_t jobs = resolve_jobs(c);
  const fs::path dir = prepare_output_dir(cfg.output_dir);

  SweepOptions options;
  options.jobs = jobs;
  options.trace_dir = dir.string();
  const SweepResult result = sweep(cfg, options);

  write_file_atomic(dir / "resolved_config.json", to_json(cfg));
  write_file_atomic(dir / "sweep.csv", sweep_csv(result));
  write_file_atomic(dir / "failures.csv", failures_csv(result));
  if (!c.quiet) {
    out << "cells: " << result.rows.size() << ", policy runs: " << result.runs
        << ", failures: " << result.failures.size() << "\n"
        << "wrote: " << (dir / "sweep.csv").string() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online scheduling of rolling-horizon iterations.\n" + std::string(kPrecedence), "hsched"};
  app.require_subcommand(1);

  Common gen_c, path_c, policy_c, sweep_c;
  auto* gen = app.add_subcommand("gen-scenario", "Generate a scenario trajectory and its gain matrices");
  add_common(gen, gen_c, true);

  auto* path = app.add_subcommand("solve-path", "Solve the k-arc longest path through mandatory nodes");
  std::string gains_path;
  std::size_t k = 0;
  std::string mandatory = "0";
  std::optional<std::string> output;
  path->add_option("gains,--gains", gains_path, "Gain matrix CSV (s,t,weight)")->required();
  path->add_option("--k", k, "Iteration budget; the path uses at most k + 1 arcs")->required();
  path->add_option("--mandatory", mandatory, "Comma-separated mandatory nodes, starting with 0");
  path->add_option("--output", output, "Write the path as CSV");
  add_common(path, path_c, false);

  auto* pol = app.add_subcommand("run-policy", "Run one online policy on the configured scenario");
  add_common(pol, policy_c, true);

  auto* sw = app.add_subcommand("sweep", "Run the configured experiment grid");
  add_common(sw, sweep_c, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (gen->parsed()) return gen_scenario(gen_c, out);
    if (path->parsed()) return solve_path(gains_path, k, mandatory, output, path_c, out);
    if (pol->parsed()) return run_policy_cmd(policy_c, out);
    if (sw->parsed()) return sweep_cmd(sweep_c, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace hsched::cli
