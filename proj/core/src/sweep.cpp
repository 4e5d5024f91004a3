#include "hsched/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hsched/csv_io.h"
#include "hsched/error.h"
#include "hsched/gain_matrix.h"
#include "hsched/path_solver.h"

namespace hsched {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string percentile_label(double q) { return format_double(q); }

struct Cell {
  std::size_t dist = 0;
  std::size_t k_index = 0;
  std::string approach;  // AR/HR/PR or baseline name
  Approach policy_approach = Approach::kAR;
  bool baseline = false;
  FactorSpec factor;
  std::optional<double> q;
  double tau = 0.0;
  std::string label;
};

// Threshold inputs shared by every seed of one (distribution, k) pair.
struct PairData {
  std::vector<double> ar_contributions;
  std::vector<double> hr_contributions;
  double zhou_lower = 0.0;
  double zhou_upper = 0.0;
  bool has_hr = false;
  std::string error;
};

template <typename F>
void parallel_for(std::size_t n, std::size_t jobs, F&& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        next.store(n);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);
}

}  // namespace

std::string distribution_label(const DistributionSpec& dist) {
  if (dist.kind == DistributionKind::kUniform) return "uniform";
  return std::string(to_string(dist.kind)) + ":" + format_double(dist.mean) + ":" + format_double(dist.std_dev);
}

std::uint64_t evaluation_seed(std::uint64_t master, const DistributionSpec& dist, std::size_t index) {
  return derive_seed(master, {hash_tag("evaluation"), hash_tag(distribution_label(dist)), index});
}

std::uint64_t history_seed(std::uint64_t master, const DistributionSpec& dist, std::size_t index) {
  return derive_seed(master, {hash_tag("history"), hash_tag(distribution_label(dist)), index});
}

SweepResult sweep(const ExperimentConfig& config, const SweepOptions& options) {
  const ScenarioConfig& sc = config.scenario;
  const SweepGrid& g = config.sweep;
  const TimeGrid grid = sc.make_grid();
  const ReductionSchedule schedule = sc.make_schedule();
  const auto base = sc.make_base();
  const std::vector<std::size_t> mandatory(grid.mandatory().begin(), grid.mandatory().end());
  const std::size_t n_dist = g.distributions.size();
  const std::size_t n_k = g.k_per_day.size();
  const std::size_t n_seeds = g.n_seeds;

  const bool need_hr =
      std::find(g.approaches.begin(), g.approaches.end(), Approach::kHR) != g.approaches.end() ||
      std::any_of(g.factors.begin(), g.factors.end(),
                  [](const FactorSpec& f) { return f.variant == FactorVariant::kZhouExponential; });

  // Phase 1: threshold data per (distribution, k).
  std::vector<std::vector<ScenarioTrajectory>> history_by_dist(n_dist);
  if (need_hr) {
    parallel_for(n_dist, options.jobs, [&](std::size_t d) {
      for (std::size_t j = 0; j < g.n_history; ++j) {
        history_by_dist[d].push_back(sc.make_trajectory(g.distributions[d], history_seed(g.master_seed, g.distributions[d], j)));
      }
    });
  }
  std::vector<PairData> pairs(n_dist * n_k);
  std::vector<std::vector<double>> ar_by_k(n_k);
  std::vector<std::string> ar_error(n_k);
  parallel_for(n_k, options.jobs, [&](std::size_t ki) {
    try {
      PathInstance inst{ar_gain_matrix(base, schedule), mandatory, g.k_per_day[ki] * grid.days()};
      ar_by_k[ki] = path_contributions(solve_kpath(inst));
      if (ar_by_k[ki].empty()) ar_error[ki] = "AR path has no contributions";
    } catch (const std::exception& e) {
      ar_error[ki] = e.what();
    }
  });
  parallel_for(n_dist * n_k, options.jobs, [&](std::size_t i) {
    const std::size_t d = i / n_k;
    const std::size_t ki = i % n_k;
    PairData& pd = pairs[i];
    pd.ar_contributions = ar_by_k[ki];
    pd.error = ar_error[ki];
    if (!need_hr) return;
    try {
      pd.hr_contributions = hr_contributions(history_by_dist[d], grid, g.k_per_day[ki] * grid.days());
      pd.has_hr = !pd.hr_contributions.empty();
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (double c : pd.hr_contributions) {
        if (c > 0.0) lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      pd.zhou_lower = std::isfinite(lo) ? lo : 0.0;
      pd.zhou_upper = hi;
    } catch (const std::exception& e) {
      pd.has_hr = false;
      if (pd.error.empty()) pd.error = e.what();
    }
  });

  // Cells in output order.
  std::vector<Cell> cells;
  for (std::size_t d = 0; d < n_dist; ++d) {
    const std::string dl = distribution_label(g.distributions[d]);
    for (std::size_t ki = 0; ki < n_k; ++ki) {
      const std::string prefix = dl + "_k" + std::to_string(g.k_per_day[ki]) + "_";
      const PairData& pd = pairs[d * n_k + ki];
      for (Approach a : g.approaches) {
        const std::string an(to_string(a));
        if (a == Approach::kPR) {
          for (double q : g.percentiles) {
            Cell c{d, ki, an, a, false, FactorSpec{FactorVariant::kConstant}, q, 1.0, {}};
            c.label = prefix + an + "_constant_q" + percentile_label(q);
            cells.push_back(c);
          }
          continue;
        }
        for (const FactorSpec& f : g.factors) {
          for (double q : g.percentiles) {
            Cell c{d, ki, an, a, false, f, q, kNaN, {}};
            c.label = prefix + an + "_" + std::string(to_string(f.variant)) + "_q" + percentile_label(q);
            const auto& pool = a == Approach::kAR ? pd.ar_contributions : pd.hr_contributions;
            if (f.variant == FactorVariant::kZhouExponential) {
              c.factor.lower = pd.zhou_lower;
              c.factor.upper = pd.zhou_upper;
              if (pd.has_hr && pd.zhou_lower > 0.0) c.tau = 1.0;
            } else if (!pool.empty()) {
              c.tau = percentile(pool, q);
            }
            cells.push_back(c);
          }
        }
      }
      if (g.include_baselines) {
        for (const char* name : {"OptPath", "Dynamic", "Classical"}) {
          Cell c{d, ki, name, Approach::kAR, true, FactorSpec{}, std::nullopt, 0.0, {}};
          c.label = prefix + name;
          cells.push_back(c);
        }
      }
    }
  }

  // Phase 2: one work unit per (distribution, seed); every k and cell of
  // that distribution shares the trajectory.
  const std::size_t n_cells = cells.size();
  std::vector<std::vector<double>> objective(n_cells, std::vector<double>(n_seeds, kNaN));
  std::vector<std::vector<double>> optpath(n_dist * n_k, std::vector<double>(n_seeds, kNaN));
  std::vector<std::string> error(n_cells * n_seeds);
  std::atomic<std::size_t> dominance_checks{0};
  std::atomic<std::size_t> runs{0};

  std::vector<std::vector<std::size_t>> cells_of_dist(n_dist);
  for (std::size_t i = 0; i < n_cells; ++i) cells_of_dist[cells[i].dist].push_back(i);

  const bool traces = g.write_traces && options.trace_dir.has_value();
  if (traces) std::filesystem::create_directories(*options.trace_dir);

  parallel_for(n_dist * n_seeds, options.jobs, [&](std::size_t unit) {
    const std::size_t d = unit / n_seeds;
    const std::size_t seed = unit % n_seeds;
    const ScenarioTrajectory traj =
        sc.make_trajectory(g.distributions[d], evaluation_seed(g.master_seed, g.distributions[d], seed));
    const GainMatrix hindsight = hr_gain_matrix(traj);

    std::vector<std::optional<RunResult>> opt_by_k(n_k);
    std::vector<std::string> opt_err(n_k);
    for (std::size_t ki = 0; ki < n_k; ++ki) {
      try {
        PathInstance inst{hindsight, mandatory, g.k_per_day[ki] * grid.days()};
        opt_by_k[ki] = evaluate(solve_kpath(inst).starts(), traj, "OptPath");
        optpath[d * n_k + ki][seed] = opt_by_k[ki]->objective;
      } catch (const std::exception& e) {
        opt_err[ki] = e.what();
      }
    }
    // PR ignores percentile and factor; run it once per k.
    std::vector<std::optional<std::pair<RunResult, DecisionTrace>>> pr_cache(n_k);

    for (std::size_t ci : cells_of_dist[d]) {
      const Cell& cell = cells[ci];
      const std::size_t k = g.k_per_day[cell.k_index];
      const std::size_t k_global = k * grid.days();
      std::string& err = error[ci * n_seeds + seed];
      try {
        if (!opt_by_k[cell.k_index]) throw InfeasibleError(opt_err[cell.k_index]);
        const RunResult& opt = *opt_by_k[cell.k_index];
        if (cell.baseline) {
          RunResult res;
          if (cell.approach == "OptPath") {
            res = opt;
          } else if (cell.approach == "Dynamic") {
            res = run_dynamic_offline(base, schedule, traj, grid, k_global);
          } else {
            res = run_classical(traj, grid, std::max<std::size_t>(1, grid.slots_per_day() / k));
          }
          objective[ci][seed] = res.objective;
          continue;
        }
        if (std::isnan(cell.tau)) {
          const std::string& why = pairs[d * n_k + cell.k_index].error;
          throw std::runtime_error(why.empty() ? "threshold unavailable" : why);
        }
        PolicyConfig policy;
        policy.threshold.approach = cell.policy_approach;
        policy.threshold.percentile_q = cell.q.value_or(0.0);
        policy.threshold.n_history = g.n_history;
        policy.factor = cell.factor;
        policy.k_per_day = k;

        RunResult res;
        DecisionTrace trace;
        if (cell.policy_approach == Approach::kPR) {
          auto& cached = pr_cache[cell.k_index];
          if (!cached) {
            DecisionTrace t;
            RunResult r = run_policy(traj, policy, grid, 1.0, &t);
            cached.emplace(std::move(r), std::move(t));
          }
          res = cached->first;
          trace = cached->second;
        } else {
          res = run_policy(traj, policy, grid, cell.tau, &trace);
        }
        runs.fetch_add(1);
        dominance_checks.fetch_add(1);
        if (res.objective > opt.objective) {
          throw std::logic_error("policy objective " + format_double(res.objective) + " exceeds hindsight optimum " +
                                 format_double(opt.objective) + " in cell " + cell.label + ", seed " +
                                 std::to_string(seed));
        }
        objective[ci][seed] = res.objective;
        if (traces) {
          write_file_atomic(std::filesystem::path(*options.trace_dir) /
                                ("trace_" + cell.label + "_" + std::to_string(seed) + ".csv"),
                            trace_csv(trace));
        }
      } catch (const std::logic_error&) {
        throw;
      } catch (const std::exception& e) {
        err = e.what();
      }
    }
  });

  SweepResult result;
  result.runs = runs.load();
  result.dominance_checks = dominance_checks.load();
  for (std::size_t ci = 0; ci < n_cells; ++ci) {
    const Cell& cell = cells[ci];
    SweepRow row;
    row.distribution = distribution_label(g.distributions[cell.dist]);
    row.k_per_day = g.k_per_day[cell.k_index];
    row.approach = cell.approach;
    row.factor = cell.baseline ? "none" : std::string(to_string(cell.factor.variant));
    row.percentile = cell.q;
    row.threshold = cell.tau;
    row.objectives = objective[ci];
    row.optpath = optpath[cell.dist * n_k + cell.k_index];

    double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo, opt_sum = 0.0;
    std::size_t opt_n = 0;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const double v = objective[ci][s];
      if (std::isnan(v)) {
        ++row.n_failed;
        result.failures.push_back({cell.label, s, error[ci * n_seeds + s]});
        continue;
      }
      ++row.n_ok;
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (double v : row.optpath) {
      if (!std::isnan(v)) {
        opt_sum += v;
        ++opt_n;
      }
    }
    row.mean_obj = row.n_ok > 0 ? sum / static_cast<double>(row.n_ok) : kNaN;
    row.min_obj = row.n_ok > 0 ? lo : kNaN;
    row.max_obj = row.n_ok > 0 ? hi : kNaN;
    row.optpath_mean = opt_n > 0 ? opt_sum / static_cast<double>(opt_n) : kNaN;
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "distribution,k,approach,factor,percentile,mean_obj,min_obj,max_obj,optpath_mean\n";
  for (const SweepRow& r : result.rows) {
    out += r.distribution + ',' + std::to_string(r.k_per_day) + ',' + r.approach + ',' + r.factor + ',' +
           (r.percentile ? format_double(*r.percentile) : std::string()) + ',' + format_double(r.mean_obj) + ',' +
           format_double(r.min_obj) + ',' + format_double(r.max_obj) + ',' + format_double(r.optpath_mean) + '\n';
  }
  return out;
}

std::string failures_csv(const SweepResult& result) {
  std::string out = "cell,seed,message\n";
  for (const SweepFailure& f : result.failures) {
    std::string msg = f.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out += f.cell + ',' + std::to_string(f.seed_index) + ',' + msg + '\n';
  }
  return out;
}

}  // namespace hsched
