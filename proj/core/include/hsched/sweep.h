#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsched/config.h"
#include "hsched/harness.h"

namespace hsched {

struct SweepRow {
  std::string distribution;
  std::size_t k_per_day = 0;
  std::string approach;  // AR, HR, PR or a baseline: OptPath, Dynamic, Classical
  std::string factor;    // factor variant, "none" for baselines
  std::optional<double> percentile;
  double mean_obj = 0.0;
  double min_obj = 0.0;
  double max_obj = 0.0;
  double optpath_mean = 0.0;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
  double threshold = 0.0;
  // Per evaluation seed; NaN where the run failed.
  std::vector<double> objectives;
  std::vector<double> optpath;
};

struct SweepFailure {
  std::string cell;
  std::size_t seed_index = 0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
  std::size_t runs = 0;
  // Policy runs checked against the hindsight bound of their trajectory.
  std::size_t dominance_checks = 0;
};

struct SweepOptions {
  std::size_t jobs = 1;
  // When set and the grid asks for it, trace_<cell>_<seed>.csv files go here.
  std::optional<std::string> trace_dir;
};

// Seed of evaluation trajectory `index` for a distribution.
std::uint64_t evaluation_seed(std::uint64_t master, const DistributionSpec& dist, std::size_t index);
// Seed of history sample `index`; disjoint from evaluation seeds.
std::uint64_t history_seed(std::uint64_t master, const DistributionSpec& dist, std::size_t index);

std::string distribution_label(const DistributionSpec& dist);

// Runs every grid cell over n_seeds trajectories. Each policy objective is
// asserted to stay within the hindsight optimum of its trajectory; a
// violation throws std::logic_error. Other per-cell failures are recorded
// and the sweep continues.
SweepResult sweep(const ExperimentConfig& config, const SweepOptions& options = {});

std::string sweep_csv(const SweepResult& result);
std::string failures_csv(const SweepResult& result);

}  // namespace hsched
