#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsched/forecast.h"
#include "hsched/policy.h"
#include "hsched/reduction.h"
#include "hsched/sampling.h"
#include "hsched/time_grid.h"

namespace hsched {

struct GridConfig {
  std::size_t days = 3;
  std::size_t slots_per_day = 96;
  double slot_minutes = 15.0;
  bool mandatory_noon = true;
};

struct ScheduleConfig {
  double rho_0 = 0.70;
  double rho_8 = 0.01;  // value at d_max
  std::size_t d_max = 8;
  // Explicit rho(0..n-1); overrides the geometric form when non-empty.
  std::vector<double> table;
};

struct ScenarioConfig {
  GridConfig grid;
  ProfileSpec profile;
  ScheduleConfig schedule;
  DistributionSpec distribution;
  // Budget of the robust uncertainty set; recorded only.
  std::optional<double> gamma_pv;
  std::uint64_t seed = 1;

  TimeGrid make_grid() const;
  ReductionSchedule make_schedule() const;
  std::vector<ForecastInterval> make_base() const;
  ScenarioTrajectory make_trajectory(const DistributionSpec& dist, std::uint64_t seed) const;
  ScenarioTrajectory make_trajectory() const { return make_trajectory(distribution, seed); }
};

struct SweepGrid {
  std::vector<DistributionSpec> distributions{DistributionSpec::uniform()};
  std::vector<std::size_t> k_per_day{4, 6, 8, 12, 24, 48};
  std::vector<Approach> approaches{Approach::kAR, Approach::kHR};
  std::vector<double> percentiles;  // default 0.00, 0.05, ..., 1.00
  std::vector<FactorSpec> factors{FactorSpec{FactorVariant::kStepwiseConstant}};
  std::size_t n_seeds = 10;
  std::uint64_t master_seed = 1;
  std::size_t n_history = 10;
  bool write_traces = true;
  bool include_baselines = true;
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  PolicyConfig policy;
  SweepGrid sweep;
  std::string output_dir = "out";
};

// Parses a JSON document. Unknown keys and ill-typed values raise ConfigError
// naming the dotted key. Overrides are "dotted.key=value" strings applied on
// top of the document before validation; the value is read as JSON when it
// parses, else as a string.
ExperimentConfig parse_experiment_config(std::string_view json_text,
                                         std::span<const std::string> overrides = {});
ExperimentConfig load_experiment_config(const std::string& path,
                                        std::span<const std::string> overrides = {});

// Fully resolved configuration (defaults filled in) as pretty JSON.
std::string to_json(const ExperimentConfig& config);

}  // namespace hsched
