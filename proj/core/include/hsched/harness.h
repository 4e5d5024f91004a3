#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hsched/forecast.h"
#include "hsched/policy.h"
#include "hsched/time_grid.h"

namespace hsched {

struct RunResult {
  std::string method;
  std::vector<Slot> start_slots;
  double objective = 0.0;
  std::size_t n_starts = 0;
};

// Sum of realized contributions along the start list, beginning at slot 0.
// Throws std::invalid_argument unless starts are strictly increasing in 1..T.
RunResult evaluate(std::span<const Slot> start_slots, const ScenarioTrajectory& traj,
                   std::string method = "evaluate");

// Fixed step size, merged with the mandatory slots.
RunResult run_classical(const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t step);

// Offline schedule from the average-realization path, evaluated on traj.
RunResult run_dynamic_offline(std::span<const ForecastInterval> base, const ReductionSchedule& schedule,
                              const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t k_global);

// Hindsight-optimal schedule; upper bound for every online run on traj with
// at most k_global starts.
RunResult run_optpath(const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t k_global);

// Online policy run scored like the baselines.
RunResult run_policy(const ScenarioTrajectory& traj, const PolicyConfig& policy, const TimeGrid& grid,
                     double tau, DecisionTrace* trace = nullptr);

// Threshold and effective factor for a configured policy. AR uses the
// average-realization path, HR pools `history`, PR uses 1. The Zhou factor
// takes its bounds from the smallest positive and the largest pooled HR
// contribution and runs with tau = 1.
struct ResolvedThreshold {
  double tau = 0.0;
  FactorSpec factor;
};

ResolvedThreshold resolve_threshold(const PolicyConfig& policy, std::span<const ForecastInterval> base,
                                    const ReductionSchedule& schedule, const TimeGrid& grid,
                                    std::span<const ScenarioTrajectory> history);

}  // namespace hsched
