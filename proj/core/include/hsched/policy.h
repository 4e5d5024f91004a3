#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hsched/factor.h"
#include "hsched/forecast.h"
#include "hsched/path_solver.h"
#include "hsched/time_grid.h"

namespace hsched {

enum class Approach { kAR, kHR, kPR };

std::string_view to_string(Approach approach);
Approach parse_approach(std::string_view name);

struct ThresholdSpec {
  Approach approach = Approach::kAR;
  double percentile_q = 0.25;
  std::size_t n_history = 10;
  // PR only: re-solve the path every `pr_stride` slots (and after each start).
  std::size_t pr_stride = 1;

  void validate() const;
};

// Linear-interpolation percentile: rank q * (n - 1) on the sorted values.
double percentile(std::span<const double> values, double q);

// Arc weights of an optimal path, without the final arc into the sink.
std::vector<double> path_contributions(const PathSolution& path);

// Percentile of the arc weights of the optimal path on the average-realization
// gains. k_global bounds the starts over the whole horizon.
double ar_threshold(std::span<const ForecastInterval> base, const ReductionSchedule& schedule,
                    const TimeGrid& grid, std::size_t k_global, double q);

// Pooled optimal-path contributions of hindsight solves over history samples.
std::vector<double> hr_contributions(std::span<const ScenarioTrajectory> samples, const TimeGrid& grid,
                                     std::size_t k_global);
double hr_threshold(std::span<const ScenarioTrajectory> samples, const TimeGrid& grid,
                    std::size_t k_global, double q);

enum class Decision { kStart, kSkip, kMandatoryStart, kBudgetExhausted };

std::string_view to_string(Decision decision);

struct SlotRecord {
  Slot slot = 0;
  double contribution = 0.0;
  double factor = 1.0;
  double factored_threshold = 0.0;
  Decision decision = Decision::kSkip;
  // Starts already made on this slot's day before the decision.
  std::size_t starts_before = 0;
  // Mandatory start made with the daily budget already spent.
  bool over_budget = false;
};

struct DecisionTrace {
  std::vector<SlotRecord> records;  // one per slot 1..T
  std::vector<Slot> starts;
};

struct PolicyConfig {
  ThresholdSpec threshold;
  FactorSpec factor;
  std::size_t k_per_day = 12;
};

// Online start/skip loop over slots 1..T.
//
// Mandatory slots always start and count against the daily budget. A
// non-mandatory slot starts iff the day still has budget beyond the
// mandatory slots remaining later that day and its contribution is positive
// and at least factor * tau. AR/HR contributions are realized lower-bound
// gains since the last start; PR re-solves the path from the last start and
// scores 1 iff the current slot lies on it (tau is ignored and taken as 1).
DecisionTrace run_online(const ScenarioTrajectory& traj, const PolicyConfig& policy, const TimeGrid& grid,
                         double tau);

}  // namespace hsched
