#include "hsched/harness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hsched/gain_matrix.h"
#include "hsched/path_solver.h"

namespace hsched {

RunResult evaluate(std::span<const Slot> start_slots, const ScenarioTrajectory& traj, std::string method) {
  RunResult out;
  out.method = std::move(method);
  Slot prev = 0;
  for (Slot s : start_slots) {
    if (s <= prev) throw std::invalid_argument("start slots must be strictly increasing and after slot 0");
    if (s > traj.last_slot()) throw std::invalid_argument("start slot " + std::to_string(s) + " beyond the horizon");
    out.objective += realized_contribution(traj, prev, s);
    prev = s;
  }
  out.start_slots.assign(start_slots.begin(), start_slots.end());
  out.n_starts = out.start_slots.size();
  return out;
}

RunResult run_classical(const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t step) {
  if (step == 0) throw std::invalid_argument("classical step must be at least 1");
  std::vector<Slot> starts;
  for (Slot t = step; t <= grid.last_slot(); t += step) starts.push_back(t);
  for (Slot m : grid.mandatory()) {
    if (m > 0) starts.push_back(m);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  return evaluate(starts, traj, "Classical");
}

namespace {

std::vector<Slot> optimal_starts(GainMatrix gains, const TimeGrid& grid, std::size_t k_global) {
  PathInstance instance{std::move(gains), {grid.mandatory().begin(), grid.mandatory().end()}, k_global};
  return solve_kpath(instance).starts();
}

}  // namespace

RunResult run_dynamic_offline(std::span<const ForecastInterval> base, const ReductionSchedule& schedule,
                              const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t k_global) {
  const auto starts = optimal_starts(ar_gain_matrix(base, schedule), grid, k_global);
  return evaluate(starts, traj, "Dynamic");
}

RunResult run_optpath(const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t k_global) {
  const auto starts = optimal_starts(hr_gain_matrix(traj), grid, k_global);
  return evaluate(starts, traj, "OptPath");
}

RunResult run_policy(const ScenarioTrajectory& traj, const PolicyConfig& policy, const TimeGrid& grid, double tau,
                     DecisionTrace* trace) {
  DecisionTrace local = run_online(traj, policy, grid, tau);
  RunResult out = evaluate(local.starts, traj, std::string(to_string(policy.threshold.approach)));
  if (trace != nullptr) *trace = std::move(local);
  return out;
}

ResolvedThreshold resolve_threshold(const PolicyConfig& policy, std::span<const ForecastInterval> base,
                                    const ReductionSchedule& schedule, const TimeGrid& grid,
                                    std::span<const ScenarioTrajectory> history) {
  policy.threshold.validate();
  const std::size_t k_global = policy.k_per_day * grid.days();
  ResolvedThreshold out{0.0, policy.factor};
  if (policy.threshold.approach == Approach::kPR) {
    out.tau = 1.0;
    out.factor = FactorSpec{FactorVariant::kConstant};
    return out;
  }
  if (policy.factor.variant == FactorVariant::kZhouExponential) {
    const auto pooled = hr_contributions(history, grid, k_global);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double c : pooled) {
      if (c > 0.0) lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (!std::isfinite(lo)) throw std::invalid_argument("no positive HR contribution to bound the Zhou factor");
    out.factor.lower = lo;
    out.factor.upper = hi;
    out.tau = 1.0;
    return out;
  }
  if (policy.threshold.approach == Approach::kAR) {
    out.tau = ar_threshold(base, schedule, grid, k_global, policy.threshold.percentile_q);
  } else {
    out.tau = hr_threshold(history, grid, k_global, policy.threshold.percentile_q);
  }
  return out;
}

}  // namespace hsched
