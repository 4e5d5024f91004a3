#include "hsched/policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hsched/gain_matrix.h"

namespace hsched {

std::string_view to_string(Approach approach) {
  switch (approach) {
    case Approach::kAR:
      return "AR";
    case Approach::kHR:
      return "HR";
    case Approach::kPR:
      return "PR";
  }
  return "unknown";
}

Approach parse_approach(std::string_view name) {
  if (name == "AR" || name == "ar") return Approach::kAR;
  if (name == "HR" || name == "hr") return Approach::kHR;
  if (name == "PR" || name == "pr") return Approach::kPR;
  throw std::invalid_argument("unknown approach '" + std::string(name) + "'");
}

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::kStart:
      return "start";
    case Decision::kSkip:
      return "skip";
    case Decision::kMandatoryStart:
      return "mandatory_start";
    case Decision::kBudgetExhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

void ThresholdSpec::validate() const {
  if (!(percentile_q >= 0.0 && percentile_q <= 1.0)) throw std::invalid_argument("percentile must lie in [0, 1]");
  if (approach == Approach::kHR && n_history == 0) throw std::invalid_argument("HR needs at least one history sample");
  if (pr_stride == 0) throw std::invalid_argument("PR stride must be positive");
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty vector");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  if (lo == hi) return sorted[lo];
  return sorted[lo] + (rank - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> path_contributions(const PathSolution& path) {
  if (path.arc_weights.empty()) return {};
  return {path.arc_weights.begin(), path.arc_weights.end() - 1};
}

namespace {

std::vector<std::size_t> mandatory_vector(const TimeGrid& grid) {
  return {grid.mandatory().begin(), grid.mandatory().end()};
}

}  // namespace

double ar_threshold(std::span<const ForecastInterval> base, const ReductionSchedule& schedule, const TimeGrid& grid,
                    std::size_t k_global, double q) {
  if (base.size() != grid.slots_total()) throw std::invalid_argument("base profile does not match the grid");
  PathInstance instance{ar_gain_matrix(base, schedule), mandatory_vector(grid), k_global};
  const auto contributions = path_contributions(solve_kpath(instance));
  return percentile(contributions, q);
}

std::vector<double> hr_contributions(std::span<const ScenarioTrajectory> samples, const TimeGrid& grid,
                                     std::size_t k_global) {
  if (samples.empty()) throw std::invalid_argument("HR threshold needs at least one history sample");
  std::vector<double> pooled;
  for (const auto& sample : samples) {
    if (sample.slots_total() != grid.slots_total()) throw std::invalid_argument("history sample does not match the grid");
    PathInstance instance{hr_gain_matrix(sample), mandatory_vector(grid), k_global};
    const auto arcs = path_contributions(solve_kpath(instance));
    pooled.insert(pooled.end(), arcs.begin(), arcs.end());
  }
  return pooled;
}

double hr_threshold(std::span<const ScenarioTrajectory> samples, const TimeGrid& grid, std::size_t k_global,
                    double q) {
  return percentile(hr_contributions(samples, grid, k_global), q);
}

namespace {

// Re-solves the partial-realization path from the last start and reports
// whether `now` lies on it.
class PartialRealizationOracle {
 public:
  PartialRealizationOracle(const ScenarioTrajectory& traj, const TimeGrid& grid, std::size_t k_per_day,
                           std::size_t stride)
      : traj_(traj), grid_(grid), k_per_day_(k_per_day), stride_(stride) {}

  double contribution(Slot now, Slot t_last, std::size_t starts_today) {
    const bool stale = !solved_ || solved_t_last_ != t_last || now - solved_at_ >= stride_;
    if (stale) solve(now, t_last, starts_today);
    return std::binary_search(on_path_.begin(), on_path_.end(), now) ? 1.0 : 0.0;
  }

 private:
  void solve(Slot now, Slot t_last, std::size_t starts_today) {
    const Slot last = grid_.last_slot();
    std::vector<std::size_t> nodes{t_last};
    for (Slot s = now; s <= last + 1; ++s) nodes.push_back(s);

    std::vector<std::size_t> mandatory{0};
    for (Slot m : grid_.mandatory()) {
      if (m >= now) mandatory.push_back(m - now + 1);
    }
    const std::size_t days_left = grid_.days() - grid_.day_of(now) - 1;
    std::size_t budget = (k_per_day_ - std::min(starts_today, k_per_day_)) + k_per_day_ * days_left;
    budget = std::max(budget, mandatory.size() - 1);

    GainMatrix full = pr_gain_matrix(traj_, now, t_last, traj_.schedule());
    PathInstance instance{full.restrict_to(nodes), std::move(mandatory), budget};
    const PathSolution path = solve_kpath(instance);

    on_path_.clear();
    for (std::size_t idx : path.starts()) on_path_.push_back(nodes[idx]);
    solved_ = true;
    solved_at_ = now;
    solved_t_last_ = t_last;
  }

  const ScenarioTrajectory& traj_;
  const TimeGrid& grid_;
  std::size_t k_per_day_;
  std::size_t stride_;
  bool solved_ = false;
  Slot solved_at_ = 0;
  Slot solved_t_last_ = 0;
  std::vector<Slot> on_path_;
};

}  // namespace

DecisionTrace run_online(const ScenarioTrajectory& traj, const PolicyConfig& policy, const TimeGrid& grid,
                         double tau) {
  policy.threshold.validate();
  const std::size_t k = policy.k_per_day;
  if (k == 0) throw std::invalid_argument("k_per_day must be positive");
  if (traj.slots_total() != grid.slots_total()) throw std::invalid_argument("trajectory does not match the grid");

  const bool partial = policy.threshold.approach == Approach::kPR;
  FactorSpec factor = policy.factor;
  if (partial) {
    factor = FactorSpec{FactorVariant::kConstant};
    tau = 1.0;
  }
  if (factor.variant == FactorVariant::kStepwiseConstant && factor.gap == 0) {
    factor.gap = std::max<std::size_t>(1, grid.slots_per_day() / k);
  }
  factor.validate();
  if (!(tau >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");

  PartialRealizationOracle oracle(traj, grid, k, policy.threshold.pr_stride);

  DecisionTrace trace;
  trace.records.reserve(grid.last_slot());
  Slot t_last = 0;
  std::size_t day = 0;
  std::size_t starts_today = 0;
  for (Slot t = 1; t <= grid.last_slot(); ++t) {
    if (grid.day_of(t) != day) {
      day = grid.day_of(t);
      starts_today = 0;
    }
    SlotRecord rec;
    rec.slot = t;
    rec.starts_before = starts_today;
    const bool mandatory = grid.is_mandatory(t);
    // Keep enough budget for the mandatory slots still ahead today.
    const bool has_budget = starts_today + grid.mandatory_remaining_in_day(t) < k;

    if (!partial) {
      rec.contribution = realized_contribution(traj, t_last, t);
    } else if (!mandatory && has_budget) {
      rec.contribution = oracle.contribution(t, t_last, starts_today);
    }
    rec.factor = factor_value(factor, t, t_last, std::min(starts_today, k), k);
    rec.factored_threshold = rec.factor * tau;

    if (mandatory) {
      rec.decision = Decision::kMandatoryStart;
      rec.over_budget = starts_today >= k;
    } else if (!has_budget) {
      rec.decision = Decision::kBudgetExhausted;
    } else if (rec.contribution > 0.0 && rec.contribution >= rec.factored_threshold) {
      rec.decision = Decision::kStart;
    } else {
      rec.decision = Decision::kSkip;
    }

    if (rec.decision == Decision::kStart || rec.decision == Decision::kMandatoryStart) {
      trace.starts.push_back(t);
      t_last = t;
      ++starts_today;
    }
    trace.records.push_back(rec);
  }
  return trace;
}

}  // namespace hsched
