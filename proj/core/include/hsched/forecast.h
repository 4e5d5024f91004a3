#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsched/reduction.h"
#include "hsched/time_grid.h"

namespace hsched {

// PV forecast interval in absolute energy per slot (kWh). Night slots are
// (0, 0).
struct ForecastInterval {
  double center = 0.0;
  double half_width = 0.0;

  double lower() const noexcept { return center - half_width; }
  double upper() const noexcept { return center + half_width; }
};

struct ProfileSpec {
  double daily_kwh = 11.0;
  // Daylight is the open interval (sunrise_slot, sunset_slot) of slot_of_day.
  std::size_t sunrise_slot = 24;
  std::size_t sunset_slot = 80;
  double alpha_pv = 0.25;
};

// Long-term (initial) forecast per slot: a half-cosine daylight bell whose
// centers sum to `daily_kwh` each day, with half_width = alpha_pv * center.
std::vector<ForecastInterval> build_base_profile(const TimeGrid& grid, const ProfileSpec& profile);

// Nested forecast evolution for one scenario.
//
// Bounds are stored directly so that nesting and containment hold exactly in
// floating point:
//   lower(t, s) = lo0 + rho(t - s) * (r - lo0),  upper(t, s) = up0 - rho(t - s) * (up0 - r)
// Both are monotone in rho under round-to-nearest and are clamped against r.
// half_width(t, s) = (1 - rho(t - s)) * half_width0(t) exactly and
// center(t, s) = rho * r + (1 - rho) * center0(t). For s > t the realized value
// is returned as a degenerate interval.
class ScenarioTrajectory {
 public:
  std::size_t slots_total() const noexcept { return base_.size(); }
  Slot last_slot() const noexcept { return base_.size() - 1; }

  std::span<const ForecastInterval> base() const noexcept { return base_; }
  std::span<const double> u() const noexcept { return u_; }
  std::span<const double> realization() const noexcept { return realized_; }
  const ReductionSchedule& schedule() const noexcept { return schedule_; }

  // Interval for `target` made at `made_at`. Throws std::out_of_range.
  ForecastInterval interval(Slot target, Slot made_at) const;
  double lower(Slot target, Slot made_at) const;
  double upper(Slot target, Slot made_at) const;
  double half_width(Slot target, Slot made_at) const;

  // Slots whose made_at forecast may differ from the base: l < made_at + span().
  std::size_t informative_span() const noexcept { return schedule_.d_max() + 1; }

 private:
  friend ScenarioTrajectory evolve_forecasts(std::span<const ForecastInterval>,
                                             std::span<const double>, const ReductionSchedule&);
  ScenarioTrajectory(std::vector<ForecastInterval> base, std::vector<double> u,
                     ReductionSchedule schedule);

  std::size_t index(Slot target, Slot made_at) const;
  void check(Slot target, Slot made_at) const;

  std::vector<ForecastInterval> base_;
  std::vector<double> u_;
  std::vector<double> realized_;
  ReductionSchedule schedule_;
  // Row-major by target; row t holds made_at = 0..t.
  std::vector<std::size_t> row_start_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> half_width_;
};

// Builds the trajectory from the long-term forecast and the drawn u in [-1, 1].
// r_t = center0(t) + u_t * half_width0(t).
ScenarioTrajectory evolve_forecasts(std::span<const ForecastInterval> base, std::span<const double> u,
                                    const ReductionSchedule& schedule);

// Lower end of the interval for `target` made at `made_at`; the realized value
// once made_at > target.
double lower_bound(const ScenarioTrajectory& traj, Slot made_at, Slot target);

}  // namespace hsched
