#include "hsched/forecast.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsched {

std::vector<ForecastInterval> build_base_profile(const TimeGrid& grid, const ProfileSpec& profile) {
  if (!(profile.daily_kwh > 0.0)) throw std::invalid_argument("daily PV energy must be positive");
  if (!(profile.alpha_pv >= 0.0 && profile.alpha_pv < 1.0))
    throw std::invalid_argument("alpha_pv must lie in [0, 1)");
  if (profile.sunset_slot > grid.slots_per_day() || profile.sunrise_slot + 2 > profile.sunset_slot)
    throw std::invalid_argument("need sunrise_slot + 2 <= sunset_slot <= slots_per_day");

  const std::size_t spd = grid.slots_per_day();
  const double span = static_cast<double>(profile.sunset_slot - profile.sunrise_slot);
  std::vector<double> shape(spd + 1, 0.0);
  double shape_sum = 0.0;
  for (std::size_t j = profile.sunrise_slot + 1; j < profile.sunset_slot; ++j) {
    shape[j] = std::sin(std::numbers::pi * static_cast<double>(j - profile.sunrise_slot) / span);
    shape_sum += shape[j];
  }

  std::vector<ForecastInterval> base(grid.slots_total());
  for (Slot t = 1; t < base.size(); ++t) {
    const double center = profile.daily_kwh * shape[grid.slot_of_day(t)] / shape_sum;
    base[t] = {center, profile.alpha_pv * center};
  }
  return base;
}

ScenarioTrajectory::ScenarioTrajectory(std::vector<ForecastInterval> base, std::vector<double> u,
                                       ReductionSchedule schedule)
    : base_(std::move(base)), u_(std::move(u)), schedule_(std::move(schedule)) {
  const std::size_t n = base_.size();
  realized_.resize(n);
  row_start_.resize(n + 1);
  for (std::size_t t = 0; t < n; ++t) row_start_[t + 1] = row_start_[t] + t + 1;
  lower_.resize(row_start_[n]);
  upper_.resize(row_start_[n]);
  half_width_.resize(row_start_[n]);

  for (Slot t = 0; t < n; ++t) {
    const double c0 = base_[t].center;
    const double hw0 = base_[t].half_width;
    const double lo0 = c0 - hw0;
    const double up0 = c0 + hw0;
    const double r = c0 + u_[t] * hw0;
    realized_[t] = r;
    const double gap_lo = std::max(0.0, r - lo0);
    const double gap_up = std::max(0.0, up0 - r);
    for (Slot s = 0; s <= t; ++s) {
      const double rho = schedule_(t - s);
      const std::size_t i = row_start_[t] + s;
      lower_[i] = std::min(lo0 + rho * gap_lo, r);
      upper_[i] = std::max(up0 - rho * gap_up, r);
      half_width_[i] = (1.0 - rho) * hw0;
    }
  }
}

void ScenarioTrajectory::check(Slot target, Slot made_at) const {
  if (target >= base_.size() || made_at >= base_.size()) {
    throw std::out_of_range("forecast index (" + std::to_string(target) + ", " + std::to_string(made_at) +
                            ") outside horizon of " + std::to_string(base_.size()) + " slots");
  }
}

std::size_t ScenarioTrajectory::index(Slot target, Slot made_at) const { return row_start_[target] + made_at; }

ForecastInterval ScenarioTrajectory::interval(Slot target, Slot made_at) const {
  check(target, made_at);
  if (made_at > target) return {realized_[target], 0.0};
  const double rho = schedule_(target - made_at);
  const double center = rho * realized_[target] + (1.0 - rho) * base_[target].center;
  return {center, half_width_[index(target, made_at)]};
}

double ScenarioTrajectory::lower(Slot target, Slot made_at) const {
  check(target, made_at);
  return made_at > target ? realized_[target] : lower_[index(target, made_at)];
}

double ScenarioTrajectory::upper(Slot target, Slot made_at) const {
  check(target, made_at);
  return made_at > target ? realized_[target] : upper_[index(target, made_at)];
}

double ScenarioTrajectory::half_width(Slot target, Slot made_at) const {
  check(target, made_at);
  return made_at > target ? 0.0 : half_width_[index(target, made_at)];
}

ScenarioTrajectory evolve_forecasts(std::span<const ForecastInterval> base, std::span<const double> u,
                                    const ReductionSchedule& schedule) {
  if (base.size() != u.size()) {
    throw std::invalid_argument("base profile has " + std::to_string(base.size()) + " slots but " +
                                std::to_string(u.size()) + " realizations were given");
  }
  if (base.empty()) throw std::invalid_argument("empty horizon");
  for (double x : u) {
    if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("realization outside [-1, 1]");
  }
  for (const auto& iv : base) {
    if (!(iv.half_width >= 0.0)) throw std::invalid_argument("negative forecast half width");
  }
  return ScenarioTrajectory({base.begin(), base.end()}, {u.begin(), u.end()}, schedule);
}

double lower_bound(const ScenarioTrajectory& traj, Slot made_at, Slot target) {
  return traj.lower(target, made_at);
}

}  // namespace hsched
