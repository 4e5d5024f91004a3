#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsched/forecast.h"
#include "hsched/reduction.h"
#include "hsched/time_grid.h"

namespace hsched {

// Dense arc weights w[s][t], s < t, over path nodes 0..T+1. Node T+1 is the
// artificial sink; arcs into it weigh 0.
class GainMatrix {
 public:
  GainMatrix() = default;
  explicit GainMatrix(std::size_t n_nodes) : n_(n_nodes), w_(n_nodes * n_nodes, 0.0) {}

  std::size_t n_nodes() const noexcept { return n_; }
  std::size_t sink() const noexcept { return n_ - 1; }

  double operator()(std::size_t s, std::size_t t) const noexcept { return w_[s * n_ + t]; }
  double& operator()(std::size_t s, std::size_t t) noexcept { return w_[s * n_ + t]; }

  double at(std::size_t s, std::size_t t) const;
  void set(std::size_t s, std::size_t t, double weight);

  // Copy of the arcs among `nodes` (strictly increasing), renumbered 0..n-1.
  GainMatrix restrict_to(std::span<const std::size_t> nodes) const;

  friend bool operator==(const GainMatrix&, const GainMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

// Expected gain from average realizations:
//   w[s][t] = sum_{l=t}^{T} half_width0(l) * (rho(l - t) - rho(l - s)).
GainMatrix ar_gain_matrix(std::span<const ForecastInterval> base, const ReductionSchedule& schedule);

// Hindsight gain from the realized forecast evolution:
//   w[s][t] = sum_{l=t}^{T} (lower(l, t) - lower(l, s)).
GainMatrix hr_gain_matrix(const ScenarioTrajectory& traj);

// Improvement of the lower bounds of all remaining slots when starting at t
// after the last start t_last. Identical to hr_gain_matrix(traj)(t_last, t).
double realized_contribution(const ScenarioTrajectory& traj, Slot t_last, Slot t);

// Mixed realized/expected gains at decision slot `now` after the last start
// t_last. Only arcs (t_last, l) for l >= now and (s, l) for now <= s < l are
// populated; all other entries stay 0.
GainMatrix pr_gain_matrix(const ScenarioTrajectory& traj, Slot now, Slot t_last,
                          const ReductionSchedule& schedule);

}  // namespace hsched
