#include "hsched/gain_matrix.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hsched {

double GainMatrix::at(std::size_t s, std::size_t t) const {
  if (s >= n_ || t >= n_) throw std::out_of_range("arc outside gain matrix");
  return (*this)(s, t);
}

void GainMatrix::set(std::size_t s, std::size_t t, double weight) {
  if (s >= t || t >= n_) throw std::out_of_range("arc (" + std::to_string(s) + ", " + std::to_string(t) + ") invalid");
  (*this)(s, t) = weight;
}

GainMatrix GainMatrix::restrict_to(std::span<const std::size_t> nodes) const {
  GainMatrix out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= n_ || (i > 0 && nodes[i] <= nodes[i - 1]))
      throw std::invalid_argument("restriction nodes must be increasing and inside the matrix");
    for (std::size_t j = i + 1; j < nodes.size(); ++j) out(i, j) = (*this)(nodes[i], nodes[j]);
  }
  return out;
}

GainMatrix ar_gain_matrix(std::span<const ForecastInterval> base, const ReductionSchedule& schedule) {
  const std::size_t slots = base.size();
  GainMatrix w(slots + 1);
  const std::size_t last = slots - 1;
  const std::size_t reach = schedule.d_max();
  for (Slot t = 1; t <= last; ++t) {
    const Slot l_end = std::min(last, t + reach);
    for (Slot s = 0; s < t; ++s) {
      double sum = 0.0;
      for (Slot l = t; l <= l_end; ++l) {
        sum += base[l].half_width * (schedule(l - t) - schedule(l - s));
      }
      w(s, t) = sum;
    }
  }
  return w;
}

double realized_contribution(const ScenarioTrajectory& traj, Slot t_last, Slot t) {
  if (t_last >= t) throw std::invalid_argument("contribution needs t_last < t");
  const Slot last = traj.last_slot();
  if (t > last) throw std::out_of_range("slot outside horizon");
  const Slot l_end = std::min(last, t + traj.schedule().d_max());
  double sum = 0.0;
  for (Slot l = t; l <= l_end; ++l) sum += traj.lower(l, t) - traj.lower(l, t_last);
  return sum;
}

GainMatrix hr_gain_matrix(const ScenarioTrajectory& traj) {
  GainMatrix w(traj.slots_total() + 1);
  const Slot last = traj.last_slot();
  for (Slot t = 1; t <= last; ++t) {
    for (Slot s = 0; s < t; ++s) w(s, t) = realized_contribution(traj, s, t);
  }
  return w;
}

GainMatrix pr_gain_matrix(const ScenarioTrajectory& traj, Slot now, Slot t_last, const ReductionSchedule& schedule) {
  if (now <= t_last) throw std::invalid_argument("PR gains need t_last < now");
  const Slot last = traj.last_slot();
  if (now > last) throw std::out_of_range("decision slot outside horizon");
  GainMatrix w(traj.slots_total() + 1);
  const std::size_t reach = schedule.d_max();

  // Realized part: the forecasts at `now` are known.
  w(t_last, now) = realized_contribution(traj, t_last, now);

  for (Slot l = now + 1; l <= last; ++l) {
    const Slot k_end = std::min(last, l + reach);
    // Last start to a future slot: current lower bound pushed forward by the
    // average reduction still expected between now and l.
    double from_last = 0.0;
    for (Slot k = l; k <= k_end; ++k) {
      const double expected = traj.lower(k, now) + traj.half_width(k, now) * (schedule(k - l) - schedule(k - now));
      from_last += expected - traj.lower(k, t_last);
    }
    w(t_last, l) = from_last;

    // Future-to-future arcs use the widths of the current snapshot.
    for (Slot s = now; s < l; ++s) {
      double sum = 0.0;
      for (Slot k = l; k <= k_end; ++k) {
        sum += traj.half_width(k, now) * (schedule(k - l) - schedule(k - s));
      }
      w(s, l) = sum;
    }
  }
  return w;
}

}  // namespace hsched
