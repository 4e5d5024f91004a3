#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hsched {

using Slot = std::size_t;

// Discretized planning horizon. Slot 0 carries the initial solution; slots
// 1..T cover `days` days of `slots_per_day` slots each, so slot t (t >= 1)
// lies on day (t - 1) / slots_per_day.
class TimeGrid {
 public:
  // Mandatory slots default to the noon slot of every day (plus slot 0).
  TimeGrid(std::size_t days, std::size_t slots_per_day, double slot_minutes = 15.0,
           bool mandatory_noon = true);
  TimeGrid(std::size_t days, std::size_t slots_per_day, double slot_minutes,
           std::vector<Slot> mandatory);

  std::size_t days() const noexcept { return days_; }
  std::size_t slots_per_day() const noexcept { return slots_per_day_; }
  double slot_minutes() const noexcept { return slot_minutes_; }

  // Number of slots including slot 0, i.e. T + 1.
  std::size_t slots_total() const noexcept { return days_ * slots_per_day_ + 1; }
  // Index of the last real slot, T.
  Slot last_slot() const noexcept { return days_ * slots_per_day_; }
  // Artificial sink node T + 1 of the path graph.
  Slot sink() const noexcept { return last_slot() + 1; }

  std::span<const Slot> mandatory() const noexcept { return mandatory_; }
  bool is_mandatory(Slot t) const noexcept;

  // Day index of slot t; slot 0 belongs to day 0.
  std::size_t day_of(Slot t) const noexcept;
  // Position within the day, 1..slots_per_day for t >= 1 and 0 for slot 0.
  std::size_t slot_of_day(Slot t) const noexcept;
  // Noon slot of `day`: day * slots_per_day + slots_per_day / 2.
  Slot noon_slot(std::size_t day) const noexcept;

  // Mandatory slots in (t, end of t's day].
  std::size_t mandatory_remaining_in_day(Slot t) const noexcept;

 private:
  void validate() const;

  std::size_t days_;
  std::size_t slots_per_day_;
  double slot_minutes_;
  std::vector<Slot> mandatory_;
};

}  // namespace hsched
