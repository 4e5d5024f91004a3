#include "hsched/time_grid.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hsched {

namespace {

std::vector<Slot> noon_slots(std::size_t days, std::size_t slots_per_day, bool mandatory_noon) {
  std::vector<Slot> out{0};
  if (!mandatory_noon) return out;
  for (std::size_t d = 0; d < days; ++d) out.push_back(d * slots_per_day + slots_per_day / 2);
  return out;
}

}  // namespace

TimeGrid::TimeGrid(std::size_t days, std::size_t slots_per_day, double slot_minutes, bool mandatory_noon)
    : TimeGrid(days, slots_per_day, slot_minutes, noon_slots(days, slots_per_day, mandatory_noon)) {}

TimeGrid::TimeGrid(std::size_t days, std::size_t slots_per_day, double slot_minutes, std::vector<Slot> mandatory)
    : days_(days), slots_per_day_(slots_per_day), slot_minutes_(slot_minutes), mandatory_(std::move(mandatory)) {
  validate();
}

void TimeGrid::validate() const {
  if (days_ == 0) throw std::invalid_argument("time grid needs at least one day");
  if (slots_per_day_ < 2) throw std::invalid_argument("time grid needs at least two slots per day");
  if (!(slot_minutes_ > 0.0)) throw std::invalid_argument("slot length must be positive");
  if (mandatory_.empty() || mandatory_.front() != 0)
    throw std::invalid_argument("mandatory slots must start with slot 0");
  for (std::size_t i = 1; i < mandatory_.size(); ++i) {
    if (mandatory_[i] <= mandatory_[i - 1])
      throw std::invalid_argument("mandatory slots must be strictly increasing");
  }
  if (mandatory_.back() >= slots_total())
    throw std::invalid_argument("mandatory slot " + std::to_string(mandatory_.back()) + " outside the horizon");
}

bool TimeGrid::is_mandatory(Slot t) const noexcept {
  return std::binary_search(mandatory_.begin(), mandatory_.end(), t);
}

std::size_t TimeGrid::day_of(Slot t) const noexcept { return t == 0 ? 0 : (t - 1) / slots_per_day_; }

std::size_t TimeGrid::slot_of_day(Slot t) const noexcept {
  return t == 0 ? 0 : t - day_of(t) * slots_per_day_;
}

Slot TimeGrid::noon_slot(std::size_t day) const noexcept { return day * slots_per_day_ + slots_per_day_ / 2; }

std::size_t TimeGrid::mandatory_remaining_in_day(Slot t) const noexcept {
  const Slot day_end = (day_of(t) + 1) * slots_per_day_;
  auto first = std::upper_bound(mandatory_.begin(), mandatory_.end(), t);
  auto last = std::upper_bound(mandatory_.begin(), mandatory_.end(), day_end);
  return first < last ? static_cast<std::size_t>(last - first) : 0;
}

}  // namespace hsched
