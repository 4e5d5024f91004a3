#include "hsched/reduction.h"

#include <cmath>
#include <stdexcept>

namespace hsched {

ReductionSchedule::ReductionSchedule(std::vector<double> rho) : rho_(std::move(rho)) {
  if (rho_.empty()) rho_.push_back(0.0);
  for (std::size_t d = 0; d < rho_.size(); ++d) {
    if (!(rho_[d] >= 0.0 && rho_[d] <= 1.0))
      throw std::invalid_argument("reduction factors must lie in [0, 1]");
    if (d > 0 && rho_[d] > rho_[d - 1])
      throw std::invalid_argument("reduction factors must be nonincreasing in the forecast distance");
  }
  if (!(rho_[0] < 1.0)) throw std::invalid_argument("rho(0) must be below 1");
  // Trailing zeros carry no information; drop them so d_max() is tight.
  while (rho_.size() > 1 && rho_.back() == 0.0) rho_.pop_back();
}

ReductionSchedule ReductionSchedule::geometric(double rho_0, double rho_end, std::size_t d_max) {
  if (!(rho_0 > 0.0 && rho_end > 0.0 && rho_end <= rho_0))
    throw std::invalid_argument("geometric schedule needs 0 < rho_end <= rho_0");
  std::vector<double> rho(d_max + 1);
  rho[0] = rho_0;
  const double ratio = rho_end / rho_0;
  for (std::size_t d = 1; d < d_max; ++d) {
    rho[d] = rho_0 * std::pow(ratio, static_cast<double>(d) / static_cast<double>(d_max));
  }
  if (d_max > 0) rho[d_max] = rho_end;
  return ReductionSchedule(std::move(rho));
}

ReductionSchedule ReductionSchedule::from_table(std::vector<double> rho) { return ReductionSchedule(std::move(rho)); }

ReductionSchedule ReductionSchedule::constant(double value, std::size_t d_max) {
  return ReductionSchedule(std::vector<double>(d_max + 1, value));
}

}  // namespace hsched
