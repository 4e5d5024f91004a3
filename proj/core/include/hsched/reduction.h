#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hsched {

// Cumulative reduction rho(d) of the forecast-interval width for a forecast
// made d slots ahead, relative to the long-term forecast. Nonincreasing in d,
// zero beyond d_max, and rho(0) < 1.
class ReductionSchedule {
 public:
  // rho(d) = rho_0 * (rho_end / rho_0)^(d / d_max) for d <= d_max, else 0.
  // The endpoints are stored exactly.
  static ReductionSchedule geometric(double rho_0 = 0.70, double rho_end = 0.01,
                                     std::size_t d_max = 8);
  // Explicit table rho(0..n-1); zero beyond.
  static ReductionSchedule from_table(std::vector<double> rho);
  // rho == value for every d (degenerate; used for no-information cases).
  static ReductionSchedule constant(double value, std::size_t d_max);

  double operator()(std::size_t d) const noexcept {
    return d < rho_.size() ? rho_[d] : 0.0;
  }
  // Largest distance with a nonzero entry in the table.
  std::size_t d_max() const noexcept { return rho_.empty() ? 0 : rho_.size() - 1; }
  std::span<const double> table() const noexcept { return rho_; }

 private:
  explicit ReductionSchedule(std::vector<double> rho);

  std::vector<double> rho_;
};

// Free-function form of ReductionSchedule::operator().
inline double reduction_factor(const ReductionSchedule& schedule, std::size_t d) {
  return schedule(d);
}

}  // namespace hsched
