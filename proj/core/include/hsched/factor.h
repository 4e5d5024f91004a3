#pragma once

#include <cstddef>
#include <string_view>

#include "hsched/time_grid.h"

namespace hsched {

enum class FactorVariant {
  kConstant,
  kStepwiseConstant,
  kLinear,
  kExponential,
  kQuadratic,
  kZhouExponential,
};

std::string_view to_string(FactorVariant variant);
FactorVariant parse_factor_variant(std::string_view name);

// Multiplier f(t, x) applied to the threshold. x = used / k is the iteration
// usage rate. R is the slot gap after which the stepwise factor drops to L;
// R == 0 means "use slots_per_day / k_per_day".
struct FactorSpec {
  FactorVariant variant = FactorVariant::kConstant;
  double lower = 0.8;
  double upper = 1.2;
  std::size_t gap = 0;
  double rate = 2.5;

  void validate() const;
};

// Throws std::invalid_argument for k == 0, used > k, t <= t_last, or a
// non-positive lower bound with the Zhou variant.
double factor_value(const FactorSpec& spec, Slot t, Slot t_last, std::size_t used, std::size_t k);

// Usage-rate form of the dynamic factors (every variant except stepwise).
double factor_at_usage(const FactorSpec& spec, double x);

}  // namespace hsched
