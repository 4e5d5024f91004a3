#include "hsched/factor.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsched {

std::string_view to_string(FactorVariant variant) {
  switch (variant) {
    case FactorVariant::kConstant:
      return "constant";
    case FactorVariant::kStepwiseConstant:
      return "stepwise_constant";
    case FactorVariant::kLinear:
      return "linear";
    case FactorVariant::kExponential:
      return "exponential";
    case FactorVariant::kQuadratic:
      return "quadratic";
    case FactorVariant::kZhouExponential:
      return "zhou_exponential";
  }
  return "unknown";
}

FactorVariant parse_factor_variant(std::string_view name) {
  for (auto v : {FactorVariant::kConstant, FactorVariant::kStepwiseConstant, FactorVariant::kLinear,
                 FactorVariant::kExponential, FactorVariant::kQuadratic, FactorVariant::kZhouExponential}) {
    if (name == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown factor variant '" + std::string(name) + "'");
}

void FactorSpec::validate() const {
  if (variant == FactorVariant::kConstant) return;
  if (variant == FactorVariant::kZhouExponential) {
    // Bounds come from contribution data, not from the 1-centred band.
    if (!(lower > 0.0)) throw std::invalid_argument("zhou_exponential factor needs L > 0");
    if (!(upper >= lower)) throw std::invalid_argument("zhou_exponential factor needs L <= U");
    return;
  }
  if (!(lower < 1.0 && 1.0 < upper)) throw std::invalid_argument("factor bounds need L < 1 < U");
  if (variant == FactorVariant::kExponential && !(rate > 0.0))
    throw std::invalid_argument("exponential factor needs a positive rate");
}

double factor_at_usage(const FactorSpec& spec, double x) {
  const double lo = spec.lower;
  const double hi = spec.upper;
  switch (spec.variant) {
    case FactorVariant::kConstant:
    case FactorVariant::kStepwiseConstant:
      return 1.0;
    case FactorVariant::kLinear:
      return (hi - lo) * x + lo;
    case FactorVariant::kExponential: {
      // a e^{cx} + b with f(0) = L and f(1) = U.
      const double ec = std::exp(spec.rate);
      const double a = (hi - lo) / (ec - 1.0);
      const double b = (lo * ec - hi) / (ec - 1.0);
      return a * std::exp(spec.rate * x) + b;
    }
    case FactorVariant::kQuadratic: {
      // a (x - 0.5)^2 + b with f(0) = f(1) = L and f(0.5) = U.
      const double a = -4.0 * (hi - lo);
      const double d = x - 0.5;
      return a * d * d + hi;
    }
    case FactorVariant::kZhouExponential: {
      if (!(lo > 0.0)) throw std::invalid_argument("zhou_exponential factor needs L > 0");
      const double knee = 1.0 / (1.0 + std::log(hi / lo));
      if (x <= knee) return lo;
      return std::pow(hi * std::numbers::e / lo, x) * (lo / std::numbers::e);
    }
  }
  return 1.0;
}

double factor_value(const FactorSpec& spec, Slot t, Slot t_last, std::size_t used, std::size_t k) {
  if (k == 0) throw std::invalid_argument("factor needs a positive iteration budget");
  if (used > k) throw std::invalid_argument("more iterations used than budgeted");
  if (t <= t_last) throw std::invalid_argument("factor needs t > t_last");
  if (spec.variant == FactorVariant::kStepwiseConstant) {
    return t - t_last <= spec.gap ? 1.0 : spec.lower;
  }
  const double x = static_cast<double>(used) / static_cast<double>(k);
  return factor_at_usage(spec, x);
}

}  // namespace hsched
