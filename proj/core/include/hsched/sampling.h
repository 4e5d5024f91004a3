#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hsched {

enum class DistributionKind { kUniform, kTruncatedNormal, kShiftedTruncatedNormal };

std::string_view to_string(DistributionKind kind);
// Accepts "uniform", "truncated_normal", "shifted_truncated_normal".
DistributionKind parse_distribution_kind(std::string_view name);

// Realization distribution on the fixed support [-1, 1]. `mean` and `std_dev`
// are the parameters of the untruncated normal; ignored for uniform.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::kUniform;
  double mean = 0.0;
  double std_dev = 0.4;

  static DistributionSpec uniform() { return {DistributionKind::kUniform, 0.0, 0.4}; }
  static DistributionSpec truncated_normal(double std_dev = 0.4) {
    return {DistributionKind::kTruncatedNormal, 0.0, std_dev};
  }
  static DistributionSpec shifted_truncated_normal(double mean = 0.6, double std_dev = 0.4) {
    return {DistributionKind::kShiftedTruncatedNormal, mean, std_dev};
  }
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;
// Derives a substream seed from a master seed and a path of tags. The result
// depends only on the tag values, never on how many other streams exist.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) noexcept;
std::uint64_t hash_tag(std::string_view tag) noexcept;

// Portable sampler: mt19937_64 bits with explicit conversions, so identical
// seeds give identical doubles on every standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Standard normal by the Marsaglia polar method.
  double standard_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// n draws in [-1, 1]. Truncated kinds redraw until the sample lies inside
// the support. Throws std::invalid_argument for n == 0 or std_dev <= 0.
std::vector<double> sample_realization(const DistributionSpec& spec, std::uint64_t seed, std::size_t n);

}  // namespace hsched
