#include "hsched/sampling.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsched {

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kUniform:
      return "uniform";
    case DistributionKind::kTruncatedNormal:
      return "truncated_normal";
    case DistributionKind::kShiftedTruncatedNormal:
      return "shifted_truncated_normal";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "uniform") return DistributionKind::kUniform;
  if (name == "truncated_normal") return DistributionKind::kTruncatedNormal;
  if (name == "shifted_truncated_normal") return DistributionKind::kShiftedTruncatedNormal;
  throw std::invalid_argument("unknown distribution kind '" + std::string(name) + "'");
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t tag : tags) h = mix64(h ^ mix64(tag));
  return h;
}

std::uint64_t hash_tag(std::string_view tag) noexcept {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double Sampler::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double x, y, s;
  do {
    x = 2.0 * uniform01() - 1.0;
    y = 2.0 * uniform01() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * scale;
  has_spare_ = true;
  return x * scale;
}

std::vector<double> sample_realization(const DistributionSpec& spec, std::uint64_t seed, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  std::vector<double> out;
  out.reserve(n);
  Sampler sampler(seed);

  if (spec.kind == DistributionKind::kUniform) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(2.0 * sampler.uniform01() - 1.0);
    return out;
  }

  if (!(spec.std_dev > 0.0)) throw std::invalid_argument("normal realizations need std_dev > 0");
  if (!std::isfinite(spec.mean)) throw std::invalid_argument("normal realizations need a finite mean");
  const double inv = 1.0 / (spec.std_dev * std::sqrt(2.0));
  const double mass = 0.5 * (std::erfc((-1.0 - spec.mean) * inv) - std::erfc((1.0 - spec.mean) * inv));
  if (!(mass > 1e-9)) throw std::invalid_argument("normal distribution puts no mass on [-1, 1]");

  while (out.size() < n) {
    const double x = spec.mean + spec.std_dev * sampler.standard_normal();
    if (x >= -1.0 && x <= 1.0) out.push_back(x);
  }
  return out;
}

}  // namespace hsched
