#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace streamsim {

// One RNG stream per concern, split from the master seed, so toggling one
// feature (e.g. the scheduler) does not shift another's draws.
class RngStream {
 public:
  RngStream() : engine_(0) {}
  RngStream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0)
      : engine_(mix(master_seed, name, index)) {}

  std::mt19937_64& engine() { return engine_; }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  double exponential(double mean) {
    return std::exponential_distribution<double>(1.0 / mean)(engine_);
  }
  double normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }
  double normal_positive(double mean, double stddev) {
    // Truncation by resampling; callers use means safely above zero.
    for (;;) {
      double v = normal(mean, stddev);
      if (v > 0.0) return v;
    }
  }
  // Inverse-CDF sample of a power law p(x) ~ x^-a truncated to [lo, hi].
  double power_law(double lo, double hi, double exponent) {
    double u = uniform(0.0, 1.0);
    double e = 1.0 - exponent;
    if (e == 0.0) return lo * std::pow(hi / lo, u);
    double lo_e = std::pow(lo, e), hi_e = std::pow(hi, e);
    return std::pow(lo_e + u * (hi_e - lo_e), 1.0 / e);
  }
  bool bernoulli(double p) {
    return std::bernoulli_distribution(p)(engine_);
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::string_view name, std::uint64_t index) {
    // FNV-1a over the stream name, then splitmix64 over (seed, hash, index).
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : name) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 1099511628211ULL;
    }
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (h ^ (index + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace streamsim
