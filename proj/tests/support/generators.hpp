#pragma once

// Seeded random generators shared by the unit and acceptance suites.

#include <cstdint>
#include <random>
#include <vector>

#include "dstfuse/dstfuse.hpp"

namespace dstfuse::test_support {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool coin(double p = 0.5) { return uniform() < p; }

  // Random mass over a random selection of non-empty subsets.
  MassFunction mass(const Frame& frame, std::size_t max_focal = 6) {
    const std::size_t n = frame.size();
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    const std::size_t count = index(1, max_focal);
    std::vector<Assignment> raw;
    for (std::size_t i = 0; i < count; ++i) {
      const auto bits = static_cast<std::uint32_t>(index(1, full));
      raw.emplace_back(SubsetMask(bits, n), uniform(0.01, 1.0));
    }
    return normalize_mass(frame, raw);
  }

  // Random mass in which every focal element contains `anchor`, so no pair of these conflicts totally.
  MassFunction anchored_mass(const Frame& frame, std::size_t anchor, std::size_t max_focal = 6) {
    const std::size_t n = frame.size();
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    const std::size_t count = index(1, max_focal);
    std::vector<Assignment> raw;
    for (std::size_t i = 0; i < count; ++i) {
      const auto bits = static_cast<std::uint32_t>(index(0, full)) | (std::uint32_t{1} << anchor);
      raw.emplace_back(SubsetMask(bits, n), uniform(0.01, 1.0));
    }
    return normalize_mass(frame, raw);
  }

  // Random singleton+Theta mass with theta >= min_theta. Some singletons are zeroed.
  CompactMass compact(std::size_t n, double min_theta) {
    std::vector<double> s(n);
    double total = 0.0;
    for (auto& v : s) {
      v = coin(0.3) ? 0.0 : uniform();
      total += v;
    }
    const double theta = min_theta + (1.0 - min_theta) * uniform() * uniform();
    if (total == 0.0) return CompactMass::vacuous(n);
    for (auto& v : s) v *= (1.0 - theta) / total;
    double sum = 0.0;
    for (double v : s) sum += v;
    return CompactMass(std::move(s), 1.0 - sum);
  }

  std::vector<double> scores(std::size_t n, double scale = 3.0) {
    std::vector<double> f(n);
    for (auto& v : f) v = uniform(-scale, scale);
    // Make a dominant class common enough to exercise the non-vacuous path.
    if (coin(0.6)) f[index(0, n - 1)] += uniform(0.0, 4.0 * scale * static_cast<double>(n));
    return f;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dstfuse::test_support
