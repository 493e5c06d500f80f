#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dstfuse/error.hpp"
#include "dstfuse/io.hpp"
#include "dstfuse/report.hpp"

namespace dstfuse {

struct FixtureSpec {
  std::size_t classes = 10;
  std::size_t models = 3;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
};

// Draws on top of mt19937_64's raw output; the standard distributions are not
// reproducible across library implementations.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n) by rejection.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  // Standard normal via Box-Muller; the second variate is kept for the next call.
  double normal() {
    if (cached_) {
      cached_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    cached_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool cached_ = false;
};

inline std::string fixture_sample_id(std::size_t i, std::size_t samples) {
  const std::size_t width = std::to_string(samples - 1).size();
  std::string digits = std::to_string(i);
  return "s" + std::string(width - digits.size(), '0') + digits;
}

inline std::string fixture_model_file(std::size_t j) { return "model_" + std::to_string(j) + ".csv"; }

// Writes model_<j>.csv for every model plus labels.csv. Model j scores each sample as
// signal_j * one_hot(label) + N(0, 1) noise per entry, signal_j ~ U[1.5, 3.5].
inline void generate_fixture(const FixtureSpec& spec, const std::filesystem::path& out_dir) {
  if (spec.classes < 2 || spec.models < 1 || spec.samples < 1)
    throw Error(Errc::BadDimension, "need classes >= 2, models >= 1, samples >= 1");

  FixtureRng rng(spec.seed);
  std::vector<double> signal(spec.models);
  for (auto& s : signal) s = rng.uniform(1.5, 3.5);
  std::vector<std::size_t> labels(spec.samples);
  for (auto& l : labels) l = rng.index(spec.classes);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create '" + out_dir.string() + "': " + ec.message());

  std::string header = "sample_id";
  for (std::size_t c = 0; c < spec.classes; ++c) header += ",c" + std::to_string(c);
  header += "\n";

  for (std::size_t j = 0; j < spec.models; ++j) {
    std::string text = header;
    for (std::size_t i = 0; i < spec.samples; ++i) {
      text += fixture_sample_id(i, spec.samples);
      for (std::size_t c = 0; c < spec.classes; ++c) {
        const double value = (c == labels[i] ? signal[j] : 0.0) + rng.normal();
        text += ',';
        text += format_shortest(value);
      }
      text += '\n';
    }
    write_text_file(out_dir / fixture_model_file(j), text);
  }

  std::string text = "sample_id,label\n";
  for (std::size_t i = 0; i < spec.samples; ++i)
    text += fixture_sample_id(i, spec.samples) + "," + std::to_string(labels[i]) + "\n";
  write_text_file(out_dir / "labels.csv", text);
}

}  // namespace dstfuse
