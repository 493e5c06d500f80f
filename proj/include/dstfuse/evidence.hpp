#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dstfuse/compact_mass.hpp"
#include "dstfuse/error.hpp"

namespace dstfuse {

// Raw per-class outputs of one model for one sample. Logits or probabilities, any sign.
struct ScoreVector {
  std::vector<double> scores;
  std::string model_id;
};

enum class BuildMode {
  // Kept scores are renormalised to 1 - theta_floor; theta = theta_floor.
  Literal,
  // Kept scores are divided by the total absolute score; the remainder goes to Theta.
  ResidualTheta,
};

inline std::string_view to_string(BuildMode mode) {
  return mode == BuildMode::Literal ? "literal" : "residual-theta";
}

inline BuildMode parse_build_mode(std::string_view text) {
  if (text == "literal") return BuildMode::Literal;
  if (text == "residual-theta" || text == "residual_theta") return BuildMode::ResidualTheta;
  throw Error(Errc::InvalidPolicy, "unknown policy '" + std::string(text) + "'");
}

struct BuildPolicy {
  BuildMode mode = BuildMode::Literal;
  // Mass always reserved on Theta; keeps K < 1 during fusion.
  double theta_floor = 1e-3;

  void validate() const {
    if (!(theta_floor >= 0.0 && theta_floor < 0.5))
      throw Error(Errc::InvalidPolicy,
                  "theta floor must lie in [0, 0.5), got " + std::to_string(theta_floor));
  }
};

// Classes whose score reaches half of the total absolute score. At most two can qualify.
inline std::vector<double> dominant_scores(std::span<const double> scores) {
  double abs_total = 0.0;
  for (double f : scores) abs_total += std::abs(f);
  std::vector<double> kept(scores.size(), 0.0);
  if (abs_total == 0.0) return kept;
  const double threshold = 0.5 * abs_total;
  for (std::size_t c = 0; c < scores.size(); ++c)
    if (scores[c] >= threshold) kept[c] = scores[c];
  return kept;
}

// Converts one model's class scores into a singleton+Theta mass. Samples on which no class
// dominates produce the vacuous mass.
inline CompactMass build_mass(const ScoreVector& input, const BuildPolicy& policy) {
  policy.validate();
  const auto& f = input.scores;
  if (f.size() < 2)
    throw Error(Errc::TooFewClasses, "model '" + input.model_id + "' has " +
                                         std::to_string(f.size()) + " scores");
  double abs_total = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    if (!std::isfinite(f[c]))
      throw Error(Errc::NonFiniteScore,
                  "model '" + input.model_id + "', class " + std::to_string(c));
    abs_total += std::abs(f[c]);
  }
  const std::size_t n = f.size();
  if (abs_total == 0.0) return CompactMass::vacuous(n);

  std::vector<double> kept = dominant_scores(f);
  double kept_total = 0.0;
  for (double k : kept) kept_total += k;
  if (!(kept_total > 0.0)) return CompactMass::vacuous(n);

  const double floor = policy.theta_floor;
  if (policy.mode == BuildMode::Literal) {
    const double scale = (1.0 - floor) / kept_total;
    for (auto& k : kept) k *= scale;
    return CompactMass(std::move(kept), floor);
  }

  for (auto& k : kept) k /= abs_total;
  double singleton_total = kept_total / abs_total;
  if (1.0 - singleton_total < floor) {
    const double scale = (1.0 - floor) / singleton_total;
    for (auto& k : kept) k *= scale;
    return CompactMass(std::move(kept), floor);
  }
  singleton_total = 0.0;
  for (double k : kept) singleton_total += k;
  return CompactMass(std::move(kept), 1.0 - singleton_total);
}

// One mass per model, in model order.
inline std::vector<CompactMass> build_evidence(std::span<const ScoreVector> sample_scores,
                                               const BuildPolicy& policy) {
  if (sample_scores.empty()) throw Error(Errc::EmptyList, "no model scores");
  const std::size_t n = sample_scores.front().scores.size();
  std::vector<CompactMass> out;
  out.reserve(sample_scores.size());
  for (const auto& s : sample_scores) {
    if (s.scores.size() != n)
      throw Error(Errc::LengthMismatch, "model '" + s.model_id + "' has " +
                                            std::to_string(s.scores.size()) + " scores, expected " +
                                            std::to_string(n));
    out.push_back(build_mass(s, policy));
  }
  return out;
}

}  // namespace dstfuse
