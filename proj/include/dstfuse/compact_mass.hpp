#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "dstfuse/error.hpp"
#include "dstfuse/frame.hpp"
#include "dstfuse/mass.hpp"

namespace dstfuse {

// Mass function whose focal elements are restricted to the singletons {c} and the whole frame.
// The family is closed under Dempster's rule, so combination stays O(n) for any frame size.
class CompactMass {
 public:
  CompactMass(std::vector<double> singleton, double theta)
      : singleton_(std::move(singleton)), theta_(theta) {
    if (singleton_.size() < 2)
      throw Error(Errc::TooFewClasses, "compact mass over fewer than 2 classes");
    double total = theta_;
    if (!std::isfinite(theta_)) throw Error(Errc::NotNormalized, "non-finite theta");
    if (theta_ < 0.0) throw Error(Errc::NegativeMass, "theta " + std::to_string(theta_));
    for (double s : singleton_) {
      if (!std::isfinite(s)) throw Error(Errc::NotNormalized, "non-finite singleton mass");
      if (s < 0.0) throw Error(Errc::NegativeMass, "singleton mass " + std::to_string(s));
      total += s;
    }
    if (!(std::abs(total - 1.0) <= kMassSumTolerance))
      throw Error(Errc::NotNormalized, "masses sum to " + std::to_string(total));
  }

  static CompactMass vacuous(std::size_t n) { return {std::vector<double>(n, 0.0), 1.0}; }

  std::size_t frame_size() const noexcept { return singleton_.size(); }
  std::span<const double> singleton() const noexcept { return singleton_; }
  double singleton(std::size_t c) const { return singleton_.at(c); }
  double theta() const noexcept { return theta_; }

  double singleton_total() const noexcept {
    double s = 0.0;
    for (double v : singleton_) s += v;
    return s;
  }

  bool is_vacuous() const noexcept { return theta_ == 1.0; }

  friend bool operator==(const CompactMass&, const CompactMass&) = default;

 private:
  std::vector<double> singleton_;
  double theta_;
};

// Dempster's rule specialised to singleton+Theta masses:
//   {c} & {c} = {c},  {c} & Theta = {c},  Theta & Theta = Theta,  {c} & {c'} = empty (c != c').
inline std::pair<CompactMass, ConflictReport> compact_combine(const CompactMass& m1,
                                                              const CompactMass& m2) {
  const std::size_t n = m1.frame_size();
  if (m2.frame_size() != n)
    throw Error(Errc::FrameMismatch, "combining compact masses of size " + std::to_string(n) +
                                         " and " + std::to_string(m2.frame_size()));
  const auto s1 = m1.singleton();
  const auto s2 = m2.singleton();
  const double t1 = m1.theta();
  const double t2 = m2.theta();

  std::vector<double> out(n);
  double sum1 = 0.0, sum2 = 0.0, dot = 0.0, agreement = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    sum1 += s1[c];
    sum2 += s2[c];
    dot += s1[c] * s2[c];
    out[c] = s1[c] * s2[c] + s1[c] * t2 + t1 * s2[c];
    agreement += out[c];
  }
  const double theta_product = t1 * t2;
  agreement += theta_product;
  const double conflict = std::max(0.0, sum1 * sum2 - dot);

  if (conflict >= 1.0 - kTotalConflictMargin || !(agreement > 0.0))
    throw TotalConflictError(0, conflict);

  for (auto& v : out) v /= agreement;
  return {CompactMass(std::move(out), theta_product / agreement),
          ConflictReport{conflict, 1.0 / agreement}};
}

// Left fold of compact_combine in list order.
inline std::pair<CompactMass, std::vector<ConflictReport>> compact_combine_all(
    std::span<const CompactMass> masses) {
  if (masses.empty()) throw Error(Errc::EmptyList, "nothing to combine");
  CompactMass acc = masses.front();
  std::vector<ConflictReport> reports;
  reports.reserve(masses.size() - 1);
  for (std::size_t i = 1; i < masses.size(); ++i) {
    try {
      auto [next, report] = compact_combine(acc, masses[i]);
      acc = std::move(next);
      reports.push_back(report);
    } catch (const TotalConflictError& e) {
      throw TotalConflictError(i, e.k());
    }
  }
  return {std::move(acc), std::move(reports)};
}

// Same mass expressed as a general MassFunction (frames of at most 16 classes).
inline MassFunction lift_to_general(const CompactMass& m, const Frame& frame) {
  if (frame.size() != m.frame_size())
    throw Error(Errc::FrameMismatch, "compact mass of size " + std::to_string(m.frame_size()) +
                                         " lifted onto a frame of size " +
                                         std::to_string(frame.size()));
  if (frame.size() > kMaxGeneralFrame)
    throw Error(Errc::FrameTooLarge, "cannot lift a " + std::to_string(frame.size()) +
                                         "-class mass into the general engine");
  const std::size_t n = frame.size();
  std::vector<Assignment> focal;
  for (std::size_t c = 0; c < n; ++c)
    if (m.singleton(c) > 0.0) focal.emplace_back(SubsetMask::singleton(n, c), m.singleton(c));
  if (m.theta() > 0.0) focal.emplace_back(SubsetMask::theta(n), m.theta());
  return MassFunction(frame, focal);
}

}  // namespace dstfuse
