#pragma once

#include <cmath>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dstfuse/error.hpp"
#include "dstfuse/frame.hpp"

namespace dstfuse {

// Tolerance on the total mass accepted by MassFunction.
inline constexpr double kMassSumTolerance = 1e-9;
// Combination is refused once K reaches 1 - kTotalConflictMargin.
inline constexpr double kTotalConflictMargin = 1e-12;
// Focal masses below this after combination are dropped.
inline constexpr double kDropThreshold = 1e-15;

using Assignment = std::pair<SubsetMask, double>;

// Outcome of one application of Dempster's rule.
struct ConflictReport {
  double k = 0.0;
  // 1 / (1 - K); computed from the non-conflicting product mass.
  double renormalizer = 1.0;
};

class MassFunction;
inline std::pair<MassFunction, ConflictReport> combine_pair(const MassFunction& m1,
                                                            const MassFunction& m2);

// Basic probability assignment over the subsets of a frame (at most 16 classes).
// Focal elements are kept sparse, in ascending bit-pattern order, and never include the empty set.
class MassFunction {
 public:
  using FocalMap = std::map<SubsetMask, double>;

  // Accepts assignments whose total is within kMassSumTolerance of 1.
  // Repeated subsets are summed; zero entries are dropped.
  MassFunction(Frame frame, std::span<const Assignment> assignments)
      : frame_(std::move(frame)) {
    double total = collect(assignments);
    if (!(std::abs(total - 1.0) <= kMassSumTolerance))
      throw Error(Errc::NotNormalized, "masses sum to " + std::to_string(total));
  }

  MassFunction(Frame frame, std::initializer_list<Assignment> assignments)
      : MassFunction(std::move(frame), std::span<const Assignment>(assignments.begin(), assignments.size())) {}

  static MassFunction vacuous(const Frame& frame) {
    const Assignment all{SubsetMask::theta(frame.size()), 1.0};
    return MassFunction(frame, std::span<const Assignment>(&all, 1));
  }

  // Divides every mass by the total.
  static MassFunction normalized(Frame frame, std::span<const Assignment> assignments) {
    MassFunction m(std::move(frame));
    const double total = m.collect(assignments);
    if (!(total > 0.0))
      throw Error(Errc::AllZeroMass, "no positive mass to normalize");
    for (auto& [subset, mass] : m.focal_) mass /= total;
    return m;
  }

  const Frame& frame() const noexcept { return frame_; }
  const FocalMap& focal() const noexcept { return focal_; }
  std::size_t frame_size() const noexcept { return frame_.size(); }

  // Mass assigned to exactly this subset (0 for non-focal sets).
  double mass(const SubsetMask& a) const {
    check(a);
    auto it = focal_.find(a);
    return it == focal_.end() ? 0.0 : it->second;
  }

  double total() const noexcept {
    double s = 0.0;
    for (const auto& [subset, mass] : focal_) s += mass;
    return s;
  }

  // Throws FrameMismatch unless `a` is a subset of this frame.
  void check(const SubsetMask& a) const {
    if (a.frame_size() != frame_.size())
      throw Error(Errc::FrameMismatch, "subset of a " + std::to_string(a.frame_size()) +
                                           "-class frame queried against a " +
                                           std::to_string(frame_.size()) + "-class mass");
  }

 private:
  friend std::pair<MassFunction, ConflictReport> combine_pair(const MassFunction&, const MassFunction&);

  explicit MassFunction(Frame frame) : frame_(std::move(frame)) {
    if (frame_.size() > kMaxGeneralFrame)
      throw Error(Errc::FrameTooLarge, "general mass functions support at most 16 classes, got " +
                                           std::to_string(frame_.size()));
  }

  double collect(std::span<const Assignment> assignments) {
    if (frame_.size() > kMaxGeneralFrame)
      throw Error(Errc::FrameTooLarge, "general mass functions support at most 16 classes, got " +
                                           std::to_string(frame_.size()));
    double total = 0.0;
    for (const auto& [subset, mass] : assignments) {
      check(subset);
      if (!std::isfinite(mass)) throw Error(Errc::NotNormalized, "non-finite mass");
      if (mass < 0.0) throw Error(Errc::NegativeMass, "mass " + std::to_string(mass));
      if (subset.is_empty()) {
        if (mass > 0.0) throw Error(Errc::MassOnEmptySet, "m(empty) = " + std::to_string(mass));
        continue;
      }
      if (mass == 0.0) continue;
      focal_[subset] += mass;
      total += mass;
    }
    return total;
  }

  Frame frame_;
  FocalMap focal_;
};

inline MassFunction new_mass(const Frame& frame, std::span<const Assignment> assignments) {
  return MassFunction(frame, assignments);
}

inline MassFunction normalize_mass(const Frame& frame, std::span<const Assignment> assignments) {
  return MassFunction::normalized(frame, assignments);
}

// Total mass of the non-empty subsets of `a`.
inline double bel(const MassFunction& m, const SubsetMask& a) {
  m.check(a);
  double s = 0.0;
  for (const auto& [b, mass] : m.focal())
    if (is_subset(b, a)) s += mass;
  return s;
}

// Total mass of the sets meeting `a`.
inline double pl(const MassFunction& m, const SubsetMask& a) {
  m.check(a);
  double s = 0.0;
  for (const auto& [b, mass] : m.focal())
    if (intersects(b, a)) s += mass;
  return s;
}

inline double doubt(const MassFunction& m, const SubsetMask& a) { return 1.0 - pl(m, a); }

// Total mass of the supersets of `a`.
inline double commonality(const MassFunction& m, const SubsetMask& a) {
  m.check(a);
  if (a.is_empty()) throw Error(Errc::EmptySetQuery, "commonality of the empty set");
  double s = 0.0;
  for (const auto& [b, mass] : m.focal())
    if (is_subset(a, b)) s += mass;
  return s;
}

// Dempster's rule of combination over the full focal sets of both operands.
inline std::pair<MassFunction, ConflictReport> combine_pair(const MassFunction& m1,
                                                            const MassFunction& m2) {
  if (!(m1.frame() == m2.frame()))
    throw Error(Errc::FrameMismatch, "combining masses over different frames");

  MassFunction out(m1.frame());
  double conflict = 0.0;
  double agreement = 0.0;
  for (const auto& [b, mb] : m1.focal()) {
    for (const auto& [c, mc] : m2.focal()) {
      const double product = mb * mc;
      const SubsetMask meet = intersection(b, c);
      if (meet.is_empty()) {
        conflict += product;
      } else {
        out.focal_[meet] += product;
        agreement += product;
      }
    }
  }
  if (conflict >= 1.0 - kTotalConflictMargin || !(agreement > 0.0))
    throw TotalConflictError(0, conflict);

  const double renormalizer = 1.0 / agreement;
  for (auto it = out.focal_.begin(); it != out.focal_.end();) {
    it->second /= agreement;
    if (it->second < kDropThreshold)
      it = out.focal_.erase(it);
    else
      ++it;
  }
  return {std::move(out), ConflictReport{conflict, renormalizer}};
}

// Left fold of combine_pair in list order. Reports one ConflictReport per step (size - 1 in total).
inline std::pair<MassFunction, std::vector<ConflictReport>> combine_all(
    std::span<const MassFunction> masses) {
  if (masses.empty()) throw Error(Errc::EmptyList, "nothing to combine");
  MassFunction acc = masses.front();
  std::vector<ConflictReport> reports;
  reports.reserve(masses.size() - 1);
  for (std::size_t i = 1; i < masses.size(); ++i) {
    try {
      auto [next, report] = combine_pair(acc, masses[i]);
      acc = std::move(next);
      reports.push_back(report);
    } catch (const TotalConflictError& e) {
      throw TotalConflictError(i, e.k());
    }
  }
  return {std::move(acc), std::move(reports)};
}

}  // namespace dstfuse
