#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dstfuse/error.hpp"

namespace dstfuse {

// Largest frame the general (powerset) engine accepts.
inline constexpr std::size_t kMaxGeneralFrame = 16;

// Frame of discernment: an ordered list of mutually exclusive class labels.
// The position of a label is its canonical class index.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2)
      throw Error(Errc::TooFewClasses, "a frame needs at least 2 classes, got " +
                                           std::to_string(labels_.size()));
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second) throw Error(Errc::DuplicateLabel, "label '" + l + "'");
  }

  // Frame with labels c0..c{n-1}.
  static Frame indexed(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
    return Frame(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::vector<std::string> labels_;
};

inline Frame make_frame(std::vector<std::string> labels) { return Frame(std::move(labels)); }

// Subset of a frame with at most kMaxGeneralFrame classes; bit i set means class i is in the set.
class SubsetMask {
 public:
  using bits_type = std::uint32_t;

  SubsetMask(bits_type bits, std::size_t frame_size) : bits_(bits), frame_size_(frame_size) {
    if (frame_size > kMaxGeneralFrame)
      throw Error(Errc::FrameTooLarge, "subset masks support at most 16 classes, got " +
                                           std::to_string(frame_size));
    if ((bits & ~full_bits(frame_size)) != 0)
      throw Error(Errc::FrameMismatch, "mask has bits outside the frame");
  }

  static SubsetMask empty(std::size_t n) { return {0, n}; }
  static SubsetMask theta(std::size_t n) { return {full_bits(n), n}; }
  static SubsetMask singleton(std::size_t n, std::size_t c) {
    if (c >= n) throw Error(Errc::FrameMismatch, "class index out of range");
    return {bits_type{1} << c, n};
  }
  static SubsetMask of(std::size_t n, std::initializer_list<std::size_t> classes) {
    bits_type bits = 0;
    for (auto c : classes) {
      if (c >= n) throw Error(Errc::FrameMismatch, "class index out of range");
      bits |= bits_type{1} << c;
    }
    return {bits, n};
  }

  bits_type bits() const noexcept { return bits_; }
  std::size_t frame_size() const noexcept { return frame_size_; }

  bool is_empty() const noexcept { return bits_ == 0; }
  bool is_theta() const noexcept { return bits_ == full_bits(frame_size_); }
  std::size_t cardinality() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(std::size_t c) const noexcept { return c < frame_size_ && ((bits_ >> c) & 1U); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < frame_size_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  // Ascending bit-pattern order.
  friend auto operator<=>(const SubsetMask&, const SubsetMask&) = default;

 private:
  static constexpr bits_type full_bits(std::size_t n) {
    return n >= 32 ? ~bits_type{0} : ((bits_type{1} << n) - 1);
  }

  bits_type bits_;
  std::size_t frame_size_;
};

namespace detail {
inline void require_same_frame(const SubsetMask& a, const SubsetMask& b) {
  if (a.frame_size() != b.frame_size())
    throw Error(Errc::FrameMismatch, "subsets of frames of size " + std::to_string(a.frame_size()) +
                                         " and " + std::to_string(b.frame_size()));
}
}  // namespace detail

inline SubsetMask intersection(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return {a.bits() & b.bits(), a.frame_size()};
}

inline SubsetMask set_union(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return {a.bits() | b.bits(), a.frame_size()};
}

// Theta \ a
inline SubsetMask complement(const SubsetMask& a) {
  return {SubsetMask::theta(a.frame_size()).bits() & ~a.bits(), a.frame_size()};
}

inline bool is_subset(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return (a.bits() & ~b.bits()) == 0;
}

inline bool intersects(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return (a.bits() & b.bits()) != 0;
}

// All 2^n subsets of the frame in ascending bit-pattern order.
inline std::vector<SubsetMask> powerset(std::size_t n) {
  if (n > kMaxGeneralFrame)
    throw Error(Errc::FrameTooLarge, "powerset enumeration supports at most 16 classes, got " +
                                         std::to_string(n));
  std::vector<SubsetMask> out;
  const std::uint32_t count = std::uint32_t{1} << n;
  out.reserve(count);
  for (std::uint32_t bits = 0; bits < count; ++bits) out.emplace_back(bits, n);
  return out;
}

inline std::vector<SubsetMask> powerset(const Frame& frame) { return powerset(frame.size()); }

}  // namespace dstfuse
