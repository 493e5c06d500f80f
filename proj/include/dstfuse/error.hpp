#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dstfuse {

enum class Errc {
  DuplicateLabel,
  TooFewClasses,
  FrameMismatch,
  FrameTooLarge,
  MassOnEmptySet,
  NegativeMass,
  NotNormalized,
  AllZeroMass,
  EmptySetQuery,
  TotalConflict,
  EmptyList,
  NonFiniteScore,
  LengthMismatch,
  InvalidPolicy,
  SchemaError,
  DuplicateSampleId,
  EmptyFile,
  NoCommonSamples,
  ClassCountMismatch,
  LabelOutOfRange,
  BadDimension,
  IoError,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::TooFewClasses: return "TooFewClasses";
    case Errc::FrameMismatch: return "FrameMismatch";
    case Errc::FrameTooLarge: return "FrameTooLarge";
    case Errc::MassOnEmptySet: return "MassOnEmptySet";
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::AllZeroMass: return "AllZeroMass";
    case Errc::EmptySetQuery: return "EmptySetQuery";
    case Errc::TotalConflict: return "TotalConflict";
    case Errc::EmptyList: return "EmptyList";
    case Errc::NonFiniteScore: return "NonFiniteScore";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidPolicy: return "InvalidPolicy";
    case Errc::SchemaError: return "SchemaError";
    case Errc::DuplicateSampleId: return "DuplicateSampleId";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::NoCommonSamples: return "NoCommonSamples";
    case Errc::ClassCountMismatch: return "ClassCountMismatch";
    case Errc::LabelOutOfRange: return "LabelOutOfRange";
    case Errc::BadDimension: return "BadDimension";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

// Every failure in the library is reported as an Error carrying its code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // I/O problems map to exit status 2, everything else is a validation failure.
  bool is_io() const noexcept { return code_ == Errc::IoError; }

 private:
  Errc code_;
};

// Raised by fold operations; records which combination step hit K = 1.
class TotalConflictError : public Error {
 public:
  TotalConflictError(std::size_t step, double k, const std::string& context = {})
      : Error(Errc::TotalConflict,
              (context.empty() ? std::string() : context + ", ") + "step " +
                  std::to_string(step) + ", K=" + std::to_string(k)),
        step_(step),
        k_(k) {}

  std::size_t step() const noexcept { return step_; }
  double k() const noexcept { return k_; }

 private:
  std::size_t step_;
  double k_;
};

}  // namespace dstfuse
