#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace newton_atlas {

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  DegreeMismatch,
  DegenerateMap,
  NotFixed,
  ParabolicPoint,
  LoopTooLarge,
  NotQuadratic,
  NotCubic,
  NonSimpleFixedPoint,
  NotSuperattracting,
  UnsupportedDegree,
  DegenerateTriple,
  TooFewPoints,
  NotNewtonLike,
  Parse,
  Io,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::NotFixed: return "NotFixed";
    case ErrorKind::ParabolicPoint: return "ParabolicPoint";
    case ErrorKind::LoopTooLarge: return "LoopTooLarge";
    case ErrorKind::NotQuadratic: return "NotQuadratic";
    case ErrorKind::NotCubic: return "NotCubic";
    case ErrorKind::NonSimpleFixedPoint: return "NonSimpleFixedPoint";
    case ErrorKind::NotSuperattracting: return "NotSuperattracting";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::NotNewtonLike: return "NotNewtonLike";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace newton_atlas
