#ifndef SPHGEOM_ERROR_HPP
#define SPHGEOM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphgeom {

/// Failure categories raised by the geometry modules. The CLI reports the
/// name() of the category on stderr.
enum class ErrorCode {
  DegenerateInput,
  CoincidentCircles,
  PointNotOnCircle,
  InvalidDistance,
  OutOfRange,
  Inconsistent,
  Degenerate,
  InvalidElements,
  DegenerateHeight,
  DegenerateTriangle,
  InvalidArea,
  DegenerateBase,
  ArcMissesCircle,
  NotConcyclic,
  NotConcurrent,
  InvalidConfig,
  RelationViolated,
  NoConstruction,
  NoSolution,
  TangentTarget,
  TargetOnCircleAtV,
  DegenerateInstance,
  EmptyLocus,
  DegenerateFoci,
  SingularCoordinate,
  AntipodalEndpoints,
  NoConvergence,
  OutOfDomain,
  PolarStart,
};

constexpr std::string_view name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::CoincidentCircles: return "CoincidentCircles";
    case ErrorCode::PointNotOnCircle: return "PointNotOnCircle";
    case ErrorCode::InvalidDistance: return "InvalidDistance";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::InvalidElements: return "InvalidElements";
    case ErrorCode::DegenerateHeight: return "DegenerateHeight";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::InvalidArea: return "InvalidArea";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::ArcMissesCircle: return "ArcMissesCircle";
    case ErrorCode::NotConcyclic: return "NotConcyclic";
    case ErrorCode::NotConcurrent: return "NotConcurrent";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::NoConstruction: return "NoConstruction";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::TangentTarget: return "TangentTarget";
    case ErrorCode::TargetOnCircleAtV: return "TargetOnCircleAtV";
    case ErrorCode::DegenerateInstance: return "DegenerateInstance";
    case ErrorCode::EmptyLocus: return "EmptyLocus";
    case ErrorCode::DegenerateFoci: return "DegenerateFoci";
    case ErrorCode::SingularCoordinate: return "SingularCoordinate";
    case ErrorCode::AntipodalEndpoints: return "AntipodalEndpoints";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::PolarStart: return "PolarStart";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(sphgeom::name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return sphgeom::name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sphgeom

#endif  // SPHGEOM_ERROR_HPP
