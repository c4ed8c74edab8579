#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmcf {

enum class ErrorCode {
  GridTooCoarse,
  DegenerateProfile,
  MeanConvexityLost,
  NotStarShaped,
  TipChartFailure,
  SpeedUndefined,
  NotMeanConvexAtScale,
  GradientDegenerate,
  StepCollapse,
  PostExtinctionQuery,
  InvalidArgument,
  ParseError,
  NotApplicable,
  IoError,
};

/// Human-readable tag for an error code ("mean convexity lost", ...).
std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failed condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hmcf
