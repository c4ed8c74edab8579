#include "hmcf/error.hpp"

namespace hmcf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::GridTooCoarse: return "grid too coarse";
    case ErrorCode::DegenerateProfile: return "degenerate profile";
    case ErrorCode::MeanConvexityLost: return "mean convexity lost";
    case ErrorCode::NotStarShaped: return "not star-shaped";
    case ErrorCode::TipChartFailure: return "tip chart failure";
    case ErrorCode::SpeedUndefined: return "speed undefined";
    case ErrorCode::NotMeanConvexAtScale: return "not mean convex at scale";
    case ErrorCode::GradientDegenerate: return "gradient degenerate";
    case ErrorCode::StepCollapse: return "step collapse";
    case ErrorCode::PostExtinctionQuery: return "post-extinction query";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::NotApplicable: return "not applicable";
    case ErrorCode::IoError: return "i/o error";
  }
  return "unknown error";
}

namespace {
std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg(to_string(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(compose(code, detail)), code_(code) {}

}  // namespace hmcf
