#include "hmcf/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hmcf/error.hpp"

namespace hmcf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFourPi = 4.0 * std::numbers::pi;

struct Field {
  std::string_view name;
  double DiagRecord::*member;
};

constexpr std::array kFields{
    Field{"t", &DiagRecord::t},
    Field{"area", &DiagRecord::area},
    Field{"area_ode_residual", &DiagRecord::area_ode_residual},
    Field{"gb_residual", &DiagRecord::gb_residual},
    Field{"q", &DiagRecord::q},
    Field{"q_eta", &DiagRecord::q_eta},
    Field{"H_min", &DiagRecord::H_min},
    Field{"H_max", &DiagRecord::H_max},
    Field{"lambda2_min", &DiagRecord::lambda2_min},
    Field{"speed_min", &DiagRecord::speed_min},
    Field{"pinch_C1", &DiagRecord::pinch_C1},
    Field{"pinch_C2", &DiagRecord::pinch_C2},
    Field{"ffx_max", &DiagRecord::ffx_max},
    Field{"h2_integral", &DiagRecord::h2_integral},
    Field{"roundness", &DiagRecord::roundness},
    Field{"amax", &DiagRecord::amax},
    Field{"max_radius", &DiagRecord::max_radius},
    Field{"lambda1_max_nonconvex", &DiagRecord::lambda1_max_nonconvex},
};

constexpr std::array<std::string_view, kFields.size()> make_names() {
  std::array<std::string_view, kFields.size()> n{};
  for (std::size_t i = 0; i < kFields.size(); ++i) n[i] = kFields[i].name;
  return n;
}
constexpr auto kNames = make_names();

}  // namespace

std::span<const std::string_view> diag_field_names() { return kNames; }

double diag_field(const DiagRecord& r, std::size_t column) { return r.*(kFields.at(column).member); }

double DiagRecord::*diag_member(std::string_view name) {
  for (const auto& f : kFields) {
    if (f.name == name) return f.member;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown monitor field " + std::string(name));
}

PinchFit fit_pinching(std::span<const double> lambda1, std::span<const double> lambda2) {
  double small_min = kInf;
  for (double v : lambda2) small_min = std::min(small_min, v);
  PinchFit best{kInf, kInf};
  // 0.125 .. 1024 in steps of 2^(1/16)
  for (int k = 0; k <= 13 * 16; ++k) {
    const double C1 = 0.125 * std::exp2(k / 16.0);
    if (small_min < -C1) continue;
    double C2 = 0.0;
    for (std::size_t i = 0; i < lambda1.size(); ++i) C2 = std::max(C2, lambda1[i] - C1 * lambda2[i]);
    if (C1 + C2 < best.C1 + best.C2) best = {C1, C2};
  }
  return best;
}

DiagRecord record(const SurfaceState& state, const FlowParams& params, const DiagRecord* prev) {
  const std::vector<SurfacePoint> pts = sample_surface(state);
  const double t = state.grid.t;
  const double eps = params.epsilon;

  DiagRecord r;
  r.t = t;
  r.q = kInf;
  r.q_eta = kInf;
  r.H_min = kInf;
  r.H_max = -kInf;
  r.lambda2_min = kInf;
  r.speed_min = kInf;
  r.max_radius = state.grid.max_radius();
  double gb = 0.0;
  double l1_max = -kInf;
  std::vector<double> big;
  std::vector<double> small;
  big.reserve(pts.size());
  small.reserve(pts.size());
  for (const auto& p : pts) {
    const CurvaturePoint& c = p.curv;
    const double l1 = std::max(c.lambda1, c.lambda2);
    const double l2 = std::min(c.lambda1, c.lambda2);
    const double speed = c.speed + eps * c.H;
    r.area += p.weight;
    gb += c.G * p.weight;
    r.h2_integral += c.H * c.H * p.weight;
    r.q = std::min(r.q, p.support + 2.0 * t * speed);
    r.q_eta = std::min(r.q_eta, p.support + 2.0 * (t + params.eta) * speed);
    r.H_min = std::min(r.H_min, c.H);
    r.H_max = std::max(r.H_max, c.H);
    r.lambda2_min = std::min(r.lambda2_min, l2);
    r.speed_min = std::min(r.speed_min, speed);
    r.ffx_max = std::max(r.ffx_max, p.ffx);
    r.amax = std::max(r.amax, std::hypot(l1, l2));
    l1_max = std::max(l1_max, l1);
    if (l2 <= 0.0) r.lambda1_max_nonconvex = std::max(r.lambda1_max_nonconvex, l1);
    big.push_back(l1);
    small.push_back(l2);
  }
  r.gb_residual = gb / kFourPi - 1.0;
  r.roundness = r.lambda2_min > 0.0 ? l1_max / r.lambda2_min : kInf;
  const PinchFit fit = fit_pinching(big, small);
  r.pinch_C1 = fit.C1;
  r.pinch_C2 = fit.C2;
  if (prev != nullptr && t > prev->t) {
    r.area_ode_residual =
        (r.area - prev->area) / (t - prev->t) + kFourPi + eps * 0.5 * (r.h2_integral + prev->h2_integral);
  } else {
    r.area_ode_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

MonotoneReport assert_monotone(std::span<const DiagRecord> series, double DiagRecord::*field, Direction direction,
                               double slack, double t_max) {
  MonotoneReport rep;
  const double sign = direction == Direction::NonDecreasing ? 1.0 : -1.0;
  rep.worst = kInf;
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].t > t_max) break;
    const double step = sign * (series[i].*field - series[i - 1].*field);
    if (step < rep.worst) {
      rep.worst = step;
      rep.worst_time = series[i].t;
      rep.worst_index = i;
    }
  }
  if (rep.worst == kInf) rep.worst = 0.0;
  rep.pass = rep.worst >= -slack;
  return rep;
}

RunExtrema run_extrema(std::span<const DiagRecord> series, double t_max) {
  RunExtrema e{kInf, kInf, 0.0, 0.0, 0.0, kInf, 0.0};
  for (const auto& r : series) {
    if (r.t > t_max) break;
    e.speed_min = std::min(e.speed_min, r.speed_min);
    e.lambda2_min = std::min(e.lambda2_min, r.lambda2_min);
    e.C1_max = std::max(e.C1_max, r.pinch_C1);
    e.C2_max = std::max(e.C2_max, r.pinch_C2);
    e.h2_max = std::max(e.h2_max, r.h2_integral);
    e.H_min = std::min(e.H_min, r.H_min);
    e.lambda1_max_nonconvex = std::max(e.lambda1_max_nonconvex, r.lambda1_max_nonconvex);
  }
  return e;
}

BoundsReport assert_bounds(std::span<const RunExtrema> sweep, double tolerance) {
  BoundsReport rep;
  auto add = [&](std::string name, double RunExtrema::*m) {
    BoundCheck c;
    c.name = std::move(name);
    double lo = kInf, hi = -kInf, mag = 0.0;
    for (const auto& e : sweep) {
      const double v = e.*m;
      c.per_run.push_back(v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      mag = std::max(mag, std::abs(v));
    }
    c.variation = mag > 0.0 ? (hi - lo) / mag : 0.0;
    c.pass = std::isfinite(c.variation) && c.variation < tolerance;
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  };
  add("speed_min", &RunExtrema::speed_min);
  add("lambda2_min", &RunExtrema::lambda2_min);
  add("pinch_C1", &RunExtrema::C1_max);
  add("pinch_C2", &RunExtrema::C2_max);
  add("h2_integral", &RunExtrema::h2_max);
  add("H_min", &RunExtrema::H_min);
  add("lambda1_max_nonconvex", &RunExtrema::lambda1_max_nonconvex);
  return rep;
}

SphereOracle sphere_oracle(double R0, double epsilon, double t) {
  if (!(R0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "R0 must be > 0");
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be >= 0");
  const double c = 1.0 + 4.0 * epsilon;
  const double T = R0 * R0 / c;
  if (!(t < T)) throw Error(ErrorCode::PostExtinctionQuery, "t = " + std::to_string(t) + " >= T = " + std::to_string(T));
  SphereOracle o;
  o.T = T;
  o.R = std::sqrt(R0 * R0 - c * t);
  o.area = kFourPi * o.R * o.R;
  o.kappa = c / (2.0 * o.R);
  o.q = R0 * R0 / o.R;
  return o;
}

RoundnessReport roundness_trend(std::span<const DiagRecord> series, std::optional<double> t_convex, double T,
                                double late_fraction) {
  if (!t_convex) throw Error(ErrorCode::NotApplicable, "run ended before convexification");
  if (series.empty()) throw Error(ErrorCode::NotApplicable, "empty series");
  RoundnessReport rep;
  const double t_stop = T * (1.0 - 1e-3);
  for (const auto& r : series) {
    if (r.t >= *t_convex && r.t <= t_stop && !std::isfinite(r.roundness)) rep.finite_after_convex = false;
  }
  auto nearest = [&](double t) {
    const DiagRecord* best = &series.front();
    for (const auto& r : series) {
      if (std::abs(r.t - t) < std::abs(best->t - t)) best = &r;
    }
    return best;
  };
  const DiagRecord* mid = nearest(0.5 * (*t_convex + T));
  const DiagRecord* late = nearest(T * (1.0 - late_fraction));
  rep.t_mid = mid->t;
  rep.roundness_mid = mid->roundness;
  rep.t_late = late->t;
  rep.roundness_late = late->roundness;
  rep.pass = rep.finite_after_convex && std::isfinite(rep.roundness_late) &&
             std::abs(rep.roundness_late - 1.0) < std::abs(rep.roundness_mid - 1.0);
  return rep;
}

}  // namespace hmcf
