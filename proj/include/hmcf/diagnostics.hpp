#pragma once

// Monitored quantities of a running flow: the area clock, total curvature, the
// star-shape quantity, curvature bounds and pinching, and post-hoc checks over a
// recorded series.

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmcf/profile_geometry.hpp"
#include "hmcf/speed_functions.hpp"

namespace hmcf {

struct DiagRecord {
  double t = 0.0;
  double area = 0.0;
  double area_ode_residual = 0.0;  ///< d(area)/dt + 4 pi + eps * int H^2, by difference with the previous record
  double gb_residual = 0.0;        ///< int G / (4 pi) - 1
  double q = 0.0;                  ///< min <F - c, nu> + 2 t kappa_eps
  double q_eta = 0.0;              ///< min <F - c, nu> + 2 (t + eta) kappa_eps
  double H_min = 0.0;
  double H_max = 0.0;
  double lambda2_min = 0.0;  ///< smallest principal curvature
  double speed_min = 0.0;    ///< min kappa_eps
  double pinch_C1 = 0.0;
  double pinch_C2 = 0.0;
  double ffx_max = 0.0;  ///< max f^2 f_x^2
  double h2_integral = 0.0;
  double roundness = 0.0;  ///< max lambda1 / min lambda2, +inf while not convex
  double amax = 0.0;       ///< max |A|
  double max_radius = 0.0;
  double lambda1_max_nonconvex = 0.0;  ///< max lambda1 where lambda2 <= 0 (0 if none)
};

/// Column names in output order; diag_field(record, k) returns the k-th column.
std::span<const std::string_view> diag_field_names();
double diag_field(const DiagRecord& r, std::size_t column);
/// Pointer to the member named `name`; throws InvalidArgument for unknown names.
double DiagRecord::*diag_member(std::string_view name);

/// Fit of lambda1 <= C1 * lambda2 + C2 (with lambda2 >= -C1) minimizing C1 + C2 over a
/// geometric grid of C1 from 1/8 to 1024 with ratio 2^(1/16).
struct PinchFit {
  double C1;
  double C2;
};
PinchFit fit_pinching(std::span<const double> lambda1, std::span<const double> lambda2);

/// All monitors of a state at time state.grid.t. The residual needs the previous record.
DiagRecord record(const SurfaceState& state, const FlowParams& params, const DiagRecord* prev = nullptr);

// --- post-hoc checks ------------------------------------------------------------

enum class Direction { NonDecreasing, NonIncreasing };

struct MonotoneReport {
  bool pass = true;
  double worst = 0.0;       ///< most negative signed step (in the asserted direction)
  double worst_time = 0.0;  ///< time of the record ending the worst step
  std::size_t worst_index = 0;
};

/// Checks every consecutive pair of records with t <= t_max. Each signed step in the
/// asserted direction must be >= -slack.
MonotoneReport assert_monotone(std::span<const DiagRecord> series, double DiagRecord::*field,
                               Direction direction, double slack,
                               double t_max = std::numeric_limits<double>::infinity());

/// Extreme values of the bounded monitors over one run (records with t <= t_max).
struct RunExtrema {
  double speed_min;
  double lambda2_min;
  double C1_max;
  double C2_max;
  double h2_max;
  double H_min;
  double lambda1_max_nonconvex;
};
RunExtrema run_extrema(std::span<const DiagRecord> series, double t_max);

struct BoundCheck {
  std::string name;
  std::vector<double> per_run;
  double variation;  ///< (max - min) / max |value| across runs
  bool pass;
};
struct BoundsReport {
  std::vector<BoundCheck> checks;
  bool pass = true;
};

/// Uniformity over a parameter sweep: each extremum varies by less than `tolerance`
/// (relative) across runs.
BoundsReport assert_bounds(std::span<const RunExtrema> sweep, double tolerance = 0.5);

struct SphereOracle {
  double R;
  double area;
  double kappa;  ///< kappa_eps = (1 + 4 eps) / (2 R)
  double q;      ///< R0^2 / R
  double T;
};

/// Exact shrinking sphere dR/dt = -(1 + 4 eps)/(2R). Throws "post-extinction query" for t >= T.
SphereOracle sphere_oracle(double R0, double epsilon, double t);

struct RoundnessReport {
  bool finite_after_convex = true;
  double t_mid = 0.0;
  double roundness_mid = 0.0;
  double t_late = 0.0;
  double roundness_late = 0.0;
  bool pass = false;
};

/// Compares roundness at (t_convex + T)/2 and at T(1 - late_fraction), T the final time;
/// finiteness is checked for records in [t_convex, T(1 - 1e-3)]. Throws "not applicable"
/// without a convexification time.
RoundnessReport roundness_trend(std::span<const DiagRecord> series, std::optional<double> t_convex, double T,
                                double late_fraction = 1e-2);

}  // namespace hmcf
