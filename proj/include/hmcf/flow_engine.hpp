#pragma once

// Explicit time stepping of the profile under G/H + eps*H: interior lattice and both
// tip charts advance together, are re-synchronized on their overlap, and are regridded
// as the body shrinks.

#include <cstddef>
#include <limits>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "hmcf/diagnostics.hpp"
#include "hmcf/profile_geometry.hpp"
#include "hmcf/speed_functions.hpp"

namespace hmcf {

struct FlowState {
  SurfaceState surface;
  FlowParams params;
  std::size_t intervals = 0;  ///< lattice intervals across [a, b], kept by regridding
  double initial_area = 0.0;
  double T_predicted = 0.0;  ///< initial_area / (4 pi)
  double area_floor = 0.0;
  std::size_t steps = 0;
  std::size_t regrids = 0;

  double t() const { return surface.grid.t; }
};

/// Validates the initial surface (throws the first failed hypothesis) and fixes the
/// run constants.
FlowState make_flow_state(SurfaceState surface, const FlowParams& params);

/// Time derivatives of a set of nodes plus the explicit stability bound they impose.
struct Rates {
  std::vector<double> values;
  double dt_bound = std::numeric_limits<double>::infinity();
};

/// df/dt at lattice nodes lo..hi (values aligned with grid.nodes, zero elsewhere).
/// Throws "mean convexity lost" when H_tilde <= 0 at one of them.
Rates rhs_interior(const ProfileGrid& grid, const FlowParams& params, OwnedRange range);
/// Same over every lattice node that has a centered stencil.
Rates rhs_interior(const ProfileGrid& grid, const FlowParams& params);

/// dg/dt at chart nodes 0..m-1 (the top node is synchronized, not evolved).
/// Throws "mean convexity lost" when H <= 0 and "tip chart failure" when the chart
/// is no longer an inverse graph.
Rates rhs_tip(const TipChart& chart, const FlowParams& params);

/// dt_safety * h^2 / (2 max D) over the lattice nodes with a centered stencil,
/// D = (1 + f_x^2)/H_tilde^2 + eps/(1 + f_x^2).
double stable_dt(const ProfileGrid& grid, const FlowParams& params);
/// dt_safety times the tighter of the interior and both chart bounds.
double stable_dt(const FlowState& state);

struct StepInfo {
  double dt = 0.0;
  bool regridded = false;
};

/// One forward-Euler step of at most dt_cap; regrids when the lattice or charts are too
/// distorted. Throws "step collapse" when the stable step falls below
/// dt_min_fraction * T_predicted. Only the chart-owned lattice nodes next to each
/// overlap band are refreshed; call synchronize before reading the whole lattice.
StepInfo step(FlowState& state, double dt_cap = std::numeric_limits<double>::infinity());

/// Refreshes every chart-owned lattice node from its tip chart.
void synchronize(FlowState& state);

/// Rebuilds a uniform lattice with `intervals` intervals on the current [a, b] and both
/// charts at y_match_fraction * max f.
void regrid(FlowState& state);

enum class Termination { Extinct, MeanConvexityLost, MaxSteps, UserStop };
std::string_view to_string(Termination t);

struct EvolveOptions {
  std::size_t record_every = 100;
  std::vector<double> snapshot_times;
  std::size_t max_steps = 0;  ///< 0 for no limit
  std::stop_token stop;
};

struct EvolveResult {
  double final_time = 0.0;
  Termination termination = Termination::Extinct;
  std::string reason;  ///< detail of an abnormal termination
  double T_predicted = 0.0;
  double initial_area = 0.0;
  double final_area = 0.0;
  std::optional<double> t_convex;
  std::vector<DiagRecord> series;
  std::vector<ProfileGrid> snapshots;
  std::size_t steps = 0;
  std::size_t regrids = 0;
  double max_radius_increase = 0.0;  ///< worst per-step growth of max f (containment check)
};

/// Runs until area <= area_floor, recording monitors every record_every steps, at every
/// snapshot time and at the final state. Errors other than loss of mean convexity
/// propagate as exceptions.
EvolveResult evolve(FlowState state, const EvolveOptions& options = {});

}  // namespace hmcf
