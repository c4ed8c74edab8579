#pragma once

// Batch front end: run configuration, preset surfaces, profile files, series and
// summary output, SVG plots and parameter sweeps.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmcf/diagnostics.hpp"
#include "hmcf/flow_engine.hpp"
#include "hmcf/profile_geometry.hpp"
#include "hmcf/speed_functions.hpp"

namespace hmcf {

struct RunConfig {
  std::string preset = "sphere";  ///< used when profile_path is empty
  std::filesystem::path profile_path;
  double preset_param = std::numeric_limits<double>::quiet_NaN();  ///< squashed height / bumpy amplitude
  FlowParams params;
  std::size_t n = 400;
  std::size_t record_every = 100;
  std::size_t max_steps = 0;
  std::vector<double> snapshot_times;
  std::filesystem::path output_dir = ".";
  std::vector<double> epsilons;        ///< sweep; empty means {params.epsilon}
  std::vector<std::size_t> grid_sizes;  ///< sweep; empty means {n}
  bool emit_plots = false;
};

/// Parses `key=value` lines (several pairs per line allowed, '#' starts a comment).
/// Errors are ParseError with the line number and key.
RunConfig parse_config(std::string_view text);
RunConfig read_config(const std::filesystem::path& path);

/// Names accepted by make_preset.
std::vector<std::string_view> preset_names();

/// Preset surface with exact tip charts; throws when the construction fails validation.
/// sphere: unit sphere on [-1, 1]. squashed: spheroid 2a sqrt(x(1-x)) on [0, 1], a = 0.6 by
/// default. bumpy: 2 sqrt(x(1-x)) (1 + beta cos 4 pi x), beta the largest of 0.05, 0.10, 0.15
/// that passes validation unless given.
SurfaceState make_preset_state(std::string_view name, std::size_t n, const FlowParams& params = {},
                               double param = std::numeric_limits<double>::quiet_NaN());
ProfileGrid make_preset(std::string_view name, std::size_t n,
                        double param = std::numeric_limits<double>::quiet_NaN());
/// The amplitude chosen for the bumpy preset at resolution n.
double bumpy_amplitude(std::size_t n);

// --- profile exchange format ---------------------------------------------------------

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

void write_profile(std::ostream& out, const ProfileGrid& grid);
/// Reads "x f" rows after a "# t=<time> center=<x0>" header. Tip rows (f = 0) are
/// optional; missing tips are extrapolated from a parabola x = a + c f^2 through the
/// two outermost rows.
ProfileGrid read_profile(std::istream& in);
ProfileGrid read_profile(const std::filesystem::path& path);
void write_profile(const std::filesystem::path& path, const ProfileGrid& grid);

// --- run outputs ---------------------------------------------------------------------

void write_series(std::ostream& out, std::span<const DiagRecord> series);

/// Worst-case monitor values of one run, as reported in the summary.
struct RunSummary {
  double epsilon = 0.0;
  std::size_t n = 0;
  EvolveResult result;
  MonotoneReport q;
  MonotoneReport q_eta;
  MonotoneReport ffx;
  double gb_residual_max = 0.0;
  double area_residual_max = 0.0;
  double extinction_identity = 0.0;  ///< final_time + eps/(4 pi) int h2 dt - initial_area/(4 pi)
  double H_min_floor = 0.0;          ///< half the minimum of H over the first 1% of the run
  bool H_min_holds = false;
  double amax_scaled = 0.0;  ///< max|A| sqrt(T - t) at the last record before T(1 - 1e-3); reported only
  std::optional<RoundnessReport> roundness;
};

/// Post-hoc monitor checks on a finished run.
RunSummary summarize_run(const EvolveResult& result, const FlowParams& params, std::size_t n);

void write_summary(std::ostream& out, std::span<const RunSummary> runs, const BoundsReport* uniformity);

/// SVG line plots of the run monitors and profile snapshots.
void write_plots(const std::filesystem::path& dir, const std::string& stem, const RunSummary& run,
                 const std::vector<ProfileGrid>& snapshots);

/// Runs every sweep point (concurrently), writes series, snapshots, summary and plots.
/// Returns 0 when every run went extinct, 1 otherwise.
int run(const RunConfig& config, std::ostream& log);

}  // namespace hmcf
