#pragma once

// Generating curve r = f(x) of a surface of revolution about the x-axis, the
// inverse-graph tip charts x = g(y) near the two poles, and every pointwise
// curvature and surface integral the flow and its monitors need.
//
// Representation. The interior chart is a uniform lattice in x. Near each tip
// f_x blows up, so a second chart stores the inverse graph on a uniform grid
// 0 <= y <= y_match. Lattice nodes with x beyond the chart midpoint g(y_match/2)
// are owned by the chart; surface integrals blend the two charts smoothly on the
// overlap band y in [y_match/2, y_match].

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hmcf/error.hpp"

namespace hmcf {

enum class Side { Left, Right };

/// -1 on the left tip, +1 on the right tip.
constexpr double orientation(Side side) { return side == Side::Left ? -1.0 : 1.0; }

struct ProfileNode {
  double x;
  double f;
};

/// Sampled profile on [a, b]. nodes.front() and nodes.back() are the tips (f = 0);
/// the nodes in between sit on a uniform lattice of spacing h.
struct ProfileGrid {
  std::vector<ProfileNode> nodes;
  double h = 0.0;
  double t = 0.0;
  double center = 0.0;  ///< abscissa of the star-shape center (center, 0, 0)

  double a() const { return nodes.front().x; }
  double b() const { return nodes.back().x; }
  std::size_t size() const { return nodes.size(); }
  double max_radius() const;

  /// Structural invariants: zero tips, positive interior, increasing abscissae and a
  /// uniform lattice. Mean convexity is checked by principal_curvatures.
  void check() const;
};

/// Samples f on n uniform intervals of [a, b]; the tip values are forced to zero.
ProfileGrid sample_profile(const std::function<double(double)>& f, double a, double b,
                           std::size_t n, double center, double t = 0.0);

struct ChartNode {
  double y;
  double g;
};

/// Inverse graph x = g(y) near one tip, on a uniform grid 0 = y_0 < ... < y_m = y_match
/// with m even.
struct TipChart {
  Side side = Side::Left;
  std::vector<ChartNode> nodes;

  std::size_t m() const { return nodes.size() - 1; }
  double y_match() const { return nodes.back().y; }
  double dy() const { return nodes[1].y - nodes[0].y; }
  double tip() const { return nodes.front().g; }
  /// Distance-like coordinate -s*g that increases into the body on both sides.
  double depth(std::size_t j) const { return -orientation(side) * nodes[j].g; }
  /// Abscissa of the overlap-band midpoint y_match/2 (a chart node).
  double band_abscissa() const { return nodes[m() / 2].g; }
};

/// The surface state: interior chart plus both tip charts.
struct SurfaceState {
  ProfileGrid grid;
  TipChart left;
  TipChart right;
};

// --- finite differences -----------------------------------------------------

struct NodeDerivatives {
  std::vector<double> fx;
  std::vector<double> fxx;
};

/// Second-order differences of uniform samples: centered inside, one-sided at both ends.
/// Throws "grid too coarse" for fewer than 5 samples.
NodeDerivatives finite_differences(std::span<const double> f, double h);

/// Derivatives at the lattice nodes of a grid, aligned with grid.nodes; tip entries are NaN.
NodeDerivatives derivatives(const ProfileGrid& grid);

// --- pointwise curvature ----------------------------------------------------

struct CurvaturePoint {
  double lambda1;  ///< parallel curvature 1/(f sqrt(1+f_x^2))
  double lambda2;  ///< meridian curvature -f_xx/(1+f_x^2)^{3/2}
  double H;
  double G;
  double H_tilde;  ///< -f f_xx + f_x^2 + 1 (NaN for chart points)
  double speed;    ///< G/H
};

/// Curvatures of a profile point from (f, f_x, f_xx). No validation.
CurvaturePoint curvature_at(double f, double fx, double fxx);

struct CurvatureField {
  std::vector<CurvaturePoint> points;  ///< aligned with grid.nodes; tips hold NaN
};

/// Throws "degenerate profile" when f <= 0 at a lattice node and "mean convexity lost"
/// when H_tilde <= 0.
CurvatureField principal_curvatures(const ProfileGrid& grid);

/// <F - c, nu> for the rotation of the profile point, nu the outer unit normal.
double support_value(double x_minus_center, double f, double fx);

/// support_value at every lattice node, aligned with grid.nodes; tips hold NaN.
std::vector<double> support_inner(const ProfileGrid& grid);

// --- tip charts --------------------------------------------------------------

struct ChartDerivatives {
  std::vector<double> py;   ///< derivative of depth(j) in y
  std::vector<double> pyy;
};

/// Centered differences in y with the even reflection depth(-y) = depth(y) at the pole
/// and a one-sided stencil at y_match.
ChartDerivatives chart_derivatives(const TipChart& chart);

/// Curvatures at height y of a chart point; at y = 0 both equal the umbilic value pyy.
CurvaturePoint chart_curvature_at(double y, double py, double pyy);

/// Chart node count for a given height and lattice spacing: even, at least 16.
std::size_t chart_node_count(double y_match, double h);

/// Resamples the inverse of the lattice data near one tip. The height is
/// y_match_fraction * max f, shrunk while f is not monotone on the chart; throws
/// "tip chart failure" below a tenth of max f.
TipChart build_tip_chart(const ProfileGrid& grid, Side side, double y_match_fraction = 0.6);

/// Chart with an explicit height and node count.
TipChart build_tip_chart(const ProfileGrid& grid, Side side, double y_match, std::size_t m);

/// Chart of an analytic radius function f, increasing from the tip up to `inner`.
TipChart chart_from_function(const std::function<double(double)>& f, Side side, double tip,
                             double inner, double y_match, std::size_t m);

/// Both charts built from grid data.
SurfaceState make_state(ProfileGrid grid, double y_match_fraction = 0.6);

// --- curve evaluation across charts ---------------------------------------------

/// g(y) for 0 <= y <= y_match by six-point interpolation (reflected at the pole).
double chart_abscissa(const TipChart& chart, double y);
/// Inverse of chart_abscissa.
double chart_height(const TipChart& chart, double x);
/// f(x) by six-point interpolation of the lattice.
double lattice_radius(const ProfileGrid& grid, double x);
/// The abscissa where f first reaches y when walking in from the given tip.
double lattice_abscissa(const ProfileGrid& grid, Side side, double y);

/// f(x) anywhere on [a, b], taken from whichever chart resolves x best.
double state_radius(const SurfaceState& state, double x);
/// Abscissa of height y on one side, taken from the chart or the lattice.
double state_abscissa(const SurfaceState& state, Side side, double y);

// --- sampled surface and integrals ---------------------------------------------

/// One monitored point of the surface with its quadrature weight (2*pi and the chart
/// blend included; zero outside the point's share of the overlap).
struct SurfacePoint {
  double x;
  double r;
  CurvaturePoint curv;
  double support;
  double ffx;  ///< f^2 f_x^2, equal to (y / g_y)^2 in a chart
  double weight;
  bool in_chart;
};

/// Index range [lo, hi] of lattice nodes owned by the interior chart.
struct OwnedRange {
  std::size_t lo;
  std::size_t hi;
};
OwnedRange owned_range(const SurfaceState& state);

std::vector<SurfacePoint> sample_surface(const SurfaceState& state);

struct SurfaceSummary {
  double area;
  double lambda_min;  ///< smallest principal curvature over the sampled points
};
SurfaceSummary summarize(const SurfaceState& state);

double surface_area(const SurfaceState& state);
double surface_area(const ProfileGrid& grid, const TipChart& left, const TipChart& right);
double gauss_bonnet_integral(const SurfaceState& state);
double gauss_bonnet_integral(const ProfileGrid& grid, const TipChart& left, const TipChart& right);
double h2_integral(const SurfaceState& state);

// --- hypotheses check -------------------------------------------------------------

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;  ///< one entry per failed hypothesis, by name
  std::vector<ErrorCode> codes;       ///< aligned with failures
  double H_min = 0.0;
  double support_min = 0.0;
  double area = 0.0;
  double T_predicted = 0.0;  ///< area / (4 pi)
};

/// Checks zero tips, positive interior, mean convexity and star-shapedness about the
/// grid center. Never throws for a failed hypothesis; see require_valid.
ValidationReport validate_initial(const ProfileGrid& grid, double y_match_fraction = 0.6);
ValidationReport validate_initial(const SurfaceState& state);

/// Throws Error with the code of the first failed hypothesis.
void require_valid(const ValidationReport& report);

}  // namespace hmcf
