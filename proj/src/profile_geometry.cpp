#include "hmcf/profile_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hmcf/interpolation.hpp"

namespace hmcf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kStencil = 6;
constexpr std::size_t kMinChartNodes = 16;
constexpr double kChartSpacingRatio = 1.4;
// The chart is used for evaluation up to this fraction of its height; above it the
// lattice takes over.
constexpr double kChartEvalFraction = 0.75;

std::string num(double v) { return std::to_string(v); }

// Fractional index of x on the lattice (index 1 sits at nodes[1].x).
double lattice_index(const ProfileGrid& grid, double x) {
  return 1.0 + (x - grid.nodes[1].x) / grid.h;
}

// Blend weight of a chart at height y: 1 below y_match/2, 0 above y_match, with a
// C-infinity transition so the blended integrands stay smooth for the trapezoid rule on
// the lattice, whose nodes drift relative to the band.
double chart_weight(double y, double y_match) {
  if (y <= 0.5 * y_match) return 1.0;
  if (y >= y_match) return 0.0;
  const double s = 2.0 * y / y_match - 1.0;
  const double up = std::exp(-1.0 / s);
  const double down = std::exp(-1.0 / (1.0 - s));
  return down / (up + down);
}

}  // namespace

double ProfileGrid::max_radius() const {
  double m = 0.0;
  for (const auto& n : nodes) m = std::max(m, n.f);
  return m;
}

void ProfileGrid::check() const {
  if (nodes.size() < 7) {
    throw Error(ErrorCode::GridTooCoarse, "need at least 5 lattice nodes, got " +
                                              std::to_string(nodes.size() < 2 ? 0 : nodes.size() - 2));
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "lattice spacing must be > 0");
  if (nodes.front().f != 0.0 || nodes.back().f != 0.0) {
    throw Error(ErrorCode::DegenerateProfile, "tips must have zero radius");
  }
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i].f > 0.0) || !std::isfinite(nodes[i].f)) {
      throw Error(ErrorCode::DegenerateProfile, "radius " + num(nodes[i].f) + " at x = " + num(nodes[i].x));
    }
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i + 1].x > nodes[i].x)) {
      throw Error(ErrorCode::DegenerateProfile, "abscissae not increasing at x = " + num(nodes[i].x));
    }
  }
  const double tol = 1e-8 * h;
  for (std::size_t i = 1; i + 2 < nodes.size(); ++i) {
    if (std::abs(nodes[i + 1].x - nodes[i].x - h) > tol) {
      throw Error(ErrorCode::InvalidArgument, "lattice not uniform at x = " + num(nodes[i].x));
    }
  }
}

ProfileGrid sample_profile(const std::function<double(double)>& f, double a, double b, std::size_t n,
                           double center, double t) {
  if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "empty interval");
  if (n < 6) throw Error(ErrorCode::GridTooCoarse, "n = " + std::to_string(n));
  ProfileGrid g;
  g.h = (b - a) / static_cast<double>(n);
  g.t = t;
  g.center = center;
  g.nodes.reserve(n + 1);
  g.nodes.push_back({a, 0.0});
  for (std::size_t i = 1; i < n; ++i) {
    const double x = a + g.h * static_cast<double>(i);
    g.nodes.push_back({x, f(x)});
  }
  g.nodes.push_back({b, 0.0});
  return g;
}

// --- finite differences -----------------------------------------------------

NodeDerivatives finite_differences(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw Error(ErrorCode::GridTooCoarse, "need at least 5 samples, got " + std::to_string(n));
  NodeDerivatives d;
  d.fx.resize(n);
  d.fxx.resize(n);
  const double h2 = h * h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d.fx[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d.fxx[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  }
  d.fx[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d.fxx[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  const std::size_t e = n - 1;
  d.fx[e] = (3.0 * f[e] - 4.0 * f[e - 1] + f[e - 2]) / (2.0 * h);
  d.fxx[e] = (2.0 * f[e] - 5.0 * f[e - 1] + 4.0 * f[e - 2] - f[e - 3]) / h2;
  return d;
}

NodeDerivatives derivatives(const ProfileGrid& grid) {
  const std::size_t n = grid.size();
  if (n < 7) throw Error(ErrorCode::GridTooCoarse, "need at least 5 lattice nodes");
  std::vector<double> f(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) f[i - 1] = grid.nodes[i].f;
  const NodeDerivatives inner = finite_differences(f, grid.h);
  NodeDerivatives d;
  d.fx.assign(n, kNaN);
  d.fxx.assign(n, kNaN);
  std::copy(inner.fx.begin(), inner.fx.end(), d.fx.begin() + 1);
  std::copy(inner.fxx.begin(), inner.fxx.end(), d.fxx.begin() + 1);
  return d;
}

// --- pointwise curvature ----------------------------------------------------

CurvaturePoint curvature_at(double f, double fx, double fxx) {
  const double w = 1.0 + fx * fx;
  const double sw = std::sqrt(w);
  CurvaturePoint c;
  c.lambda1 = 1.0 / (f * sw);
  c.lambda2 = -fxx / (w * sw);
  c.H = c.lambda1 + c.lambda2;
  c.G = c.lambda1 * c.lambda2;
  c.H_tilde = -f * fxx + w;
  c.speed = c.G / c.H;
  return c;
}

CurvatureField principal_curvatures(const ProfileGrid& grid) {
  const NodeDerivatives d = derivatives(grid);
  CurvatureField field;
  field.points.assign(grid.size(), CurvaturePoint{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN});
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double f = grid.nodes[i].f;
    if (!(f > 0.0)) throw Error(ErrorCode::DegenerateProfile, "radius " + num(f) + " at x = " + num(grid.nodes[i].x));
    const CurvaturePoint c = curvature_at(f, d.fx[i], d.fxx[i]);
    if (!(c.H_tilde > 0.0)) {
      throw Error(ErrorCode::MeanConvexityLost,
                  "H_tilde = " + num(c.H_tilde) + " at x = " + num(grid.nodes[i].x));
    }
    field.points[i] = c;
  }
  return field;
}

double support_value(double x_minus_center, double f, double fx) {
  return (-x_minus_center * fx + f) / std::sqrt(1.0 + fx * fx);
}

std::vector<double> support_inner(const ProfileGrid& grid) {
  const NodeDerivatives d = derivatives(grid);
  std::vector<double> s(grid.size(), kNaN);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    s[i] = support_value(grid.nodes[i].x - grid.center, grid.nodes[i].f, d.fx[i]);
  }
  return s;
}

// --- tip charts --------------------------------------------------------------

ChartDerivatives chart_derivatives(const TipChart& chart) {
  const std::size_t m = chart.m();
  if (m < 4) throw Error(ErrorCode::TipChartFailure, "chart needs at least 5 nodes");
  const double k = chart.dy();
  const double k2 = k * k;
  ChartDerivatives d;
  d.py.resize(m + 1);
  d.pyy.resize(m + 1);
  std::vector<double> p(m + 1);
  for (std::size_t j = 0; j <= m; ++j) p[j] = chart.depth(j);
  d.py[0] = 0.0;
  d.pyy[0] = 2.0 * (p[1] - p[0]) / k2;
  for (std::size_t j = 1; j < m; ++j) {
    d.py[j] = (p[j + 1] - p[j - 1]) / (2.0 * k);
    d.pyy[j] = (p[j + 1] - 2.0 * p[j] + p[j - 1]) / k2;
  }
  d.py[m] = (3.0 * p[m] - 4.0 * p[m - 1] + p[m - 2]) / (2.0 * k);
  d.pyy[m] = (2.0 * p[m] - 5.0 * p[m - 1] + 4.0 * p[m - 2] - p[m - 3]) / k2;
  return d;
}

CurvaturePoint chart_curvature_at(double y, double py, double pyy) {
  const double w = 1.0 + py * py;
  const double sw = std::sqrt(w);
  CurvaturePoint c;
  c.lambda2 = pyy / (w * sw);
  c.lambda1 = y > 0.0 ? py / (y * sw) : pyy;
  c.H = c.lambda1 + c.lambda2;
  c.G = c.lambda1 * c.lambda2;
  c.H_tilde = kNaN;
  c.speed = c.G / c.H;
  return c;
}

std::size_t chart_node_count(double y_match, double h) {
  const double raw = std::ceil(y_match / (kChartSpacingRatio * h) / 2.0);
  const auto m = static_cast<std::size_t>(std::max(raw, 1.0)) * 2;
  return std::max(m, kMinChartNodes);
}

namespace {

// Lattice indices walking in from a tip: 1, 2, ... (left) or N-2, N-3, ... (right).
std::size_t walk_index(const ProfileGrid& grid, Side side, std::size_t step) {
  return side == Side::Left ? step : grid.size() - 1 - step;
}

// Number of lattice nodes from the tip side along which f increases up to and
// including the first node with f >= y. Zero when f never reaches y monotonically.
std::size_t monotone_reach(const ProfileGrid& grid, Side side, double y) {
  double prev = 0.0;
  for (std::size_t s = 1; s + 1 < grid.size(); ++s) {
    const double f = grid.nodes[walk_index(grid, side, s)].f;
    if (!(f > prev)) return 0;
    if (f >= y) return s;
    prev = f;
  }
  return 0;
}

// x at height y by Lagrange interpolation of x as an even function of f through the tip.
double inverse_from_lattice(const ProfileGrid& grid, Side side, double y, std::size_t reach) {
  // Candidate points: mirrored lattice points, the tip, lattice points.
  const std::size_t avail = std::min<std::size_t>(reach + kStencil, grid.size() - 2);
  std::vector<double> fs;
  std::vector<double> xs;
  const ProfileNode& tip = side == Side::Left ? grid.nodes.front() : grid.nodes.back();
  for (std::size_t s = std::min<std::size_t>(avail, kStencil); s >= 1; --s) {
    const auto& n = grid.nodes[walk_index(grid, side, s)];
    fs.push_back(-n.f);
    xs.push_back(n.x);
  }
  fs.push_back(0.0);
  xs.push_back(tip.x);
  for (std::size_t s = 1; s <= avail; ++s) {
    const auto& n = grid.nodes[walk_index(grid, side, s)];
    if (n.f <= fs.back()) break;
    fs.push_back(n.f);
    xs.push_back(n.x);
  }
  // Six consecutive candidates centered on y.
  const auto it = std::lower_bound(fs.begin(), fs.end(), y);
  const std::ptrdiff_t pos = it - fs.begin();
  const auto count = static_cast<std::ptrdiff_t>(fs.size());
  const auto w = static_cast<std::ptrdiff_t>(std::min<std::size_t>(kStencil, fs.size()));
  std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(pos - w / 2, 0, count - w);
  return interp::lagrange(std::span(fs).subspan(lo, w), std::span(xs).subspan(lo, w), y);
}

void require_monotone(const TipChart& chart) {
  for (std::size_t j = 0; j < chart.m(); ++j) {
    if (!(chart.depth(j + 1) > chart.depth(j))) {
      throw Error(ErrorCode::TipChartFailure, "inverse graph not monotone at y = " + num(chart.nodes[j].y));
    }
  }
}

}  // namespace

TipChart build_tip_chart(const ProfileGrid& grid, Side side, double y_match, std::size_t m) {
  if (m < 4 || m % 2 != 0) throw Error(ErrorCode::InvalidArgument, "chart node count must be even and >= 4");
  if (!(y_match > 0.0)) throw Error(ErrorCode::InvalidArgument, "chart height must be > 0");
  const std::size_t reach = monotone_reach(grid, side, y_match);
  if (reach == 0) {
    throw Error(ErrorCode::TipChartFailure, "radius not monotone up to y = " + num(y_match));
  }
  TipChart chart;
  chart.side = side;
  chart.nodes.resize(m + 1);
  const double k = y_match / static_cast<double>(m);
  for (std::size_t j = 0; j <= m; ++j) {
    const double y = k * static_cast<double>(j);
    chart.nodes[j] = {y, j == 0 ? (side == Side::Left ? grid.a() : grid.b())
                                : inverse_from_lattice(grid, side, y, reach)};
  }
  require_monotone(chart);
  return chart;
}

TipChart build_tip_chart(const ProfileGrid& grid, Side side, double y_match_fraction) {
  const double fmax = grid.max_radius();
  double y_match = y_match_fraction * fmax;
  while (y_match >= 0.1 * fmax) {
    if (monotone_reach(grid, side, y_match) > 0) {
      try {
        return build_tip_chart(grid, side, y_match, chart_node_count(y_match, grid.h));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TipChartFailure) throw;
      }
    }
    y_match *= 0.8;
  }
  throw Error(ErrorCode::TipChartFailure, "no monotone tip chart above a tenth of the maximal radius");
}

TipChart chart_from_function(const std::function<double(double)>& f, Side side, double tip, double inner,
                             double y_match, std::size_t m) {
  if (m < 4 || m % 2 != 0) throw Error(ErrorCode::InvalidArgument, "chart node count must be even and >= 4");
  TipChart chart;
  chart.side = side;
  chart.nodes.resize(m + 1);
  const double k = y_match / static_cast<double>(m);
  chart.nodes[0] = {0.0, tip};
  for (std::size_t j = 1; j <= m; ++j) {
    const double y = k * static_cast<double>(j);
    const double x = interp::solve_bracketed([&](double s) { return f(s) - y; }, std::min(tip, inner),
                                             std::max(tip, inner));
    chart.nodes[j] = {y, x};
  }
  require_monotone(chart);
  return chart;
}

SurfaceState make_state(ProfileGrid grid, double y_match_fraction) {
  grid.check();
  SurfaceState s;
  s.left = build_tip_chart(grid, Side::Left, y_match_fraction);
  s.right = build_tip_chart(grid, Side::Right, y_match_fraction);
  s.grid = std::move(grid);
  return s;
}

// --- curve evaluation ------------------------------------------------------------

double chart_abscissa(const TipChart& chart, double y) {
  const std::size_t m = chart.m();
  const double s = y / chart.dy();
  // Window of six indices, reflected evenly across the pole.
  auto j0 = static_cast<std::ptrdiff_t>(std::floor(s)) - 2;
  j0 = std::min<std::ptrdiff_t>(j0, static_cast<std::ptrdiff_t>(m) - 5);
  j0 = std::max<std::ptrdiff_t>(j0, -2);
  std::array<double, kStencil> v{};
  for (std::size_t q = 0; q < kStencil; ++q) {
    const std::ptrdiff_t j = j0 + static_cast<std::ptrdiff_t>(q);
    v[q] = chart.nodes[static_cast<std::size_t>(std::abs(j))].g;
  }
  return interp::lagrange_uniform(v, s - static_cast<double>(j0));
}

double chart_height(const TipChart& chart, double x) {
  const double sgn = -orientation(chart.side);
  const double depth = sgn * x;
  if (depth <= chart.depth(0)) return 0.0;
  const std::size_t m = chart.m();
  std::size_t j = 0;
  while (j < m && chart.depth(j + 1) < depth) ++j;
  if (j == m) return chart.y_match();
  auto fn = [&](double y) { return sgn * chart_abscissa(chart, y) - depth; };
  double lo = chart.nodes[j].y;
  double hi = chart.nodes[j + 1].y;
  // Interpolation may move the sign change slightly outside the node bracket.
  while (fn(lo) > 0.0 && lo > 0.0) lo = std::max(0.0, lo - chart.dy());
  while (fn(hi) < 0.0 && hi < chart.y_match()) hi = std::min(chart.y_match(), hi + chart.dy());
  return interp::solve_bracketed(fn, lo, hi);
}

double lattice_radius(const ProfileGrid& grid, double x) {
  const std::size_t n = grid.size();
  const double s = lattice_index(grid, x);
  auto i0 = static_cast<std::ptrdiff_t>(std::floor(s)) - 2;
  i0 = std::clamp<std::ptrdiff_t>(i0, 1, static_cast<std::ptrdiff_t>(n) - 2 - static_cast<std::ptrdiff_t>(kStencil));
  std::array<double, kStencil> v{};
  for (std::size_t q = 0; q < kStencil; ++q) v[q] = grid.nodes[static_cast<std::size_t>(i0) + q].f;
  return interp::lagrange_uniform(v, s - static_cast<double>(i0));
}

double lattice_abscissa(const ProfileGrid& grid, Side side, double y) {
  std::size_t s = 1;
  while (s + 1 < grid.size() && grid.nodes[walk_index(grid, side, s)].f < y) ++s;
  if (s + 1 >= grid.size()) throw Error(ErrorCode::InvalidArgument, "height " + num(y) + " not reached");
  const double x_in = grid.nodes[walk_index(grid, side, s)].x;
  const double x_out = grid.nodes[walk_index(grid, side, s - 1)].x;
  auto fn = [&](double x) { return lattice_radius(grid, x) - y; };
  double lo = std::min(x_in, x_out);
  double hi = std::max(x_in, x_out);
  if ((fn(lo) < 0.0) == (fn(hi) < 0.0)) {
    // The interpolant can dip across y right at a node; fall back to the chord.
    const double f_in = grid.nodes[walk_index(grid, side, s)].f;
    const double f_out = grid.nodes[walk_index(grid, side, s - 1)].f;
    return x_out + (x_in - x_out) * (y - f_out) / (f_in - f_out);
  }
  return interp::solve_bracketed(fn, lo, hi);
}

double state_radius(const SurfaceState& state, double x) {
  const ProfileGrid& g = state.grid;
  if (x <= g.a() || x >= g.b()) return 0.0;
  const TipChart& c = x < 0.5 * (g.a() + g.b()) ? state.left : state.right;
  const double limit = chart_abscissa(c, kChartEvalFraction * c.y_match());
  const double sgn = -orientation(c.side);
  if (sgn * x <= sgn * limit) return chart_height(c, x);
  return lattice_radius(g, x);
}

double state_abscissa(const SurfaceState& state, Side side, double y) {
  const TipChart& c = side == Side::Left ? state.left : state.right;
  if (y <= kChartEvalFraction * c.y_match()) return chart_abscissa(c, y);
  return lattice_abscissa(state.grid, side, y);
}

// --- sampled surface -------------------------------------------------------------

OwnedRange owned_range(const SurfaceState& state) {
  const ProfileGrid& g = state.grid;
  const double xl = state.left.band_abscissa();
  const double xr = state.right.band_abscissa();
  std::size_t lo = 1;
  while (lo + 1 < g.size() && g.nodes[lo].x < xl) ++lo;
  std::size_t hi = g.size() - 2;
  while (hi > 0 && g.nodes[hi].x > xr) --hi;
  if (lo < 2 || hi + 3 > g.size() || hi < lo + 2) {
    throw Error(ErrorCode::GridTooCoarse, "tip charts leave no room for the interior lattice");
  }
  return {lo, hi};
}

namespace {

template <class Fn>
void visit_surface(const SurfaceState& state, Fn&& fn) {
  const ProfileGrid& g = state.grid;
  const OwnedRange own = owned_range(state);
  const double mid = 0.5 * (g.a() + g.b());
  const double h = g.h;

  const double xl = state.left.band_abscissa();
  const double xr = state.right.band_abscissa();
  for (std::size_t i = own.lo; i <= own.hi; ++i) {
    const double x = g.nodes[i].x;
    const double f = g.nodes[i].f;
    const double fx = (g.nodes[i + 1].f - g.nodes[i - 1].f) / (2.0 * h);
    const double fxx = (g.nodes[i + 1].f - 2.0 * f + g.nodes[i - 1].f) / (h * h);
    const double x_prev = i == own.lo ? xl : g.nodes[i - 1].x;
    const double x_next = i == own.hi ? xr : g.nodes[i + 1].x;
    const double y_match = x < mid ? state.left.y_match() : state.right.y_match();
    SurfacePoint p;
    p.x = x;
    p.r = f;
    p.curv = curvature_at(f, fx, fxx);
    p.support = support_value(x - g.center, f, fx);
    p.ffx = f * f * fx * fx;
    p.weight = (1.0 - chart_weight(f, y_match)) * kTwoPi * f * std::sqrt(1.0 + fx * fx) * 0.5 * (x_next - x_prev);
    p.in_chart = false;
    fn(p);
  }

  for (const TipChart* c : {&state.left, &state.right}) {
    const ChartDerivatives cd = chart_derivatives(*c);
    const double k = c->dy();
    const double p0 = -orientation(c->side) * g.center;
    for (std::size_t j = 0; j < c->m(); ++j) {
      const double y = c->nodes[j].y;
      const double py = cd.py[j];
      const double pyy = cd.pyy[j];
      const double w = std::sqrt(1.0 + py * py);
      SurfacePoint p;
      p.x = c->nodes[j].g;
      p.r = y;
      p.curv = chart_curvature_at(y, py, pyy);
      p.support = (-(c->depth(j) - p0) + y * py) / w;
      p.ffx = j == 0 ? 1.0 / (pyy * pyy) : (y / py) * (y / py);
      // At the pole the integrand 2 pi y sqrt(1 + p_y^2) F has slope 2 pi F; the end
      // correction of the trapezoid rule removes the k^2 error this causes.
      p.weight = j == 0 ? kTwoPi * k * k / 12.0 : chart_weight(y, c->y_match()) * kTwoPi * y * w * k;
      p.in_chart = true;
      fn(p);
    }
  }
}

}  // namespace

std::vector<SurfacePoint> sample_surface(const SurfaceState& state) {
  std::vector<SurfacePoint> pts;
  pts.reserve(state.grid.size() + state.left.m() + state.right.m());
  visit_surface(state, [&](const SurfacePoint& p) { pts.push_back(p); });
  return pts;
}

SurfaceSummary summarize(const SurfaceState& state) {
  SurfaceSummary s{0.0, std::numeric_limits<double>::infinity()};
  visit_surface(state, [&](const SurfacePoint& p) {
    s.area += p.weight;
    s.lambda_min = std::min(s.lambda_min, std::min(p.curv.lambda1, p.curv.lambda2));
  });
  return s;
}

double surface_area(const SurfaceState& state) {
  double a = 0.0;
  visit_surface(state, [&](const SurfacePoint& p) { a += p.weight; });
  return a;
}

double surface_area(const ProfileGrid& grid, const TipChart& left, const TipChart& right) {
  return surface_area(SurfaceState{grid, left, right});
}

double gauss_bonnet_integral(const SurfaceState& state) {
  double s = 0.0;
  visit_surface(state, [&](const SurfacePoint& p) { s += p.curv.G * p.weight; });
  return s;
}

double gauss_bonnet_integral(const ProfileGrid& grid, const TipChart& left, const TipChart& right) {
  return gauss_bonnet_integral(SurfaceState{grid, left, right});
}

double h2_integral(const SurfaceState& state) {
  double s = 0.0;
  visit_surface(state, [&](const SurfacePoint& p) { s += p.curv.H * p.curv.H * p.weight; });
  return s;
}

// --- hypotheses --------------------------------------------------------------------

ValidationReport validate_initial(const SurfaceState& state) {
  ValidationReport r;
  auto fail = [&](ErrorCode code, const std::string& what) {
    r.ok = false;
    r.failures.push_back(what);
    r.codes.push_back(code);
  };
  std::vector<SurfacePoint> pts;
  try {
    state.grid.check();
    pts = sample_surface(state);
  } catch (const Error& e) {
    fail(e.code(), e.what());
    return r;
  }
  r.H_min = std::numeric_limits<double>::infinity();
  r.support_min = std::numeric_limits<double>::infinity();
  double H_tilde_min = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    r.H_min = std::min(r.H_min, p.curv.H);
    r.support_min = std::min(r.support_min, p.support);
    r.area += p.weight;
    if (!p.in_chart) H_tilde_min = std::min(H_tilde_min, p.curv.H_tilde);
  }
  r.T_predicted = r.area / (4.0 * std::numbers::pi);
  if (!(r.H_min > 0.0) || !(H_tilde_min > 0.0)) {
    fail(ErrorCode::MeanConvexityLost, "mean convexity: min H = " + num(r.H_min));
  }
  if (!(r.support_min > 0.0)) {
    fail(ErrorCode::NotStarShaped, "star-shaped about x = " + num(state.grid.center) +
                                       ": min support = " + num(r.support_min));
  }
  return r;
}

ValidationReport validate_initial(const ProfileGrid& grid, double y_match_fraction) {
  try {
    return validate_initial(make_state(grid, y_match_fraction));
  } catch (const Error& e) {
    ValidationReport r;
    r.ok = false;
    r.failures.push_back(e.what());
    r.codes.push_back(e.code());
    return r;
  }
}

void require_valid(const ValidationReport& report) {
  if (report.ok) return;
  throw Error(report.codes.front(), report.failures.front());
}

}  // namespace hmcf
