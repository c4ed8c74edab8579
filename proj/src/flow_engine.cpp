#include "hmcf/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hmcf/error.hpp"

namespace hmcf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Steps between area and convexity checks; the area moves by a relative 1e-5 per step
// at most, so the floor is overshot negligibly.
constexpr std::size_t kSummaryEvery = 16;

std::string num(double v) { return std::to_string(v); }

// Interior rate and diffusion coefficient at one lattice node.
void interior_rate(const ProfileGrid& g, std::size_t i, double eps, double& rate, double& diff) {
  const double h = g.h;
  const double fm = g.nodes[i - 1].f;
  const double f = g.nodes[i].f;
  const double fp = g.nodes[i + 1].f;
  const double fx = (fp - fm) / (2.0 * h);
  const double fxx = (fp - 2.0 * f + fm) / (h * h);
  const double w = 1.0 + fx * fx;
  const double Ht = -f * fxx + w;
  if (!(Ht > 0.0)) {
    throw Error(ErrorCode::MeanConvexityLost, "H_tilde = " + num(Ht) + " at x = " + num(g.nodes[i].x) +
                                                  ", t = " + num(g.t));
  }
  rate = fxx / Ht - eps * Ht / (f * w);
  diff = w / (Ht * Ht) + eps / w;
}

// Moves the lattice ends to the chart tips and refreshes the chart-owned lattice nodes
// (all of them, or only the two next to each band) and the top chart nodes.
void sync(FlowState& st, bool full) {
  SurfaceState& s = st.surface;
  ProfileGrid& g = s.grid;
  g.nodes.front().x = s.left.tip();
  g.nodes.back().x = s.right.tip();
  const double a = g.a();
  const double b = g.b();
  auto first = g.nodes.begin() + 1;
  auto keep = first;
  while (keep != g.nodes.end() - 1 && keep->x <= a) ++keep;
  g.nodes.erase(first, keep);
  auto last = g.nodes.end() - 1;
  auto drop = last;
  while (drop != g.nodes.begin() + 1 && (drop - 1)->x >= b) --drop;
  g.nodes.erase(drop, last);
  if (g.size() < 9) throw Error(ErrorCode::GridTooCoarse, "lattice emptied by moving tips");

  const double xl = s.left.band_abscissa();
  const double xr = s.right.band_abscissa();
  std::size_t il = 1;
  while (il + 1 < g.size() && g.nodes[il].x < xl) ++il;
  for (std::size_t i = full ? 1 : std::max<std::size_t>(il, 3) - 2; i < il; ++i) {
    g.nodes[i].f = chart_height(s.left, g.nodes[i].x);
  }
  std::size_t ir = g.size() - 2;
  while (ir > 0 && g.nodes[ir].x > xr) --ir;
  const std::size_t ir_end = full ? g.size() - 2 : std::min(ir + 2, g.size() - 2);
  for (std::size_t i = ir + 1; i <= ir_end; ++i) {
    g.nodes[i].f = chart_height(s.right, g.nodes[i].x);
  }
  s.left.nodes.back().g = lattice_abscissa(g, Side::Left, s.left.y_match());
  s.right.nodes.back().g = lattice_abscissa(g, Side::Right, s.right.y_match());
}

bool needs_regrid(const FlowState& st) {
  const SurfaceState& s = st.surface;
  const ProfileGrid& g = s.grid;
  const double dist = 1.0 + st.params.regrid_distortion;
  if (g.h > dist * (g.b() - g.a()) / static_cast<double>(st.intervals)) return true;
  const double target = st.params.y_match_fraction * g.max_radius();
  if (s.left.y_match() > dist * target || s.right.y_match() > dist * target) return true;
  try {
    owned_range(s);
  } catch (const Error&) {
    return true;
  }
  return false;
}

}  // namespace

void synchronize(FlowState& state) { sync(state, true); }

FlowState make_flow_state(SurfaceState surface, const FlowParams& params) {
  params.validate();
  const ValidationReport rep = validate_initial(surface);
  require_valid(rep);
  FlowState st;
  const ProfileGrid& g = surface.grid;
  st.intervals = static_cast<std::size_t>(std::lround((g.b() - g.a()) / g.h));
  st.surface = std::move(surface);
  st.params = params;
  st.initial_area = rep.area;
  st.T_predicted = rep.area / (4.0 * std::numbers::pi);
  st.area_floor = params.area_floor > 0.0 ? params.area_floor : params.area_floor_fraction * rep.area;
  return st;
}

Rates rhs_interior(const ProfileGrid& grid, const FlowParams& params, OwnedRange range) {
  if (range.lo < 1 || range.hi + 2 > grid.size()) throw Error(ErrorCode::InvalidArgument, "range outside lattice");
  Rates r;
  r.values.assign(grid.size(), 0.0);
  double dmax = 0.0;
  for (std::size_t i = range.lo; i <= range.hi; ++i) {
    double d = 0.0;
    interior_rate(grid, i, params.epsilon, r.values[i], d);
    dmax = std::max(dmax, d);
  }
  r.dt_bound = grid.h * grid.h / (2.0 * dmax);
  return r;
}

Rates rhs_interior(const ProfileGrid& grid, const FlowParams& params) {
  if (grid.size() < 5) throw Error(ErrorCode::GridTooCoarse, "need at least 3 lattice nodes");
  return rhs_interior(grid, params, {2, grid.size() - 3});
}

Rates rhs_tip(const TipChart& chart, const FlowParams& params) {
  const ChartDerivatives d = chart_derivatives(chart);
  const std::size_t m = chart.m();
  const double k = chart.dy();
  const double eps = params.epsilon;
  const double s = orientation(chart.side);
  Rates r;
  r.values.assign(m + 1, 0.0);
  double bound = kInf;
  for (std::size_t j = 0; j < m; ++j) {
    const double y = chart.nodes[j].y;
    const double py = d.py[j];
    if (j > 0 && !(py > 0.0)) {
      throw Error(ErrorCode::TipChartFailure, "inverse graph lost at y = " + num(y));
    }
    const CurvaturePoint c = chart_curvature_at(y, py, d.pyy[j]);
    if (!(c.H > 0.0)) {
      throw Error(ErrorCode::MeanConvexityLost, "H = " + num(c.H) + " at tip chart y = " + num(y));
    }
    const double w = 1.0 + py * py;
    r.values[j] = -s * (c.speed + eps * c.H) * std::sqrt(w);
    const double mix = c.lambda1 * c.lambda1 / (c.H * c.H) + eps;
    // At the pole both curvatures move with pyy, doubling the coefficient.
    bound = std::min(bound, j == 0 ? k * k / (4.0 * mix) : k * k * w / (2.0 * mix));
  }
  r.dt_bound = bound;
  return r;
}

double stable_dt(const ProfileGrid& grid, const FlowParams& params) {
  return params.dt_safety * rhs_interior(grid, params).dt_bound;
}

double stable_dt(const FlowState& st) {
  const SurfaceState& s = st.surface;
  const double bound = std::min({rhs_interior(s.grid, st.params, owned_range(s)).dt_bound,
                                 rhs_tip(s.left, st.params).dt_bound, rhs_tip(s.right, st.params).dt_bound});
  return st.params.dt_safety * bound;
}

StepInfo step(FlowState& st, double dt_cap) {
  SurfaceState& s = st.surface;
  const FlowParams& p = st.params;
  const OwnedRange own = owned_range(s);
  const Rates ri = rhs_interior(s.grid, p, own);
  const Rates rl = rhs_tip(s.left, p);
  const Rates rr = rhs_tip(s.right, p);
  const double dt_stable = p.dt_safety * std::min({ri.dt_bound, rl.dt_bound, rr.dt_bound});
  if (!(dt_stable >= p.dt_min_fraction * st.T_predicted)) {
    throw Error(ErrorCode::StepCollapse, "dt = " + num(dt_stable) + " at t = " + num(s.grid.t));
  }
  StepInfo info;
  info.dt = std::min(dt_stable, dt_cap);
  for (std::size_t i = own.lo; i <= own.hi; ++i) {
    double& f = s.grid.nodes[i].f;
    f += info.dt * ri.values[i];
    if (!(f > 0.0)) {
      throw Error(ErrorCode::DegenerateProfile, "radius reached zero at x = " + num(s.grid.nodes[i].x));
    }
  }
  for (std::size_t j = 0; j < s.left.m(); ++j) s.left.nodes[j].g += info.dt * rl.values[j];
  for (std::size_t j = 0; j < s.right.m(); ++j) s.right.nodes[j].g += info.dt * rr.values[j];
  s.grid.t += info.dt;
  ++st.steps;
  sync(st, false);
  if (needs_regrid(st)) {
    sync(st, true);
    regrid(st);
    info.regridded = true;
  }
  return info;
}

void regrid(FlowState& st) {
  const SurfaceState old = st.surface;
  const double a = old.grid.a();
  const double b = old.grid.b();
  const std::size_t n = st.intervals;
  ProfileGrid g;
  g.h = (b - a) / static_cast<double>(n);
  g.t = old.grid.t;
  g.center = old.grid.center;
  g.nodes.reserve(n + 1);
  g.nodes.push_back({a, 0.0});
  for (std::size_t i = 1; i < n; ++i) {
    const double x = a + g.h * static_cast<double>(i);
    g.nodes.push_back({x, state_radius(old, x)});
  }
  g.nodes.push_back({b, 0.0});
  g.check();

  const double y_match = st.params.y_match_fraction * g.max_radius();
  const std::size_t m = chart_node_count(y_match, g.h);
  auto rebuild = [&](Side side) {
    TipChart c;
    c.side = side;
    c.nodes.resize(m + 1);
    const double k = y_match / static_cast<double>(m);
    c.nodes[0] = {0.0, side == Side::Left ? a : b};
    for (std::size_t j = 1; j <= m; ++j) {
      const double y = k * static_cast<double>(j);
      c.nodes[j] = {y, state_abscissa(old, side, y)};
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!(c.depth(j + 1) > c.depth(j))) {
        throw Error(ErrorCode::TipChartFailure, "regridded chart not monotone at y = " + num(c.nodes[j].y));
      }
    }
    return c;
  };
  st.surface.left = rebuild(Side::Left);
  st.surface.right = rebuild(Side::Right);
  st.surface.grid = std::move(g);
  owned_range(st.surface);
  ++st.regrids;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Extinct: return "extinct";
    case Termination::MeanConvexityLost: return "mean_convexity_lost";
    case Termination::MaxSteps: return "max_steps";
    case Termination::UserStop: return "user_stop";
  }
  return "unknown";
}

EvolveResult evolve(FlowState st, const EvolveOptions& opt) {
  EvolveResult res;
  res.T_predicted = st.T_predicted;
  res.initial_area = st.initial_area;

  std::vector<double> snaps = opt.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  auto take_snapshots = [&] {
    const double tol = 1e-12 * std::max(1.0, st.T_predicted);
    while (next_snap < snaps.size() && snaps[next_snap] <= st.t() + tol) {
      res.snapshots.push_back(st.surface.grid);
      ++next_snap;
    }
  };

  res.series.push_back(record(st.surface, st.params));
  if (res.series.back().lambda2_min >= 0.0) res.t_convex = st.t();
  take_snapshots();
  double rmax = st.surface.grid.max_radius();
  double area = res.series.back().area;
  std::size_t last_recorded = 0;
  const std::size_t every = std::max<std::size_t>(opt.record_every, 1);

  res.termination = Termination::Extinct;
  while (area > st.area_floor) {
    if (opt.stop.stop_requested()) {
      res.termination = Termination::UserStop;
      break;
    }
    if (opt.max_steps > 0 && st.steps >= opt.max_steps) {
      res.termination = Termination::MaxSteps;
      break;
    }
    const double cap = next_snap < snaps.size() ? snaps[next_snap] - st.t() : kInf;
    try {
      step(st, cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MeanConvexityLost) throw;
      res.termination = Termination::MeanConvexityLost;
      res.reason = e.what();
      break;
    }
    const bool snap_due = next_snap < snaps.size() && snaps[next_snap] <= st.t() + 1e-12 * st.T_predicted;
    const bool record_due = st.steps % every == 0 || snap_due;
    if (st.steps % kSummaryEvery == 0 || record_due) {
      const SurfaceSummary q = summarize(st.surface);
      area = q.area;
      if (!res.t_convex && q.lambda_min >= 0.0) res.t_convex = st.t();
      const double r = st.surface.grid.max_radius();
      res.max_radius_increase = std::max(res.max_radius_increase, (r - rmax) / rmax);
      rmax = r;
    }
    if (record_due) synchronize(st);
    take_snapshots();
    if (record_due) {
      res.series.push_back(record(st.surface, st.params, &res.series.back()));
      last_recorded = st.steps;
    }
  }
  synchronize(st);
  if (last_recorded != st.steps) res.series.push_back(record(st.surface, st.params, &res.series.back()));
  res.final_time = st.t();
  res.final_area = res.series.back().area;
  res.steps = st.steps;
  res.regrids = st.regrids;
  if (res.t_convex && !(*res.t_convex < res.final_time)) res.t_convex.reset();
  return res;
}

}  // namespace hmcf
