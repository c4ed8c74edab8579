#include "hmcf/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>

#include "hmcf/error.hpp"

namespace hmcf {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_size(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

class ConfigParser {
 public:
  explicit ConfigParser(RunConfig& cfg) : cfg_(cfg) {}

  void apply(std::string_view key, std::string_view value, std::size_t line) {
    key_ = key;
    line_ = line;
    FlowParams& p = cfg_.params;
    if (key == "preset") {
      const auto names = preset_names();
      if (std::find(names.begin(), names.end(), value) == names.end()) fail("unknown preset " + std::string(value));
      cfg_.preset = value;
    } else if (key == "profile") {
      cfg_.profile_path = std::string(value);
    } else if (key == "preset_param") {
      cfg_.preset_param = real(value);
    } else if (key == "epsilon") {
      p.epsilon = real(value);
    } else if (key == "delta1") {
      p.delta1 = real(value);
    } else if (key == "eta") {
      p.eta = real(value);
    } else if (key == "dt_safety") {
      p.dt_safety = real(value);
    } else if (key == "area_floor") {
      p.area_floor = real(value);
    } else if (key == "y_match_fraction") {
      p.y_match_fraction = real(value);
    } else if (key == "regrid_distortion") {
      p.regrid_distortion = real(value);
    } else if (key == "monotone_slack") {
      p.monotone_slack = real(value);
    } else if (key == "dt_min_fraction") {
      p.dt_min_fraction = real(value);
    } else if (key == "n") {
      cfg_.n = count(value);
      if (cfg_.n < 50) fail("n must be >= 50");
    } else if (key == "record_every") {
      cfg_.record_every = count(value);
      if (cfg_.record_every == 0) fail("record_every must be >= 1");
    } else if (key == "max_steps") {
      cfg_.max_steps = count(value);
    } else if (key == "snapshot_times") {
      cfg_.snapshot_times = reals(value);
      for (double t : cfg_.snapshot_times) {
        if (!(t >= 0.0)) fail("snapshot times must be >= 0");
      }
    } else if (key == "output_dir") {
      cfg_.output_dir = std::string(value);
    } else if (key == "epsilons") {
      cfg_.epsilons = reals(value);
      for (double e : cfg_.epsilons) {
        if (!(e >= 0.0)) fail("epsilon must be >= 0");
      }
    } else if (key == "grid_sizes") {
      cfg_.grid_sizes.clear();
      for (auto item : split(value, ',')) {
        cfg_.grid_sizes.push_back(count(item));
        if (cfg_.grid_sizes.back() < 50) fail("n must be >= 50");
      }
    } else if (key == "emit_plots") {
      if (value == "true" || value == "1" || value == "yes") {
        cfg_.emit_plots = true;
      } else if (value == "false" || value == "0" || value == "no") {
        cfg_.emit_plots = false;
      } else {
        fail("expected a boolean, got '" + std::string(value) + "'");
      }
    } else {
      fail("unknown key");
    }
    try {
      p.validate();
    } catch (const Error& e) {
      fail(strip_tag(e.what()));
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_) + ", key " + std::string(key_) + ": " + what);
  }

 private:
  static std::string strip_tag(const std::string& msg) {
    const auto pos = msg.find(": ");
    return pos == std::string::npos ? msg : msg.substr(pos + 2);
  }

  double real(std::string_view v) const {
    const auto d = to_double(v);
    if (!d) fail("expected a number, got '" + std::string(v) + "'");
    return *d;
  }
  std::size_t count(std::string_view v) const {
    const auto d = to_size(v);
    if (!d) fail("expected a non-negative integer, got '" + std::string(v) + "'");
    return *d;
  }
  std::vector<double> reals(std::string_view v) const {
    std::vector<double> out;
    for (auto item : split(v, ',')) out.push_back(real(item));
    return out;
  }

  RunConfig& cfg_;
  std::string_view key_;
  std::size_t line_ = 0;
};

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  ConfigParser parser(cfg);
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto b = line.find_first_not_of(" \t\r", pos);
      if (b == std::string_view::npos) break;
      const auto e = line.find_first_of(" \t\r", b);
      const auto token = line.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b);
      pos = e == std::string_view::npos ? line.size() : e;
      const auto eq = token.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": expected key=value, got '" + std::string(token) + "'");
      }
      parser.apply(token.substr(0, eq), token.substr(eq + 1), line_no);
    }
  }
  return cfg;
}

RunConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// --- presets -----------------------------------------------------------------------

std::vector<std::string_view> preset_names() { return {"sphere", "squashed", "bumpy"}; }

namespace {

struct PresetShape {
  std::function<double(double)> f;
  double a;
  double b;
  double center;
};

PresetShape preset_shape(std::string_view name, double param) {
  if (name == "sphere") {
    const double R = std::isnan(param) ? 1.0 : param;
    if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::InvalidArgument, "sphere radius must be > 0");
    return {[R](double x) { return std::sqrt(std::max(0.0, R * R - x * x)); }, -R, R, 0.0};
  }
  if (name == "squashed") {
    const double h = std::isnan(param) ? 0.6 : param;
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "squashed height must be > 0");
    return {[h](double x) { return 2.0 * h * std::sqrt(std::max(0.0, x * (1.0 - x))); }, 0.0, 1.0, 0.5};
  }
  if (name == "bumpy") {
    const double beta = param;
    if (!std::isfinite(beta) || beta < 0.0) throw Error(ErrorCode::InvalidArgument, "bumpy amplitude must be >= 0");
    return {[beta](double x) {
              return 2.0 * std::sqrt(std::max(0.0, x * (1.0 - x))) * (1.0 + beta * std::cos(4.0 * std::numbers::pi * x));
            },
            0.0, 1.0, 0.5};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset " + std::string(name));
}

SurfaceState build_preset(const PresetShape& s, std::size_t n, const FlowParams& params) {
  if (n < 10) throw Error(ErrorCode::GridTooCoarse, "n = " + std::to_string(n));
  SurfaceState st;
  st.grid = sample_profile(s.f, s.a, s.b, n, s.center);
  const double y_match = params.y_match_fraction * st.grid.max_radius();
  const std::size_t m = chart_node_count(y_match, st.grid.h);
  st.left = chart_from_function(s.f, Side::Left, s.a, s.center, y_match, m);
  st.right = chart_from_function(s.f, Side::Right, s.b, s.center, y_match, m);
  return st;
}

}  // namespace

double bumpy_amplitude(std::size_t n) {
  for (double beta : {0.15, 0.10, 0.05}) {
    try {
      if (validate_initial(build_preset(preset_shape("bumpy", beta), n, {})).ok) return beta;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::MeanConvexityLost, "no bumpy amplitude passes validation");
}

SurfaceState make_preset_state(std::string_view name, std::size_t n, const FlowParams& params, double param) {
  if (name == "bumpy" && std::isnan(param)) param = bumpy_amplitude(n);
  SurfaceState st = build_preset(preset_shape(name, param), n, params);
  require_valid(validate_initial(st));
  return st;
}

ProfileGrid make_preset(std::string_view name, std::size_t n, double param) {
  return make_preset_state(name, n, {}, param).grid;
}

// --- profile files -----------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void write_profile(std::ostream& out, const ProfileGrid& grid) {
  out << "# t=" << format_double(grid.t) << " center=" << format_double(grid.center) << '\n';
  for (const auto& n : grid.nodes) out << format_double(n.x) << ' ' << format_double(n.f) << '\n';
}

ProfileGrid read_profile(std::istream& in) {
  ProfileGrid g;
  bool have_header = false;
  bool have_center = false;
  std::string line;
  std::size_t line_no = 0;
  std::vector<ProfileNode> rows;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      if (have_header) continue;
      have_header = true;
      s.remove_prefix(1);
      std::istringstream tokens{std::string(s)};
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const auto v = to_double(std::string_view(tok).substr(eq + 1));
        if (!v) fail("bad header value '" + tok + "'");
        if (key == "t") g.t = *v;
        if (key == "center") {
          g.center = *v;
          have_center = true;
        }
      }
      continue;
    }
    const auto sp = s.find_first_of(" \t,");
    if (sp == std::string_view::npos) fail("expected two columns");
    const auto x = to_double(s.substr(0, sp));
    const auto f = to_double(trim(s.substr(sp + 1)));
    if (!x || !f) fail("expected two numbers, got '" + std::string(s) + "'");
    rows.push_back({*x, *f});
  }
  if (!have_header || !have_center) throw Error(ErrorCode::ParseError, "missing header '# t=<time> center=<x0>'");
  if (rows.size() < 5) throw Error(ErrorCode::ParseError, "need at least 5 rows");

  // Tip rows are optional; x = a + c f^2 through the two outermost rows otherwise.
  auto tip_from = [](const ProfileNode& p1, const ProfileNode& p2) {
    const double c = (p2.x - p1.x) / (p2.f * p2.f - p1.f * p1.f);
    return ProfileNode{p1.x - c * p1.f * p1.f, 0.0};
  };
  if (rows.front().f != 0.0) rows.insert(rows.begin(), tip_from(rows[0], rows[1]));
  if (rows.back().f != 0.0) rows.push_back(tip_from(rows[rows.size() - 1], rows[rows.size() - 2]));
  g.nodes = std::move(rows);
  if (g.nodes.size() < 4) throw Error(ErrorCode::ParseError, "need at least 2 interior rows");
  g.h = g.nodes[2].x - g.nodes[1].x;
  g.check();
  return g;
}

ProfileGrid read_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_profile(in);
}

void write_profile(const std::filesystem::path& path, const ProfileGrid& grid) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_profile(out, grid);
}

// --- series and summary ----------------------------------------------------------------

void write_series(std::ostream& out, std::span<const DiagRecord> series) {
  const auto names = diag_field_names();
  for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "," : "") << names[k];
  out << '\n';
  for (const auto& r : series) {
    for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "," : "") << format_double(diag_field(r, k));
    out << '\n';
  }
}

RunSummary summarize_run(const EvolveResult& result, const FlowParams& params, std::size_t n) {
  RunSummary s;
  s.epsilon = params.epsilon;
  s.n = n;
  s.result = result;
  const auto& series = result.series;
  const double T = result.final_time;
  const double t_max = T * (1.0 - 1e-3);
  auto slack = [&](double DiagRecord::*m) { return params.monotone_slack * std::abs(series.front().*m); };
  s.q = assert_monotone(series, &DiagRecord::q, Direction::NonDecreasing, slack(&DiagRecord::q), t_max);
  s.q_eta = assert_monotone(series, &DiagRecord::q_eta, Direction::NonDecreasing, slack(&DiagRecord::q_eta), t_max);
  s.ffx = assert_monotone(series, &DiagRecord::ffx_max, Direction::NonIncreasing, slack(&DiagRecord::ffx_max), t_max);

  double h2_time = 0.0;
  double early_H = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& r = series[i];
    if (i > 0) h2_time += 0.5 * (r.h2_integral + series[i - 1].h2_integral) * (r.t - series[i - 1].t);
    if (r.t > t_max) continue;
    s.gb_residual_max = std::max(s.gb_residual_max, std::abs(r.gb_residual));
    if (std::isfinite(r.area_ode_residual)) {
      s.area_residual_max = std::max(s.area_residual_max, std::abs(r.area_ode_residual));
    }
    if (r.t <= 0.01 * T) early_H = std::min(early_H, r.H_min);
    s.amax_scaled = r.amax * std::sqrt(T - r.t);
  }
  s.extinction_identity = T + params.epsilon / kFourPi * h2_time - result.initial_area / kFourPi;
  s.H_min_floor = 0.5 * early_H;
  s.H_min_holds = std::all_of(series.begin(), series.end(), [&](const DiagRecord& r) { return r.H_min >= s.H_min_floor; });
  if (result.t_convex) s.roundness = roundness_trend(series, result.t_convex, T);
  return s;
}

void write_summary(std::ostream& out, std::span<const RunSummary> runs, const BoundsReport* uniformity) {
  auto pass = [](bool b) { return b ? "pass" : "fail"; };
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const RunSummary& s = runs[k];
    const EvolveResult& r = s.result;
    const std::string p = "run" + std::to_string(k) + ".";
    out << p << "epsilon=" << format_double(s.epsilon) << '\n';
    out << p << "n=" << s.n << '\n';
    out << p << "termination=" << to_string(r.termination) << '\n';
    if (!r.reason.empty()) out << p << "reason=" << r.reason << '\n';
    out << p << "final_time=" << format_double(r.final_time) << '\n';
    out << p << "T_predicted=" << format_double(r.T_predicted) << '\n';
    out << p << "t_convex=" << (r.t_convex ? format_double(*r.t_convex) : std::string("none")) << '\n';
    out << p << "steps=" << r.steps << '\n';
    out << p << "regrids=" << r.regrids << '\n';
    out << p << "extinction_identity=" << format_double(s.extinction_identity) << '\n';
    out << p << "gb_residual_max=" << format_double(s.gb_residual_max) << '\n';
    out << p << "area_residual_max=" << format_double(s.area_residual_max) << '\n';
    out << p << "max_radius_increase=" << format_double(r.max_radius_increase) << '\n';
    out << p << "q_monotone=" << pass(s.q.pass) << " worst=" << format_double(s.q.worst) << '\n';
    out << p << "q_eta_monotone=" << pass(s.q_eta.pass) << " worst=" << format_double(s.q_eta.worst) << '\n';
    out << p << "ffx_monotone=" << pass(s.ffx.pass) << " worst=" << format_double(s.ffx.worst) << '\n';
    out << p << "amax_scaled=" << format_double(s.amax_scaled) << '\n';
    out << p << "H_min_bound=" << pass(s.H_min_holds) << " floor=" << format_double(s.H_min_floor) << '\n';
    if (s.roundness) {
      out << p << "roundness_trend=" << pass(s.roundness->pass) << " mid=" << format_double(s.roundness->roundness_mid)
          << " late=" << format_double(s.roundness->roundness_late) << '\n';
    }
  }
  if (uniformity != nullptr) {
    out << "uniformity=" << pass(uniformity->pass) << '\n';
    for (const auto& c : uniformity->checks) {
      out << "uniformity." << c.name << '=' << pass(c.pass) << " variation=" << format_double(c.variation) << '\n';
    }
  }
}

// --- plots -----------------------------------------------------------------------------

namespace {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
};

void svg_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Curve>& curves) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) continue;
      x0 = std::min(x0, c.x[i]);
      x1 = std::max(x1, c.x[i]);
      y0 = std::min(y0, c.y[i]);
      y1 = std::max(y1, c.y[i]);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << format_double(std::round(xv * 1e4) / 1e4) << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
        << format_double(std::round(yv * 1e4) / 1e4) << "</text>\n";
  }
  double legend_y = T + 16;
  for (const auto& c : curves) {
    out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) continue;
      out << px(c.x[i]) << ',' << py(c.y[i]) << ' ';
    }
    out << "\"/>\n";
    if (!c.label.empty()) {
      out << "<text x=\"" << W - R - 8 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
          << c.color << "\">" << c.label << "</text>\n";
      legend_y += 16;
    }
  }
  out << "</svg>\n";
}

const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  return colors[k % 7];
}

}  // namespace

void write_plots(const std::filesystem::path& dir, const std::string& stem, const RunSummary& run,
                 const std::vector<ProfileGrid>& snapshots) {
  const auto& series = run.result.series;
  auto column = [&](double DiagRecord::*m) {
    std::vector<double> v;
    for (const auto& r : series) v.push_back(r.*m);
    return v;
  };
  const std::vector<double> t = column(&DiagRecord::t);

  std::vector<Curve> profiles;
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    Curve c{"t=" + format_double(snapshots[k].t), {}, {}, palette(k)};
    for (const auto& n : snapshots[k].nodes) {
      c.x.push_back(n.x);
      c.y.push_back(n.f);
    }
    for (auto it = snapshots[k].nodes.rbegin(); it != snapshots[k].nodes.rend(); ++it) {
      c.x.push_back(it->x);
      c.y.push_back(-it->f);
    }
    profiles.push_back(std::move(c));
  }
  if (!profiles.empty()) svg_plot(dir / (stem + "_profiles.svg"), "profile snapshots", profiles);

  std::vector<double> line;
  for (double ti : t) line.push_back(run.result.initial_area - kFourPi * ti);
  svg_plot(dir / (stem + "_area.svg"), "area",
           {{"area", t, column(&DiagRecord::area), palette(0)}, {"initial area - 4 pi t", t, line, palette(1)}});
  svg_plot(dir / (stem + "_q.svg"), "q", {{"q", t, column(&DiagRecord::q), palette(0)},
                                          {"q_eta", t, column(&DiagRecord::q_eta), palette(1)}});
  svg_plot(dir / (stem + "_hmin.svg"), "minimum of H", {{"H_min", t, column(&DiagRecord::H_min), palette(0)}});
  svg_plot(dir / (stem + "_roundness.svg"), "roundness",
           {{"roundness", t, column(&DiagRecord::roundness), palette(0)}});
}

// --- sweeps ----------------------------------------------------------------------------

namespace {

struct SweepOutcome {
  std::optional<RunSummary> summary;
  std::string error;
  std::string stem;
};

SweepOutcome run_point(const RunConfig& cfg, double eps, std::size_t n) {
  SweepOutcome out;
  out.stem = "eps" + format_double(eps) + "_n" + std::to_string(n);
  try {
    FlowParams params = cfg.params;
    params.epsilon = eps;
    SurfaceState surface = cfg.profile_path.empty()
                               ? make_preset_state(cfg.preset, n, params, cfg.preset_param)
                               : make_state(read_profile(cfg.profile_path), params.y_match_fraction);
    FlowState state = make_flow_state(std::move(surface), params);
    for (double t : cfg.snapshot_times) {
      if (!(t < state.T_predicted)) {
        throw Error(ErrorCode::InvalidArgument, "snapshot time " + format_double(t) + " not below the predicted extinction time " +
                                                    format_double(state.T_predicted));
      }
    }
    EvolveOptions opt;
    opt.record_every = cfg.record_every;
    opt.snapshot_times = cfg.snapshot_times;
    opt.max_steps = cfg.max_steps;
    const EvolveResult result = evolve(std::move(state), opt);
    out.summary = summarize_run(result, params, n);

    std::ofstream series(cfg.output_dir / ("series_" + out.stem + ".csv"));
    if (!series) throw Error(ErrorCode::IoError, "cannot write series file");
    write_series(series, result.series);
    for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
      write_profile(cfg.output_dir / ("profile_" + out.stem + "_" + std::to_string(k) + ".txt"), result.snapshots[k]);
    }
    if (cfg.emit_plots) write_plots(cfg.output_dir, out.stem, *out.summary, result.snapshots);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + config.output_dir.string());

  const std::vector<double> eps = config.epsilons.empty() ? std::vector<double>{config.params.epsilon} : config.epsilons;
  const std::vector<std::size_t> ns = config.grid_sizes.empty() ? std::vector<std::size_t>{config.n} : config.grid_sizes;
  std::vector<std::future<SweepOutcome>> jobs;
  for (double e : eps) {
    for (std::size_t n : ns) {
      jobs.push_back(std::async(std::launch::async, [&config, e, n] { return run_point(config, e, n); }));
    }
  }

  int status = 0;
  std::vector<RunSummary> summaries;
  std::vector<RunExtrema> extrema;
  for (auto& job : jobs) {
    SweepOutcome o = job.get();
    if (!o.summary) {
      log << o.stem << ": error: " << o.error << '\n';
      status = 1;
      continue;
    }
    const EvolveResult& r = o.summary->result;
    log << o.stem << ": " << to_string(r.termination) << " at t=" << format_double(r.final_time)
        << " (predicted " << format_double(r.T_predicted) << ")\n";
    if (r.termination != Termination::Extinct) {
      if (!r.reason.empty()) log << o.stem << ": " << r.reason << '\n';
      status = 1;
    }
    extrema.push_back(run_extrema(r.series, r.final_time * (1.0 - 1e-3)));
    summaries.push_back(std::move(*o.summary));
  }

  std::optional<BoundsReport> uniformity;
  if (extrema.size() > 1 && eps.size() > 1) uniformity = assert_bounds(extrema);
  std::ofstream summary(config.output_dir / "summary.txt");
  if (!summary) throw Error(ErrorCode::IoError, "cannot write summary");
  write_summary(summary, summaries, uniformity ? &*uniformity : nullptr);
  if (status == 0 && summaries.empty()) status = 1;
  return status;
}

}  // namespace hmcf
