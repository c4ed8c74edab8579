#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "hmcf/cli_io.hpp"
#include "hmcf/error.hpp"

namespace fs = std::filesystem;
using hmcf::ErrorCode;

namespace {

std::string error_text(auto&& fn, ErrorCode expected) {
  try {
    fn();
  } catch (const hmcf::Error& e) {
    CHECK(e.code() == expected);
    return e.what();
  }
  FAIL("no error thrown");
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hmcf_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double min_lambda2(const hmcf::SurfaceState& s) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : hmcf::sample_surface(s)) m = std::min(m, p.curv.lambda2);
  return m;
}

}  // namespace

TEST_CASE("config defaults and overrides") {
  const auto d = hmcf::parse_config("");
  CHECK(d.preset == "sphere");
  CHECK(d.n == 400);
  CHECK(d.params.epsilon == 0.0);
  CHECK(d.params.delta1 == 0.2);
  CHECK(d.params.eta == 0.1);
  CHECK(d.params.area_floor == 0.0);
  CHECK(d.params.dt_min_fraction == 1e-12);
  CHECK(d.record_every == 100);
  CHECK_FALSE(d.emit_plots);

  const auto c = hmcf::parse_config(
      "# sweep\n"
      "preset=bumpy n=120   # trailing comment\n"
      "epsilons=0,0.05,0.1\n"
      "delta1=0.3 eta=0.25\n"
      "snapshot_times=0.1,0.2 emit_plots=true\n"
      "output_dir=out/run1\n");
  CHECK(c.preset == "bumpy");
  CHECK(c.n == 120);
  CHECK(c.epsilons == std::vector<double>{0.0, 0.05, 0.1});
  CHECK(c.params.delta1 == 0.3);
  CHECK(c.params.eta == 0.25);
  CHECK(c.snapshot_times == std::vector<double>{0.1, 0.2});
  CHECK(c.emit_plots);
  CHECK(c.output_dir == fs::path("out/run1"));
}

TEST_CASE("config errors name the line and key") {
  const auto msg = error_text([] { hmcf::parse_config("epsilon=0.1\ndelta1=1.5\n"); }, ErrorCode::ParseError);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("delta1 out of (0,1)") != std::string::npos);

  const auto unknown = error_text([] { hmcf::parse_config("n=100\n\nbogus=3\n"); }, ErrorCode::ParseError);
  CHECK(unknown.find("line 3") != std::string::npos);
  CHECK(unknown.find("bogus") != std::string::npos);

  const auto type = error_text([] { hmcf::parse_config("epsilon=abc"); }, ErrorCode::ParseError);
  CHECK(type.find("line 1, key epsilon") != std::string::npos);

  error_text([] { hmcf::parse_config("n=10"); }, ErrorCode::ParseError);
  error_text([] { hmcf::parse_config("emit_plots=maybe"); }, ErrorCode::ParseError);
  error_text([] { hmcf::parse_config("justaword"); }, ErrorCode::ParseError);
  error_text([] { hmcf::read_config("/nonexistent/hmcf.cfg"); }, ErrorCode::IoError);
}

TEST_CASE("presets satisfy the starting hypotheses") {
  for (auto name : hmcf::preset_names()) {
    const auto s = hmcf::make_preset_state(name, 200);
    const auto rep = hmcf::validate_initial(s);
    CHECK_MESSAGE(rep.ok, name);
  }
  const auto sphere = hmcf::make_preset("sphere", 200);
  CHECK(sphere.a() == -1.0);
  CHECK(sphere.b() == 1.0);
  CHECK(hmcf::validate_initial(hmcf::make_preset_state("sphere", 200)).T_predicted == doctest::Approx(1.0).epsilon(1e-3));

  // bumpy is not convex; squashed and sphere are
  CHECK(min_lambda2(hmcf::make_preset_state("bumpy", 200)) < 0.0);
  CHECK(min_lambda2(hmcf::make_preset_state("squashed", 200)) > 0.0);
  CHECK(hmcf::bumpy_amplitude(200) > 0.0);

  error_text([] { hmcf::make_preset_state("squashed", 200, {}, 0.0); }, ErrorCode::InvalidArgument);
  error_text([] { hmcf::make_preset_state("squashed", 200, {}, -1.0); }, ErrorCode::InvalidArgument);
  error_text([] { hmcf::make_preset_state("torus", 200); }, ErrorCode::InvalidArgument);
}

TEST_CASE("shortest round-trip formatting") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)));
    CHECK(std::stod(hmcf::format_double(v)) == v);
  }
  CHECK(hmcf::format_double(0.1) == "0.1");
  CHECK(hmcf::format_double(2.0) == "2");
}

TEST_CASE("profile files round-trip bit-exactly") {
  auto g = hmcf::make_preset("bumpy", 150);
  g.t = 0.125;
  std::stringstream io;
  hmcf::write_profile(io, g);
  const auto back = hmcf::read_profile(io);
  REQUIRE(back.size() == g.size());
  CHECK(back.t == g.t);
  CHECK(back.center == g.center);
  CHECK(back.h == g.h);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(back.nodes[i].x == g.nodes[i].x);
    CHECK(back.nodes[i].f == g.nodes[i].f);
  }

  const fs::path dir = scratch_dir("profile");
  hmcf::write_profile(dir / "p.txt", g);
  CHECK(hmcf::read_profile(dir / "p.txt").nodes.back().x == g.nodes.back().x);
}

TEST_CASE("profile files without tip rows get their tips extrapolated") {
  const auto g = hmcf::make_preset("sphere", 200);
  std::ostringstream out;
  out << "# t=0 center=0\n";
  for (std::size_t i = 1; i + 1 < g.size(); ++i)
    out << hmcf::format_double(g.nodes[i].x) << ' ' << hmcf::format_double(g.nodes[i].f) << '\n';
  std::istringstream in(out.str());
  const auto back = hmcf::read_profile(in);
  REQUIRE(back.size() == g.size());
  // the parabola misses the quartic term of the circle: O(f^4) at the outermost row
  CHECK(back.a() == doctest::Approx(-1.0).epsilon(5e-4));
  CHECK(back.b() == doctest::Approx(1.0).epsilon(5e-4));
  CHECK(back.a() < g.nodes[1].x);
  CHECK(back.nodes.front().f == 0.0);
}

TEST_CASE("corrupt profile files are rejected") {
  std::istringstream no_header("0 0\n0.5 1\n1 0\n");
  error_text([&] { hmcf::read_profile(no_header); }, ErrorCode::ParseError);
  std::istringstream garbage("# t=0 center=0\n0 0\n0.1 abc\n");
  const auto msg = error_text([&] { hmcf::read_profile(garbage); }, ErrorCode::ParseError);
  CHECK(msg.find("line 3") != std::string::npos);
  std::istringstream short_file("# t=0 center=0\n0 0\n1 0\n");
  error_text([&] { hmcf::read_profile(short_file); }, ErrorCode::ParseError);
  error_text([] { hmcf::read_profile(fs::path("/nonexistent/profile.txt")); }, ErrorCode::IoError);
}

TEST_CASE("batch runs are deterministic and write every output") {
  const fs::path a = scratch_dir("run_a");
  const fs::path b = scratch_dir("run_b");
  const std::string base = "preset=sphere n=60 record_every=200 epsilons=0,0.1 snapshot_times=0.3 emit_plots=true\n";
  std::ostringstream log_a, log_b;
  CHECK(hmcf::run(hmcf::parse_config(base + "output_dir=" + a.string()), log_a) == 0);
  CHECK(hmcf::run(hmcf::parse_config(base + "output_dir=" + b.string()), log_b) == 0);
  CHECK(log_a.str() == log_b.str());
  for (const char* name : {"series_eps0_n60.csv", "series_eps0.1_n60.csv", "profile_eps0_n60_0.txt", "summary.txt",
                           "eps0_n60_area.svg"}) {
    REQUIRE_MESSAGE(fs::exists(a / name), name);
    CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name);
  }
  const std::string summary = slurp(a / "summary.txt");
  CHECK(summary.find("run0.termination=extinct") != std::string::npos);
  CHECK(summary.find("uniformity.") != std::string::npos);

  const auto snap = hmcf::read_profile(a / "profile_eps0_n60_0.txt");
  CHECK(snap.t == doctest::Approx(0.3));
}

TEST_CASE("a snapshot past the predicted extinction fails the run") {
  const fs::path dir = scratch_dir("late");
  std::ostringstream log;
  const auto cfg = hmcf::parse_config("n=60 snapshot_times=2 output_dir=" + dir.string());
  CHECK(hmcf::run(cfg, log) == 1);
  CHECK(log.str().find("snapshot time") != std::string::npos);
}
