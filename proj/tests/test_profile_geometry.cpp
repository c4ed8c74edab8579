#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hmcf/cli_io.hpp"
#include "hmcf/error.hpp"
#include "hmcf/profile_geometry.hpp"

using hmcf::ErrorCode;
using hmcf::Side;
constexpr double kPi = std::numbers::pi;

namespace {

hmcf::SurfaceState sphere_state(double R, std::size_t n) {
  auto f = [R](double x) { return std::sqrt(std::max(0.0, R * R - x * x)); };
  return hmcf::make_state(hmcf::sample_profile(f, -R, R, n, 0.0));
}

}  // namespace

TEST_CASE("centered second difference of sin(pi x)") {
  const double h = 1e-3;
  std::vector<double> f;
  for (int i = 0; i <= 1000; ++i) f.push_back(std::sin(kPi * i * h));
  const auto d = hmcf::finite_differences(f, h);
  CHECK(std::abs(d.fxx[500] + kPi * kPi) < 1e-4);
  CHECK(std::abs(d.fx[250] - kPi * std::cos(kPi * 0.25)) < 1e-4);
}

TEST_CASE("finite differences are exact on quadratics, including the ends") {
  const double h = 0.1;
  std::vector<double> f;
  for (int i = 0; i < 8; ++i) {
    const double x = i * h;
    f.push_back(2.0 * x * x - 3.0 * x + 1.0);
  }
  const auto d = hmcf::finite_differences(f, h);
  for (int i = 0; i < 8; ++i) {
    CHECK(d.fx[i] == doctest::Approx(4.0 * i * h - 3.0).epsilon(1e-9));
    CHECK(d.fxx[i] == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("finite differences need five samples") {
  std::vector<double> f{0.0, 1.0, 2.0, 3.0};
  try {
    hmcf::finite_differences(f, 0.1);
    FAIL("expected throw");
  } catch (const hmcf::Error& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
}

TEST_CASE("sphere curvatures and support") {
  const double R = 0.8;
  const auto s = sphere_state(R, 400);
  const auto field = hmcf::principal_curvatures(s.grid);
  const auto sup = hmcf::support_inner(s.grid);
  const auto own = hmcf::owned_range(s);
  for (std::size_t i = own.lo; i <= own.hi; ++i) {
    CHECK(field.points[i].lambda1 == doctest::Approx(1.0 / R).epsilon(1e-3));
    CHECK(field.points[i].lambda2 == doctest::Approx(1.0 / R).epsilon(1e-3));
    CHECK(sup[i] == doctest::Approx(R).epsilon(1e-4));
  }
  for (const auto& p : hmcf::sample_surface(s)) {
    CHECK(p.curv.H == doctest::Approx(2.0 / R).epsilon(1e-3));
    CHECK(p.support == doctest::Approx(R).epsilon(1e-4));
  }
  CHECK(std::isnan(field.points.front().lambda1));
}

TEST_CASE("chart curvature of a sphere cap") {
  const double R = 2.0;
  for (double y : {0.0, 0.3, 1.0, 1.5}) {
    const double py = y / std::sqrt(R * R - y * y);
    const double pyy = R * R / std::pow(R * R - y * y, 1.5);
    const auto c = hmcf::chart_curvature_at(y, py, pyy);
    CHECK(c.lambda1 == doctest::Approx(1.0 / R));
    CHECK(c.lambda2 == doctest::Approx(1.0 / R));
  }
}

TEST_CASE("sphere area and Gauss-Bonnet integral") {
  const double R = 1.0;
  const auto s = sphere_state(R, 400);
  CHECK(hmcf::surface_area(s) == doctest::Approx(4.0 * kPi * R * R).epsilon(1e-4));
  CHECK(hmcf::gauss_bonnet_integral(s) == doctest::Approx(4.0 * kPi).epsilon(1e-3));
  CHECK(hmcf::h2_integral(s) == doctest::Approx(16.0 * kPi).epsilon(1e-3));
}

TEST_CASE("area of a prolate spheroid") {
  // x^2/c^2 + r^2 = 1 with c = 2: area = 2 pi (1 + c^2 asin(e)/(c e)), e = sqrt(1 - 1/c^2).
  const double c = 2.0;
  auto f = [c](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x / (c * c))); };
  const auto s = hmcf::make_state(hmcf::sample_profile(f, -c, c, 600, 0.0));
  const double e = std::sqrt(1.0 - 1.0 / (c * c));
  const double exact = 2.0 * kPi * (1.0 + c * std::asin(e) / e);
  CHECK(hmcf::surface_area(s) == doctest::Approx(exact).epsilon(1e-4));
  CHECK(hmcf::gauss_bonnet_integral(s) == doctest::Approx(4.0 * kPi).epsilon(2e-3));
}

TEST_CASE("tip chart from lattice data matches the exact inverse") {
  const double R = 1.0;
  const auto s = sphere_state(R, 400);
  for (const auto& n : s.left.nodes) {
    CHECK(n.g == doctest::Approx(-std::sqrt(R * R - n.y * n.y)).epsilon(1e-6));
  }
  for (const auto& n : s.right.nodes) {
    CHECK(n.g == doctest::Approx(std::sqrt(R * R - n.y * n.y)).epsilon(1e-6));
  }
  CHECK(s.left.m() % 2 == 0);
  CHECK(s.left.y_match() == doctest::Approx(0.6 * s.grid.max_radius()));
}

TEST_CASE("curve evaluation round trips") {
  const auto s = sphere_state(1.0, 400);
  for (double x : {-0.999, -0.9, -0.5, 0.0, 0.3, 0.95, 0.9995}) {
    CHECK(hmcf::state_radius(s, x) == doctest::Approx(std::sqrt(1.0 - x * x)).epsilon(1e-5));
  }
  for (double y : {0.01, 0.2, 0.5, 0.9}) {
    CHECK(hmcf::state_abscissa(s, Side::Left, y) == doctest::Approx(-std::sqrt(1.0 - y * y)).epsilon(1e-6));
    CHECK(hmcf::chart_height(s.right, hmcf::chart_abscissa(s.right, 0.7 * y * s.right.y_match())) ==
          doctest::Approx(0.7 * y * s.right.y_match()).epsilon(1e-9));
  }
}

TEST_CASE("validation accepts a sphere and reports its predicted lifetime") {
  const auto s = sphere_state(1.0, 200);
  const auto r = hmcf::validate_initial(s);
  CHECK(r.ok);
  CHECK(r.T_predicted == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.H_min == doctest::Approx(2.0).epsilon(5e-3));
  CHECK(r.support_min == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("validation names the failed hypothesis") {
  auto sphere = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
  SUBCASE("center outside the body") {
    const auto g = hmcf::sample_profile(sphere, -1.0, 1.0, 200, 1.5);
    const auto r = hmcf::validate_initial(g);
    CHECK_FALSE(r.ok);
    REQUIRE(r.codes.size() == 1);
    CHECK(r.codes[0] == ErrorCode::NotStarShaped);
    CHECK_THROWS_AS(hmcf::require_valid(r), hmcf::Error);
  }
  SUBCASE("dumbbell") {
    auto db = [](double x) {
      const double base = std::sqrt(std::max(0.0, x * (1.0 - x)));
      return base * (1.0 - 0.8 * std::exp(-200.0 * (x - 0.5) * (x - 0.5)));
    };
    const auto r = hmcf::validate_initial(hmcf::sample_profile(db, 0.0, 1.0, 400, 0.5));
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.codes.empty());
    CHECK(r.codes[0] == ErrorCode::MeanConvexityLost);
  }
  SUBCASE("nonzero tip") {
    auto g = hmcf::sample_profile(sphere, -1.0, 1.0, 200, 0.0);
    g.nodes.front().f = 0.01;
    const auto r = hmcf::validate_initial(g);
    CHECK_FALSE(r.ok);
    CHECK(r.codes[0] == ErrorCode::DegenerateProfile);
  }
  SUBCASE("too few nodes") {
    const auto r = hmcf::validate_initial(hmcf::sample_profile(sphere, -1.0, 1.0, 6, 0.0));
    CHECK_FALSE(r.ok);
  }
}

TEST_CASE("support of a tilted node") {
  CHECK(hmcf::support_value(0.5, 1.0, 1.0) == doctest::Approx(0.35355339059).epsilon(1e-10));
}

TEST_CASE("bumpy preset area against a refined independent quadrature") {
  // 2 pi int f |(x', f')| d theta with x = (1 - cos theta)/2, 64000 trapezoid panels
  // plus one Richardson step, for amplitude 0.05
  constexpr double oracle = 8.9061637081;
  REQUIRE(hmcf::bumpy_amplitude(400) == 0.05);
  const auto coarse = hmcf::make_preset_state("bumpy", 400);
  const auto fine = hmcf::make_preset_state("bumpy", 800);
  CHECK(std::abs(hmcf::surface_area(coarse) / oracle - 1.0) < 5e-5);
  CHECK(std::abs(hmcf::surface_area(fine) / oracle - 1.0) < 1e-5);
  CHECK(std::abs(hmcf::gauss_bonnet_integral(fine) / (4.0 * kPi) - 1.0) < 5e-3);
}
