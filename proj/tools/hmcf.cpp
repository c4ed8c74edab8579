#include <CLI11.hpp>

#include <iostream>

#include "hmcf/cli_io.hpp"
#include "hmcf/diagnostics.hpp"
#include "hmcf/error.hpp"
#include "hmcf/profile_geometry.hpp"

namespace {

int validate_file(const std::string& path) {
  const hmcf::ProfileGrid grid = hmcf::read_profile(path);
  const hmcf::ValidationReport r = hmcf::validate_initial(grid);
  std::cout << "valid=" << (r.ok ? "yes" : "no") << '\n';
  for (const auto& f : r.failures) std::cout << "failed=" << f << '\n';
  if (r.ok) {
    std::cout << "H_min=" << hmcf::format_double(r.H_min) << '\n';
    std::cout << "support_min=" << hmcf::format_double(r.support_min) << '\n';
    std::cout << "area=" << hmcf::format_double(r.area) << '\n';
    std::cout << "T_predicted=" << hmcf::format_double(r.T_predicted) << '\n';
  }
  return r.ok ? 0 : 1;
}

int sphere(double r0, double eps, double t) {
  const hmcf::SphereOracle o = hmcf::sphere_oracle(r0, eps, t);
  std::cout << "R=" << hmcf::format_double(o.R) << '\n';
  std::cout << "area=" << hmcf::format_double(o.area) << '\n';
  std::cout << "kappa=" << hmcf::format_double(o.kappa) << '\n';
  std::cout << "q=" << hmcf::format_double(o.q) << '\n';
  std::cout << "T=" << hmcf::format_double(o.T) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic mean curvature flow of surfaces of revolution"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "evolve the configured surfaces and write series, snapshots and summary");
  run_cmd->add_option("config", config_path, "key=value configuration file")->required();

  std::string profile_path;
  auto* validate_cmd = app.add_subcommand("validate", "check the hypotheses of a profile file");
  validate_cmd->add_option("profile", profile_path, "profile file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "closed-form reference solutions");
  oracle_cmd->require_subcommand(1);
  double r0 = 1.0, eps = 0.0, t = 0.0;
  auto* sphere_cmd = oracle_cmd->add_subcommand("sphere", "shrinking round sphere");
  sphere_cmd->add_option("--r0", r0, "initial radius")->default_val(1.0);
  sphere_cmd->add_option("--epsilon", eps, "regularization weight")->default_val(0.0);
  sphere_cmd->add_option("--t", t, "time")->default_val(0.0);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return hmcf::run(hmcf::read_config(config_path), std::cerr);
    if (*validate_cmd) return validate_file(profile_path);
    if (*sphere_cmd) return sphere(r0, eps, t);
  } catch (const hmcf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
