#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "schatlab/errors.hpp"
#include "schatlab/json_io.hpp"
#include "schatlab/projections.hpp"
#include "schatlab/suites.hpp"

namespace {

using namespace schatlab;

void apply_thread_env() {
  if (const char* env = std::getenv("SCHATTEN_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) Eigen::setNbThreads(n);
  }
}

SuiteConfig load_config(const std::string& path) {
  if (path.empty()) return SuiteConfig{};
  return suite_config_from_json(load_json_file(path));
}

int run_build(const std::string& spec_path, const std::string& out_path) {
  const TypeSpec spec = type_spec_from_json(load_json_file(spec_path));
  const Subspace space = build_type(spec);
  save_json_file(out_path, to_json(space));
  return 0;
}

int run_verify(const std::string& space_path, const std::string& config_path,
               const std::string& out_path) {
  const SuiteConfig cfg = load_config(config_path);
  const Subspace space = subspace_from_json(load_json_file(space_path));
  const MatrixMap proj = projection_for(space, cfg.tol);
  Rng rng(cfg.master_seed, 1);
  const ProjectionReport report = verify_projection(
      proj, space.basis, space.spec.p, rng, cfg.samples, cfg.tol);

  const bool pass = report.idempotency <= 1e-10 &&
                    report.contractivity_excess <= 1e-9 &&
                    report.range_distance <= 1e-9 &&
                    report.positivity.value_or(0.0) <= 1e-9;
  Json out{{"spec", to_json(space.spec)},
           {"samples", report.samples},
           {"idempotency", report.idempotency},
           {"contractivity_excess", report.contractivity_excess},
           {"range_distance", report.range_distance},
           {"pass", pass}};
  if (report.positivity) out["positivity"] = *report.positivity;
  if (report.unital_dual_norm)
    out["unital_dual_norm"] = *report.unital_dual_norm;
  if (!out_path.empty()) save_json_file(out_path, out);
  std::cout << out.dump(2) << "\n";
  return pass ? 0 : 1;
}

int run_suites(const std::string& name, const std::string& config_path,
               const std::string& out_path) {
  const SuiteConfig cfg = load_config(config_path);
  const SuiteResult result = run_suite(name, cfg);
  const Json out = to_json(result);
  if (!out_path.empty()) save_json_file(out_path, out);
  for (const CheckResult& c : result.checks)
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name
              << "  value=" << c.value << "  bound=" << c.bound << "\n";
  std::cout << (result.pass() ? "suite passed" : "suite FAILED") << "\n";
  return result.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"numerical laboratory for 1-complemented Schatten subspaces"};
  app.require_subcommand(1);

  std::string spec_path, space_path, config_path, out_path, suite_name;

  CLI::App* build = app.add_subcommand("build", "build a model space");
  build->add_option("--spec", spec_path, "type spec JSON")->required();
  build->add_option("--out", out_path, "output space JSON")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "verify the projection of a space");
  verify->add_option("--space", space_path, "space JSON")->required();
  verify->add_option("--config", config_path, "config JSON");
  verify->add_option("--out", out_path, "output report JSON");

  CLI::App* suite = app.add_subcommand("suite", "run a named check suite");
  suite->add_option("name", suite_name, "suite name")->required();
  suite->add_option("--config", config_path, "config JSON");
  suite->add_option("--out", out_path, "output report JSON");

  try {
    app.parse(argc, argv);
    if (build->parsed()) return run_build(spec_path, out_path);
    if (verify->parsed()) return run_verify(space_path, config_path, out_path);
    return run_suites(suite_name, config_path, out_path);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
