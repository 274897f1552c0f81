#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schatlab/json_io.hpp"
#include "schatlab/linalg.hpp"

namespace schatlab {

struct SuiteConfig {
  std::uint64_t master_seed = 20260826;
  int samples = 40;  // random draws per sampled check
  Tolerances tol;
};

SuiteConfig suite_config_from_json(const Json& j);
Json to_json(const SuiteConfig& cfg);

// One named check: measured value against its fixed bound.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

Json to_json(const SuiteResult& result);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

// The individual check groups, also exposed for the acceptance runner.
std::vector<CheckResult> check_graded_isometry(const SuiteConfig& cfg);
std::vector<CheckResult> check_spin_axioms(const SuiteConfig& cfg);
std::vector<CheckResult> check_catalog_projections(const SuiteConfig& cfg);
std::vector<CheckResult> check_graded_rank_obstruction(const SuiteConfig& cfg);
std::vector<CheckResult> check_duality_map(const SuiteConfig& cfg);
std::vector<CheckResult> check_exponent_bridge(const SuiteConfig& cfg);
std::vector<CheckResult> check_disjoint_additivity(const SuiteConfig& cfg);
std::vector<CheckResult> check_word_projections(const SuiteConfig& cfg);
std::vector<CheckResult> check_equivalence_transport(const SuiteConfig& cfg);
std::vector<CheckResult> check_decomposition(const SuiteConfig& cfg);
std::vector<CheckResult> check_graded_halves(const SuiteConfig& cfg);

}  // namespace schatlab
