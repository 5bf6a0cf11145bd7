#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace epilim {

enum class Profile { quick, full };

std::string to_string(Profile p);
Profile profile_from_string(const std::string& s);

/// One named assertion: a mathematical claim with computed sides, gap and
/// its frozen tolerance.
struct CheckRow {
  std::string name;
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string profile;
  std::vector<CheckRow> checks;
  bool pass() const;
};

ScenarioReport scenario_envelope_gap(int depth, int n_values);
ScenarioReport scenario_main_inequality(std::uint64_t seed, Profile profile);
ScenarioReport scenario_partial_envelope(std::uint64_t seed, Profile profile);
ScenarioReport scenario_necessity_construction(std::uint64_t seed);
ScenarioReport scenario_module_properties(std::uint64_t seed, Profile profile);

/// Scenarios included in "all", sorted.
std::vector<std::string> scenario_names();

/// Runs one scenario by name; "mutant-demo" is a deliberately failing
/// self-test target excluded from "all".
ScenarioReport run_scenario(const std::string& name, std::uint64_t seed, Profile profile);

struct SuiteResult {
  std::vector<ScenarioReport> reports;  // sorted by scenario name
  bool pass() const;
};

/// Runs every scenario; scenario-level parallelism, deterministic aggregation.
SuiteResult run_all(std::uint64_t seed, Profile profile, int threads = 0);

nlohmann::json report_to_json(const ScenarioReport& r);
nlohmann::json suite_to_json(const SuiteResult& s, std::uint64_t seed, Profile profile);

}  // namespace epilim
