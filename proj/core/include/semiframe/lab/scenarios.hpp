#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semiframe/lab/run_report.hpp"
#include "semiframe/numeric.hpp"

namespace semiframe::lab {

struct ScenarioConfig {
  Index grid = Index{1} << 14;  // nodes on [0, 1) for exponential systems
  Index ladder_size = 256;      // N at the first ladder level
  int ladder_levels = 4;
  std::optional<double> tol;    // overrides the tolerance of checks without a pinned one
  unsigned long seed = 42;

  double tolerance(double fallback) const { return tol.value_or(fallback); }
  nlohmann::ordered_json to_json() const;
};

struct Scenario {
  std::string name;
  std::string description;
  std::function<RunReport(const ScenarioConfig&)> run;
};

const std::vector<Scenario>& registry();
const Scenario* find_scenario(const std::string& name);

// Throws InputError for an unknown name. Fills in name, description, config and timing.
RunReport run_scenario(const std::string& name, const ScenarioConfig& config = {});

}  // namespace semiframe::lab
