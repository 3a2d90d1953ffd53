#pragma once

#include <map>
#include <string>

#include "greenstream/config.hpp"

namespace greenstream {

// File name -> content. Every scenario produces a manifest.json plus its
// results file (results.csv, or population.csv for generate-population).
using ScenarioOutputs = std::map<std::string, std::string>;

// Runs one fully validated scenario config in memory. The caller decides
// where (and whether) to write the outputs.
ScenarioOutputs run_scenario(const ScenarioConfig& config);

} // namespace greenstream
