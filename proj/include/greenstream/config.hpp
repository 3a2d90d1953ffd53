#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenstream/distributions.hpp"
#include "greenstream/policy.hpp"
#include "greenstream/population.hpp"

namespace greenstream {

enum class Scenario {
    generate_population,
    sweep_incentives,
    sweep_users,
    group_targeting,
    mean_vs_individual,
    altruism,
    educate,
    learn,
};

const char* scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(const std::string& name);

// Structural problems with the config document: unreadable file, invalid
// JSON, unknown scenario or field types. Mapped to exit code 2.
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully resolved run description; every field has its default filled in.
struct ScenarioConfig {
    Scenario scenario = Scenario::generate_population;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::size_t n_replicates = 20;
    double c_admin = 0.04;
    std::string kernel = "auto"; // auto|scalar|avx2
    PopulationConfig population;

    // sweep-incentives, group-targeting, mean-vs-individual
    std::vector<DistributionSpec> offer_grid;

    // sweep-users
    DistributionSpec offer_law = DistributionSpec::make_constant(0.0);
    std::vector<std::size_t> k_grid;
    SelectionRule selection = SelectionRule::random_permutation;
    bool include_unoffered = true;

    // group-targeting
    std::size_t group_a_count = 0;
    GroupOverrides group_a;
    GroupOverrides group_b;

    // altruism
    std::vector<double> beta_grid;
    std::size_t user_index = 0;

    // educate
    DistributionSpec baseline_r_min = DistributionSpec::make_constant(0.0);
    DistributionSpec educated_r_min = DistributionSpec::make_constant(0.0);
    std::vector<double> offer_values;

    // learn
    std::vector<std::size_t> m_grid;
    double ridge = 0.0;

    // Normalizations applied while resolving (e.g. reversed uniform bounds);
    // validate_config surfaces them as warnings.
    std::vector<std::string> resolve_notes;
};

// Reads and parses a JSON config file. Throws ConfigParseError.
nlohmann::json load_config_file(const std::string& path);

// Applies one "dotted.path=value" override per entry; values parse as JSON
// scalars with plain-string fallback. Throws ConfigParseError on entries
// without '=' or with an empty path.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& sets);

// Converts the document to a resolved config. Unknown scenario names, wrong
// field types and malformed law/grid objects throw ConfigParseError.
// expected_scenario pins the subcommand; a conflicting "scenario" field in
// the document is a parse error.
ScenarioConfig resolve_config(const nlohmann::json& doc,
                              std::optional<Scenario> expected_scenario = {});

struct ValidationReport {
    std::vector<std::string> errors;   // "field.path: message"
    std::vector<std::string> warnings; // e.g. offer laws with mass below zero
    bool ok() const { return errors.empty(); }
};

// Collects every domain violation in one pass; never throws.
ValidationReport validate_config(const ScenarioConfig& config);

// Full resolved-config echo with version and backend, written as the run
// manifest. A manifest is itself a loadable config for the same scenario.
nlohmann::json resolved_json(const ScenarioConfig& config);

} // namespace greenstream
