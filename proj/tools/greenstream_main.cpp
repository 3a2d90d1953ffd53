#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "greenstream/config.hpp"
#include "greenstream/scenarios.hpp"
#include "greenstream/version.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfigParse = 2;
constexpr int kExitValidation = 3;

int run_one(std::optional<greenstream::Scenario> expected,
            const std::string& config_path,
            const std::vector<std::string>& sets) {
    using namespace greenstream;

    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) doc = load_config_file(config_path);
    apply_overrides(doc, sets);

    ScenarioConfig config = resolve_config(doc, expected);

    ValidationReport report = validate_config(config);
    for (const std::string& w : report.warnings)
        std::cerr << "warning: " << w << "\n";
    if (!report.ok()) {
        for (const std::string& e : report.errors)
            std::cerr << "error: " << e << "\n";
        return kExitValidation;
    }

    // All outputs are assembled in memory before anything touches the
    // filesystem, so a failing run leaves no partial results behind.
    ScenarioOutputs outputs = run_scenario(config);

    std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : outputs) {
        std::filesystem::path path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << content) || !out.flush())
            throw std::runtime_error("cannot write " + path.string());
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    using namespace greenstream;

    CLI::App app{"Incentive-policy simulation toolkit for green video "
                 "streaming populations"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> replicates;

    struct Entry {
        CLI::App* cmd;
        std::optional<Scenario> scenario;
    };
    std::vector<Entry> entries;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("-c,--config", config_path,
                                    "JSON config file");
        opt->check(CLI::ExistingFile);
        if (config_required) opt->required();
        cmd->add_option("--seed", seed, "Master seed (default 1)");
        cmd->add_option("-o,--out", out_dir, "Output directory (default out)");
        cmd->add_option("--replicates", replicates,
                        "Replicates per grid point (default 20)");
        cmd->add_option("--set", sets,
                        "Override a config field: dotted.path=value")
            ->take_all();
    };

    const std::pair<Scenario, const char*> all[] = {
        {Scenario::generate_population,
         "Draw a synthetic user population and write it as CSV"},
        {Scenario::sweep_incentives,
         "Score offer laws over a grid of distribution parameters"},
        {Scenario::sweep_users, "Vary how many users receive offers"},
        {Scenario::group_targeting,
         "Compare offering to group A, group B, or everyone"},
        {Scenario::mean_vs_individual,
         "Compare one shared mean offer with per-user draws"},
        {Scenario::altruism,
         "Trace one user's acceptance threshold across altruism levels"},
        {Scenario::educate,
         "Compare ratio curves before and after a threshold intervention"},
        {Scenario::learn,
         "Estimate user parameters from simulated interaction histories"},
    };
    for (auto [s, blurb] : all) {
        CLI::App* cmd = app.add_subcommand(scenario_name(s), blurb);
        add_common(cmd, false);
        entries.push_back({cmd, s});
    }
    CLI::App* run_cmd =
        app.add_subcommand("run", "Run the scenario named in the config file");
    add_common(run_cmd, true);
    entries.push_back({run_cmd, std::nullopt});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigParse;
    }

    std::optional<Scenario> expected;
    for (const Entry& entry : entries)
        if (entry.cmd->parsed()) expected = entry.scenario;

    // Dedicated flags become overrides applied before --set entries.
    std::vector<std::string> all_sets;
    if (seed) all_sets.push_back("seed=" + std::to_string(*seed));
    if (out_dir) all_sets.push_back("out_dir=" + *out_dir);
    if (replicates)
        all_sets.push_back("n_replicates=" + std::to_string(*replicates));
    all_sets.insert(all_sets.end(), sets.begin(), sets.end());

    try {
        return run_one(expected, config_path, all_sets);
    } catch (const ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
