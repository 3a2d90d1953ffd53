#include <stdexcept>

#include "greenstream/altruism.hpp"
#include "greenstream/csv.hpp"
#include "greenstream/education.hpp"
#include "greenstream/kernels/kernels.hpp"
#include "greenstream/learning.hpp"
#include "greenstream/policy.hpp"
#include "greenstream/scenarios.hpp"

namespace greenstream {

namespace {

std::vector<std::string> grid_labels(const SweepPoint& first) {
    std::vector<std::string> out;
    for (const auto& [name, _] : first.grid) out.push_back(name);
    return out;
}

void check_grid_shape(const std::vector<std::string>& labels,
                      const SweepPoint& pt) {
    bool same = pt.grid.size() == labels.size();
    for (std::size_t i = 0; same && i < labels.size(); ++i)
        same = pt.grid[i].first == labels[i];
    if (!same)
        throw std::runtime_error(
            "offer grid laws must share one parameter shape");
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    if (points.empty()) throw std::runtime_error("empty sweep");
    std::vector<std::string> labels = grid_labels(points.front());
    std::vector<std::string> header = labels;
    header.insert(header.end(), {"expected_cost", "expected_flexibility",
                                 "ratio", "ratio_stderr", "is_argmax"});
    CsvWriter w(header);
    for (const SweepPoint& pt : points) {
        check_grid_shape(labels, pt);
        w.begin_row();
        for (const auto& [_, value] : pt.grid) w.add(value);
        w.add(pt.expected_cost);
        w.add(pt.expected_flexibility);
        w.add(pt.ratio);
        w.add(pt.ratio_stderr);
        w.add(pt.is_argmax ? 1 : 0);
        w.end_row();
    }
    return w.str();
}

const char* target_name(TargetChoice t) {
    switch (t) {
    case TargetChoice::group_a: return "group_a";
    case TargetChoice::group_b: return "group_b";
    case TargetChoice::both: return "both";
    }
    return "unknown";
}

std::string run_sweep_incentives(const ScenarioConfig& c) {
    std::vector<UserProfile> profiles = generate_population(c.population, c.seed);
    PopulationArrays arrays =
        PopulationArrays::from(profiles, c.population.bounds);
    return sweep_csv(sweep_distribution(arrays, c.offer_grid, c.c_admin,
                                        c.n_replicates, c.seed));
}

std::string run_sweep_users(const ScenarioConfig& c) {
    std::vector<UserProfile> profiles = generate_population(c.population, c.seed);
    PopulationArrays arrays =
        PopulationArrays::from(profiles, c.population.bounds);
    SubsetSweepOptions options;
    options.selection = c.selection;
    options.include_unoffered = c.include_unoffered;
    return sweep_csv(sweep_subset_size(arrays, c.offer_law, c.k_grid, c.c_admin,
                                       c.n_replicates, c.seed, options));
}

std::string run_group_targeting(const ScenarioConfig& c) {
    std::vector<UserProfile> base = generate_population(c.population, c.seed);
    PartitionedPopulation split =
        partition_population(base, c.group_a_count, c.group_a, c.group_b,
                             c.population.bounds, c.seed);
    std::vector<TargetingPoint> points =
        compare_group_targeting(split, c.population.bounds, c.offer_grid,
                                c.c_admin, c.n_replicates, c.seed);
    if (points.empty()) throw std::runtime_error("empty sweep");

    std::vector<std::string> labels = grid_labels(points.front().point);
    std::vector<std::string> header{"target"};
    header.insert(header.end(), labels.begin(), labels.end());
    header.insert(header.end(), {"expected_cost", "expected_flexibility",
                                 "ratio", "ratio_stderr", "is_argmax"});
    CsvWriter w(header);
    for (const TargetingPoint& tp : points) {
        check_grid_shape(labels, tp.point);
        w.begin_row();
        w.add(std::string(target_name(tp.target)));
        for (const auto& [_, value] : tp.point.grid) w.add(value);
        w.add(tp.point.expected_cost);
        w.add(tp.point.expected_flexibility);
        w.add(tp.point.ratio);
        w.add(tp.point.ratio_stderr);
        w.add(tp.point.is_argmax ? 1 : 0);
        w.end_row();
    }
    return w.str();
}

std::string run_mean_vs_individual(const ScenarioConfig& c) {
    std::vector<UserProfile> profiles = generate_population(c.population, c.seed);
    PopulationArrays arrays =
        PopulationArrays::from(profiles, c.population.bounds);
    std::vector<MeanVsIndividualPoint> points = compare_mean_vs_individual(
        arrays, c.offer_grid, c.c_admin, c.n_replicates, c.seed);
    if (points.empty()) throw std::runtime_error("empty sweep");

    std::vector<std::string> labels;
    for (const auto& [name, _] : points.front().grid) labels.push_back(name);
    std::vector<std::string> header = labels;
    header.insert(header.end(), {"ratio_individual", "ratio_individual_stderr",
                                 "ratio_mean_offer"});
    CsvWriter w(header);
    for (const MeanVsIndividualPoint& pt : points) {
        w.begin_row();
        for (const auto& [_, value] : pt.grid) w.add(value);
        w.add(pt.ratio_individual);
        w.add(pt.ratio_individual_stderr);
        w.add(pt.ratio_mean_offer);
        w.end_row();
    }
    return w.str();
}

std::string run_altruism(const ScenarioConfig& c) {
    std::vector<UserProfile> profiles = generate_population(c.population, c.seed);
    BetaResponseCurve curve =
        beta_response_curve(profiles[c.user_index], profiles, c.beta_grid,
                            c.population.bounds);
    CsvWriter w({"beta", "r_beta_min", "slope_sign"});
    for (const BetaResponsePoint& pt : curve.points) {
        w.begin_row();
        w.add(pt.beta);
        w.add(pt.r_beta_min);
        w.add(pt.slope_sign);
        w.end_row();
    }
    return w.str();
}

std::string run_educate(const ScenarioConfig& c) {
    EducationConfig ec;
    ec.population = c.population;
    ec.baseline_r_min = c.baseline_r_min;
    ec.educated_r_min = c.educated_r_min;
    ec.offer_grid = c.offer_values;
    ec.c_admin = c.c_admin;
    std::vector<EducationPoint> points = education_experiment(ec, c.seed);
    CsvWriter w({"offer_value", "ratio_baseline", "ratio_educated"});
    for (const EducationPoint& pt : points) {
        w.begin_row();
        w.add(pt.offer_value);
        w.add(pt.ratio_baseline);
        w.add(pt.ratio_educated);
        w.end_row();
    }
    return w.str();
}

std::string run_learn(const ScenarioConfig& c) {
    std::vector<UserProfile> profiles = generate_population(c.population, c.seed);
    std::vector<LearningErrorPoint> points =
        error_vs_samples(profiles, c.population.bounds, c.offer_law, c.m_grid,
                         c.n_replicates, c.seed, c.ridge);
    CsvWriter w({"m", "mean_abs_err_rmin", "mean_abs_err_delta", "n_excluded"});
    for (const LearningErrorPoint& pt : points) {
        w.begin_row();
        w.add(pt.m);
        w.add(pt.mean_abs_err_r_min);
        w.add(pt.mean_abs_err_delta);
        w.add(pt.n_excluded);
        w.end_row();
    }
    return w.str();
}

} // namespace

ScenarioOutputs run_scenario(const ScenarioConfig& config) {
    if (config.kernel != "auto") {
        kernels::Backend want = kernels::parse_backend(config.kernel);
        if (!kernels::set_backend(want))
            throw std::runtime_error("kernel backend not available here: " +
                                     config.kernel);
    }

    ScenarioOutputs out;
    switch (config.scenario) {
    case Scenario::generate_population: {
        std::vector<UserProfile> profiles =
            generate_population(config.population, config.seed);
        out["population.csv"] =
            population_to_csv(profiles, config.population.bounds);
        break;
    }
    case Scenario::sweep_incentives:
        out["results.csv"] = run_sweep_incentives(config);
        break;
    case Scenario::sweep_users:
        out["results.csv"] = run_sweep_users(config);
        break;
    case Scenario::group_targeting:
        out["results.csv"] = run_group_targeting(config);
        break;
    case Scenario::mean_vs_individual:
        out["results.csv"] = run_mean_vs_individual(config);
        break;
    case Scenario::altruism:
        out["results.csv"] = run_altruism(config);
        break;
    case Scenario::educate:
        out["results.csv"] = run_educate(config);
        break;
    case Scenario::learn:
        out["results.csv"] = run_learn(config);
        break;
    }
    out["manifest.json"] = resolved_json(config).dump(2) + "\n";
    return out;
}

} // namespace greenstream
