#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "greenstream/config.hpp"
#include "greenstream/kernels/kernels.hpp"
#include "greenstream/version.hpp"

namespace greenstream {

using nlohmann::json;

const char* scenario_name(Scenario s) {
    switch (s) {
    case Scenario::generate_population: return "generate-population";
    case Scenario::sweep_incentives: return "sweep-incentives";
    case Scenario::sweep_users: return "sweep-users";
    case Scenario::group_targeting: return "group-targeting";
    case Scenario::mean_vs_individual: return "mean-vs-individual";
    case Scenario::altruism: return "altruism";
    case Scenario::educate: return "educate";
    case Scenario::learn: return "learn";
    }
    return "unknown";
}

std::optional<Scenario> scenario_from_name(const std::string& name) {
    static const std::pair<const char*, Scenario> table[] = {
        {"generate-population", Scenario::generate_population},
        {"sweep-incentives", Scenario::sweep_incentives},
        {"sweep-users", Scenario::sweep_users},
        {"group-targeting", Scenario::group_targeting},
        {"mean-vs-individual", Scenario::mean_vs_individual},
        {"altruism", Scenario::altruism},
        {"educate", Scenario::educate},
        {"learn", Scenario::learn},
    };
    for (const auto& [n, s] : table)
        if (name == n) return s;
    return std::nullopt;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json doc = json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded())
        throw ConfigParseError("invalid JSON in config file: " + path);
    return doc;
}

void apply_overrides(json& doc, const std::vector<std::string>& sets) {
    for (const std::string& entry : sets) {
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigParseError("override must look like path=value: " + entry);
        std::string path = entry.substr(0, eq);
        std::string raw = entry.substr(eq + 1);

        json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
        if (value.is_discarded()) value = raw; // plain-string fallback

        json* node = &doc;
        std::size_t pos = 0;
        while (true) {
            std::size_t dot = path.find('.', pos);
            std::string key = path.substr(pos, dot == std::string::npos
                                                   ? std::string::npos
                                                   : dot - pos);
            if (key.empty())
                throw ConfigParseError("override has an empty path segment: " +
                                       entry);
            bool is_index = key.find_first_not_of("0123456789") == std::string::npos;
            if (node->is_array() && is_index) {
                std::size_t idx = std::stoul(key);
                if (idx >= node->size())
                    throw ConfigParseError("override index out of range: " + entry);
                if (dot == std::string::npos) {
                    (*node)[idx] = value;
                    break;
                }
                node = &(*node)[idx];
            } else {
                if (!node->is_object()) {
                    if (!node->is_null())
                        throw ConfigParseError(
                            "override path crosses a non-object value: " + entry);
                    *node = json::object();
                }
                if (dot == std::string::npos) {
                    (*node)[key] = value;
                    break;
                }
                node = &(*node)[key];
            }
            pos = dot + 1;
        }
    }
}

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& want) {
    throw ConfigParseError(path + ": expected " + want);
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) bad_field(path, "a number");
    return j.get<double>();
}

std::uint64_t as_uint(const json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && j.get<std::int64_t>() < 0))
        bad_field(path, "a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) bad_field(path, "a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) bad_field(path, "a boolean");
    return j.get<bool>();
}

DistributionSpec parse_law(const json& j, const std::string& path,
                           std::vector<std::string>& notes) {
    if (j.is_number())
        return DistributionSpec::make_constant(j.get<double>());
    if (!j.is_object()) bad_field(path, "a law object or a number");
    if (!j.contains("dist")) bad_field(path + ".dist", "a law kind");
    std::string kind = as_string(j.at("dist"), path + ".dist");

    if (kind == "uniform") {
        if (!j.contains("a") || !j.contains("b"))
            bad_field(path, "uniform bounds a and b");
        double a = as_double(j.at("a"), path + ".a");
        double b = as_double(j.at("b"), path + ".b");
        if (a > b)
            notes.push_back(path +
                            ": uniform bounds given as (max, min); normalized");
        return DistributionSpec::make_uniform(a, b);
    }
    if (kind == "normal") {
        if (!j.contains("mu")) bad_field(path + ".mu", "a number");
        double mu = as_double(j.at("mu"), path + ".mu");
        bool has_sigma = j.contains("sigma");
        bool has_var = j.contains("sigma_sq");
        if (has_sigma == has_var)
            bad_field(path, "exactly one of sigma or sigma_sq");
        double sigma_sq;
        if (has_sigma) {
            double sigma = as_double(j.at("sigma"), path + ".sigma");
            sigma_sq = sigma * sigma;
        } else {
            sigma_sq = as_double(j.at("sigma_sq"), path + ".sigma_sq");
        }
        return DistributionSpec::make_normal(mu, sigma_sq);
    }
    if (kind == "discrete") {
        if (!j.contains("values") || !j.at("values").is_array())
            bad_field(path + ".values", "an array of numbers");
        std::vector<double> values, weights;
        for (std::size_t i = 0; i < j.at("values").size(); ++i)
            values.push_back(as_double(j.at("values")[i],
                                       path + ".values[" + std::to_string(i) + "]"));
        if (j.contains("weights")) {
            if (!j.at("weights").is_array())
                bad_field(path + ".weights", "an array of numbers");
            for (std::size_t i = 0; i < j.at("weights").size(); ++i)
                weights.push_back(as_double(
                    j.at("weights")[i], path + ".weights[" + std::to_string(i) + "]"));
        }
        return DistributionSpec::make_discrete(std::move(values),
                                               std::move(weights));
    }
    if (kind == "constant") {
        if (!j.contains("value")) bad_field(path + ".value", "a number");
        return DistributionSpec::make_constant(
            as_double(j.at("value"), path + ".value"));
    }
    bad_field(path + ".dist", "one of uniform, normal, discrete, constant");
}

json law_to_json(const DistributionSpec& s) {
    json j = json::object();
    switch (s.kind) {
    case DistKind::uniform:
        j["dist"] = "uniform";
        j["a"] = s.a;
        j["b"] = s.b;
        break;
    case DistKind::normal:
        // sigma_sq, not sigma: sqrt-then-square does not round-trip in
        // doubles and the manifest must reload bit-identically.
        j["dist"] = "normal";
        j["mu"] = s.mu;
        j["sigma_sq"] = s.sigma_sq;
        break;
    case DistKind::discrete:
        j["dist"] = "discrete";
        j["values"] = s.values;
        if (!s.weights.empty()) j["weights"] = s.weights;
        break;
    case DistKind::constant:
        j["dist"] = "constant";
        j["value"] = s.value;
        break;
    }
    return j;
}

PopulationConfig parse_population(const json& j, const std::string& path,
                                  std::vector<std::string>& notes) {
    PopulationConfig p;
    if (j.is_null()) return p;
    if (!j.is_object()) bad_field(path, "an object");
    if (j.contains("n_users"))
        p.n_users = as_uint(j.at("n_users"), path + ".n_users");
    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        if (!b.is_object()) bad_field(path + ".bounds", "an object");
        if (b.contains("x_min"))
            p.bounds.x_min = as_double(b.at("x_min"), path + ".bounds.x_min");
        if (b.contains("x_max"))
            p.bounds.x_max = as_double(b.at("x_max"), path + ".bounds.x_max");
    }
    if (j.contains("x_high")) p.x_high = parse_law(j.at("x_high"), path + ".x_high", notes);
    if (j.contains("x_low")) p.x_low = parse_law(j.at("x_low"), path + ".x_low", notes);
    if (j.contains("gamma")) p.gamma = parse_law(j.at("gamma"), path + ".gamma", notes);
    if (j.contains("delta")) p.delta = parse_law(j.at("delta"), path + ".delta", notes);
    if (j.contains("beta")) p.beta = parse_law(j.at("beta"), path + ".beta", notes);
    if (j.contains("savings"))
        p.savings = parse_law(j.at("savings"), path + ".savings", notes);
    if (j.contains("r_min") && !j.at("r_min").is_null())
        p.r_min = parse_law(j.at("r_min"), path + ".r_min", notes);
    return p;
}

GroupOverrides parse_overrides(const json& j, const std::string& path,
                               std::vector<std::string>& notes) {
    GroupOverrides g;
    if (j.is_null()) return g;
    if (!j.is_object()) bad_field(path, "an object");
    if (j.contains("gamma")) g.gamma = parse_law(j.at("gamma"), path + ".gamma", notes);
    if (j.contains("delta")) g.delta = parse_law(j.at("delta"), path + ".delta", notes);
    if (j.contains("beta")) g.beta = parse_law(j.at("beta"), path + ".beta", notes);
    if (j.contains("savings"))
        g.savings = parse_law(j.at("savings"), path + ".savings", notes);
    if (j.contains("r_min")) g.r_min = parse_law(j.at("r_min"), path + ".r_min", notes);
    return g;
}

json overrides_to_json(const GroupOverrides& g) {
    json j = json::object();
    if (g.gamma) j["gamma"] = law_to_json(*g.gamma);
    if (g.delta) j["delta"] = law_to_json(*g.delta);
    if (g.beta) j["beta"] = law_to_json(*g.beta);
    if (g.savings) j["savings"] = law_to_json(*g.savings);
    if (g.r_min) j["r_min"] = law_to_json(*g.r_min);
    return j;
}

std::vector<DistributionSpec> parse_law_array(const json& j,
                                              const std::string& path,
                                              std::vector<std::string>& notes) {
    if (!j.is_array()) bad_field(path, "an array of laws");
    std::vector<DistributionSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_law(j[i], path + "[" + std::to_string(i) + "]", notes));
    return out;
}

} // namespace

ScenarioConfig resolve_config(const json& doc,
                              std::optional<Scenario> expected_scenario) {
    if (!doc.is_object())
        throw ConfigParseError("config root must be a JSON object");

    ScenarioConfig c;
    if (doc.contains("scenario")) {
        std::string name = as_string(doc.at("scenario"), "scenario");
        std::optional<Scenario> s = scenario_from_name(name);
        if (!s) throw ConfigParseError("unknown scenario: " + name);
        if (expected_scenario && *expected_scenario != *s)
            throw ConfigParseError("config is for scenario '" + name +
                                   "' but '" +
                                   scenario_name(*expected_scenario) +
                                   "' was requested");
        c.scenario = *s;
    } else if (expected_scenario) {
        c.scenario = *expected_scenario;
    } else {
        throw ConfigParseError("scenario missing from config");
    }

    if (doc.contains("seed")) c.seed = as_uint(doc.at("seed"), "seed");
    if (doc.contains("out_dir")) c.out_dir = as_string(doc.at("out_dir"), "out_dir");
    if (doc.contains("n_replicates"))
        c.n_replicates = as_uint(doc.at("n_replicates"), "n_replicates");
    if (doc.contains("c_admin")) c.c_admin = as_double(doc.at("c_admin"), "c_admin");
    if (doc.contains("kernel")) c.kernel = as_string(doc.at("kernel"), "kernel");
    if (doc.contains("population"))
        c.population = parse_population(doc.at("population"), "population", c.resolve_notes);

    if (doc.contains("offer_grid"))
        c.offer_grid = parse_law_array(doc.at("offer_grid"), "offer_grid", c.resolve_notes);
    if (doc.contains("offer_law"))
        c.offer_law = parse_law(doc.at("offer_law"), "offer_law", c.resolve_notes);
    if (doc.contains("k_grid")) {
        if (!doc.at("k_grid").is_array()) bad_field("k_grid", "an array");
        for (std::size_t i = 0; i < doc.at("k_grid").size(); ++i)
            c.k_grid.push_back(as_uint(doc.at("k_grid")[i],
                                       "k_grid[" + std::to_string(i) + "]"));
    }
    if (doc.contains("selection")) {
        std::string sel = as_string(doc.at("selection"), "selection");
        if (sel == "random_permutation")
            c.selection = SelectionRule::random_permutation;
        else if (sel == "ascending_r_min")
            c.selection = SelectionRule::ascending_r_min;
        else if (sel == "descending_r_min")
            c.selection = SelectionRule::descending_r_min;
        else
            bad_field("selection",
                      "one of random_permutation, ascending_r_min, descending_r_min");
    }
    if (doc.contains("include_unoffered"))
        c.include_unoffered =
            as_bool(doc.at("include_unoffered"), "include_unoffered");

    if (doc.contains("group_a_count"))
        c.group_a_count = as_uint(doc.at("group_a_count"), "group_a_count");
    if (doc.contains("group_a"))
        c.group_a = parse_overrides(doc.at("group_a"), "group_a", c.resolve_notes);
    if (doc.contains("group_b"))
        c.group_b = parse_overrides(doc.at("group_b"), "group_b", c.resolve_notes);

    if (doc.contains("beta_grid")) {
        if (!doc.at("beta_grid").is_array()) bad_field("beta_grid", "an array");
        for (std::size_t i = 0; i < doc.at("beta_grid").size(); ++i)
            c.beta_grid.push_back(as_double(
                doc.at("beta_grid")[i], "beta_grid[" + std::to_string(i) + "]"));
    }
    if (doc.contains("user_index"))
        c.user_index = as_uint(doc.at("user_index"), "user_index");

    if (doc.contains("baseline_r_min"))
        c.baseline_r_min = parse_law(doc.at("baseline_r_min"), "baseline_r_min", c.resolve_notes);
    if (doc.contains("educated_r_min"))
        c.educated_r_min = parse_law(doc.at("educated_r_min"), "educated_r_min", c.resolve_notes);
    if (doc.contains("offer_values")) {
        if (!doc.at("offer_values").is_array())
            bad_field("offer_values", "an array");
        for (std::size_t i = 0; i < doc.at("offer_values").size(); ++i)
            c.offer_values.push_back(
                as_double(doc.at("offer_values")[i],
                          "offer_values[" + std::to_string(i) + "]"));
    }

    if (doc.contains("m_grid")) {
        if (!doc.at("m_grid").is_array()) bad_field("m_grid", "an array");
        for (std::size_t i = 0; i < doc.at("m_grid").size(); ++i)
            c.m_grid.push_back(as_uint(doc.at("m_grid")[i],
                                       "m_grid[" + std::to_string(i) + "]"));
    }
    if (doc.contains("ridge")) c.ridge = as_double(doc.at("ridge"), "ridge");

    return c;
}

namespace {

struct Checker {
    ValidationReport& report;

    void error(const std::string& path, const std::string& msg) {
        report.errors.push_back(path + ": " + msg);
    }
    void warn(const std::string& path, const std::string& msg) {
        report.warnings.push_back(path + ": " + msg);
    }

    void law(const DistributionSpec& s, const std::string& path) {
        try {
            validate_spec(s);
        } catch (const std::invalid_argument& e) {
            error(path, e.what());
        }
    }

    // Offer draws below zero are clamped to "no offer"; flag laws where that
    // clamp will bite.
    void offer_law(const DistributionSpec& s, const std::string& path) {
        law(s, path);
        bool negative_mass = false;
        switch (s.kind) {
        case DistKind::uniform: negative_mass = s.a < 0.0; break;
        case DistKind::normal:
            negative_mass = s.mu - 3.0 * std::sqrt(s.sigma_sq) < 0.0;
            break;
        case DistKind::constant: negative_mass = s.value < 0.0; break;
        case DistKind::discrete:
            for (std::size_t i = 0; i < s.values.size(); ++i)
                if (s.values[i] < 0.0 &&
                    (s.weights.empty() || s.weights[i] > 0.0))
                    negative_mass = true;
            break;
        }
        if (negative_mass)
            warn(path, "law has mass below 0; negative draws become no-offer");
    }

    // Rejects laws whose entire mass lies outside [lo, hi]; rejection
    // sampling would then exhaust at runtime.
    void reach(const DistributionSpec& s, double lo, double hi, bool hi_open,
               const std::string& path) {
        auto inside = [&](double v) {
            return v >= lo && (hi_open ? v < hi : v <= hi);
        };
        switch (s.kind) {
        case DistKind::constant:
            if (!inside(s.value))
                error(path, "constant value " + format_message(s.value, lo, hi));
            break;
        case DistKind::uniform: {
            double a = std::min(s.a, s.b), b = std::max(s.a, s.b);
            if (b < lo || a > hi || (hi_open && a >= hi))
                error(path, "uniform support " + format_message(a, lo, hi));
            break;
        }
        case DistKind::discrete: {
            bool any = false;
            for (std::size_t i = 0; i < s.values.size(); ++i) {
                double w = s.weights.empty() ? 1.0 : s.weights[i];
                if (w > 0.0 && inside(s.values[i])) any = true;
            }
            if (!any)
                error(path, "no discrete value lies inside the valid range");
            break;
        }
        case DistKind::normal:
            break; // unbounded support always reaches the range
        }
    }

    static std::string format_message(double v, double lo, double hi) {
        std::ostringstream os;
        os << v << " outside valid range [" << lo << ", " << hi << ")";
        return os.str();
    }

    void population(const PopulationConfig& p, const std::string& path) {
        if (p.n_users == 0) error(path + ".n_users", "must be at least 1");
        const BitrateBounds& b = p.bounds;
        bool bounds_ok = std::isfinite(b.x_min) && std::isfinite(b.x_max) &&
                         b.x_min > 0.0 && b.x_min < b.x_max;
        if (!bounds_ok) {
            error(path + ".bounds", "needs 0 < x_min < x_max, both finite");
            return;
        }
        law(p.x_high, path + ".x_high");
        law(p.x_low, path + ".x_low");
        law(p.gamma, path + ".gamma");
        law(p.delta, path + ".delta");
        law(p.beta, path + ".beta");
        law(p.savings, path + ".savings");
        if (p.r_min) law(*p.r_min, path + ".r_min");

        double inf = std::numeric_limits<double>::infinity();
        reach(p.x_high, std::nextafter(b.x_min, inf), b.x_max, false,
              path + ".x_high");
        reach(p.x_low, b.x_min, b.x_max, true, path + ".x_low");
        reach(p.gamma, 1.0, b.x_max / b.x_min, true, path + ".gamma");
        reach(p.delta, std::nextafter(0.0, inf), inf, true, path + ".delta");
        reach(p.beta, 0.0, 1.0, false, path + ".beta");
        if (p.r_min)
            reach(*p.r_min, 0.0, inf, true, path + ".r_min");
        else
            reach(p.savings, 0.0, inf, true, path + ".savings");
    }

    void overrides(const GroupOverrides& g, const BitrateBounds& b,
                   const std::string& path) {
        if (g.gamma) {
            law(*g.gamma, path + ".gamma");
            reach(*g.gamma, 1.0, b.x_max / b.x_min, true, path + ".gamma");
        }
        if (g.delta) {
            law(*g.delta, path + ".delta");
            reach(*g.delta, std::nextafter(0.0, 1.0),
                  std::numeric_limits<double>::infinity(), true, path + ".delta");
        }
        if (g.beta) {
            law(*g.beta, path + ".beta");
            reach(*g.beta, 0.0, 1.0, false, path + ".beta");
        }
        if (g.savings) {
            law(*g.savings, path + ".savings");
            reach(*g.savings, 0.0, std::numeric_limits<double>::infinity(), true,
                  path + ".savings");
        }
        if (g.r_min) {
            law(*g.r_min, path + ".r_min");
            reach(*g.r_min, 0.0, std::numeric_limits<double>::infinity(), true,
                  path + ".r_min");
        }
    }
};

} // namespace

ValidationReport validate_config(const ScenarioConfig& config) {
    ValidationReport report;
    report.warnings = config.resolve_notes;
    Checker check{report};

    if (!std::isfinite(config.c_admin) || config.c_admin < 0.0)
        check.error("c_admin", "must be finite and >= 0");
    if (config.kernel != "auto") {
        try {
            kernels::parse_backend(config.kernel);
        } catch (const std::invalid_argument&) {
            check.error("kernel", "must be one of auto, scalar, avx2");
        }
    }
    if (config.out_dir.empty()) check.error("out_dir", "must be non-empty");

    check.population(config.population, "population");

    bool replicated = config.scenario == Scenario::sweep_incentives ||
                      config.scenario == Scenario::sweep_users ||
                      config.scenario == Scenario::group_targeting ||
                      config.scenario == Scenario::mean_vs_individual ||
                      config.scenario == Scenario::learn;
    if (replicated && config.n_replicates == 0)
        check.error("n_replicates", "must be at least 1");

    switch (config.scenario) {
    case Scenario::generate_population:
        break;
    case Scenario::sweep_incentives:
    case Scenario::mean_vs_individual:
        if (config.offer_grid.empty())
            check.error("offer_grid", "must contain at least one law");
        for (std::size_t i = 0; i < config.offer_grid.size(); ++i)
            check.offer_law(config.offer_grid[i],
                            "offer_grid[" + std::to_string(i) + "]");
        break;
    case Scenario::sweep_users:
        if (config.k_grid.empty())
            check.error("k_grid", "must contain at least one size");
        for (std::size_t i = 0; i < config.k_grid.size(); ++i)
            if (config.k_grid[i] > config.population.n_users)
                check.error("k_grid[" + std::to_string(i) + "]",
                            "exceeds population.n_users");
        check.offer_law(config.offer_law, "offer_law");
        break;
    case Scenario::group_targeting:
        if (config.group_a_count > config.population.n_users)
            check.error("group_a_count", "exceeds population.n_users");
        if (config.offer_grid.empty())
            check.error("offer_grid", "must contain at least one law");
        for (std::size_t i = 0; i < config.offer_grid.size(); ++i)
            check.offer_law(config.offer_grid[i],
                            "offer_grid[" + std::to_string(i) + "]");
        check.overrides(config.group_a, config.population.bounds, "group_a");
        check.overrides(config.group_b, config.population.bounds, "group_b");
        break;
    case Scenario::altruism:
        if (config.beta_grid.empty())
            check.error("beta_grid", "must contain at least one value");
        for (std::size_t i = 0; i < config.beta_grid.size(); ++i)
            if (!(config.beta_grid[i] >= 0.0 && config.beta_grid[i] <= 1.0))
                check.error("beta_grid[" + std::to_string(i) + "]",
                            "must lie in [0, 1]");
        if (config.user_index >= config.population.n_users)
            check.error("user_index", "exceeds population.n_users");
        break;
    case Scenario::educate:
        if (config.offer_values.empty())
            check.error("offer_values", "must contain at least one offer");
        for (std::size_t i = 0; i < config.offer_values.size(); ++i)
            if (!std::isfinite(config.offer_values[i]) ||
                config.offer_values[i] < 0.0)
                check.error("offer_values[" + std::to_string(i) + "]",
                            "must be finite and >= 0");
        check.law(config.baseline_r_min, "baseline_r_min");
        check.reach(config.baseline_r_min, 0.0,
                    std::numeric_limits<double>::infinity(), true,
                    "baseline_r_min");
        check.law(config.educated_r_min, "educated_r_min");
        check.reach(config.educated_r_min, 0.0,
                    std::numeric_limits<double>::infinity(), true,
                    "educated_r_min");
        break;
    case Scenario::learn:
        if (config.m_grid.empty())
            check.error("m_grid", "must contain at least one sample count");
        for (std::size_t i = 0; i < config.m_grid.size(); ++i)
            if (config.m_grid[i] == 0)
                check.error("m_grid[" + std::to_string(i) + "]",
                            "must be at least 1");
        check.law(config.offer_law, "offer_law");
        if (!(config.ridge >= 0.0) || !std::isfinite(config.ridge))
            check.error("ridge", "must be finite and >= 0");
        break;
    }
    return report;
}

json resolved_json(const ScenarioConfig& c) {
    json j = json::object();
    j["scenario"] = scenario_name(c.scenario);
    j["version"] = kVersion;
    j["backend"] = kernels::backend_name(kernels::active_backend());
    j["seed"] = c.seed;
    j["out_dir"] = c.out_dir;
    j["c_admin"] = c.c_admin;
    j["kernel"] = c.kernel;

    json pop = json::object();
    pop["n_users"] = c.population.n_users;
    pop["bounds"] = {{"x_min", c.population.bounds.x_min},
                     {"x_max", c.population.bounds.x_max}};
    pop["x_high"] = law_to_json(c.population.x_high);
    pop["x_low"] = law_to_json(c.population.x_low);
    pop["gamma"] = law_to_json(c.population.gamma);
    pop["delta"] = law_to_json(c.population.delta);
    pop["beta"] = law_to_json(c.population.beta);
    pop["savings"] = law_to_json(c.population.savings);
    if (c.population.r_min) pop["r_min"] = law_to_json(*c.population.r_min);
    j["population"] = pop;

    auto grid_json = [&](const std::vector<DistributionSpec>& laws) {
        json arr = json::array();
        for (const DistributionSpec& s : laws) arr.push_back(law_to_json(s));
        return arr;
    };

    switch (c.scenario) {
    case Scenario::generate_population:
        break;
    case Scenario::sweep_incentives:
    case Scenario::mean_vs_individual:
        j["n_replicates"] = c.n_replicates;
        j["offer_grid"] = grid_json(c.offer_grid);
        break;
    case Scenario::sweep_users: {
        j["n_replicates"] = c.n_replicates;
        j["offer_law"] = law_to_json(c.offer_law);
        j["k_grid"] = c.k_grid;
        const char* sel = c.selection == SelectionRule::random_permutation
                              ? "random_permutation"
                              : c.selection == SelectionRule::ascending_r_min
                                    ? "ascending_r_min"
                                    : "descending_r_min";
        j["selection"] = sel;
        j["include_unoffered"] = c.include_unoffered;
        break;
    }
    case Scenario::group_targeting:
        j["n_replicates"] = c.n_replicates;
        j["offer_grid"] = grid_json(c.offer_grid);
        j["group_a_count"] = c.group_a_count;
        j["group_a"] = overrides_to_json(c.group_a);
        j["group_b"] = overrides_to_json(c.group_b);
        break;
    case Scenario::altruism:
        j["beta_grid"] = c.beta_grid;
        j["user_index"] = c.user_index;
        break;
    case Scenario::educate:
        j["baseline_r_min"] = law_to_json(c.baseline_r_min);
        j["educated_r_min"] = law_to_json(c.educated_r_min);
        j["offer_values"] = c.offer_values;
        break;
    case Scenario::learn:
        j["n_replicates"] = c.n_replicates;
        j["offer_law"] = law_to_json(c.offer_law);
        j["m_grid"] = c.m_grid;
        j["ridge"] = c.ridge;
        break;
    }
    return j;
}

} // namespace greenstream
