#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "greenstream/csv.hpp"
#include "greenstream/population.hpp"
#include "greenstream/rng.hpp"

namespace greenstream {

namespace {

UserProfile draw_profile(std::int64_t id, const PopulationConfig& cfg,
                         RngStream& rng) {
    const BitrateBounds& b = cfg.bounds;
    UserProfile u;
    u.id = id;

    u.x_high = sample_where(cfg.x_high, rng, [&](double v) {
        return v > b.x_min && v <= b.x_max;
    });
    u.x_low = sample_where(cfg.x_low, rng, [&](double v) {
        return v >= b.x_min && v < u.x_high;
    });
    double gamma_cap = b.x_max / b.x_min;
    u.gamma = sample_where(cfg.gamma, rng, [&](double v) {
        return v >= 1.0 && v < gamma_cap;
    });
    u.delta = sample_where(cfg.delta, rng, [](double v) { return v > 0.0; });
    u.beta = sample_where(cfg.beta, rng, [](double v) {
        return v >= 0.0 && v <= 1.0;
    });

    if (cfg.r_min) {
        double target = sample_where(*cfg.r_min, rng,
                                     [](double v) { return v >= 0.0; });
        u.savings = delta_utility(u, b) - target;
    } else {
        u.savings = sample_where(cfg.savings, rng,
                                 [](double v) { return v >= 0.0; });
    }
    validate_profile(u, b, /*allow_negative_savings=*/cfg.r_min.has_value());
    return u;
}

} // namespace

std::vector<UserProfile> generate_population(const PopulationConfig& config,
                                             std::uint64_t seed) {
    validate_bounds(config.bounds);
    std::vector<UserProfile> out;
    out.reserve(config.n_users);
    for (std::size_t i = 0; i < config.n_users; ++i) {
        RngStream rng = make_stream(seed, StreamKind::population,
                                    static_cast<std::uint64_t>(i));
        out.push_back(draw_profile(static_cast<std::int64_t>(i), config, rng));
    }
    return out;
}

namespace {

void apply_overrides(UserProfile& u, const GroupOverrides& ov,
                     const BitrateBounds& b, RngStream& rng) {
    double gamma_cap = b.x_max / b.x_min;
    if (ov.gamma)
        u.gamma = sample_where(*ov.gamma, rng, [&](double v) {
            return v >= 1.0 && v < gamma_cap;
        });
    if (ov.delta)
        u.delta = sample_where(*ov.delta, rng, [](double v) { return v > 0.0; });
    if (ov.beta)
        u.beta = sample_where(*ov.beta, rng, [](double v) {
            return v >= 0.0 && v <= 1.0;
        });
    if (ov.savings)
        u.savings = sample_where(*ov.savings, rng,
                                 [](double v) { return v >= 0.0; });
    if (ov.r_min) {
        double target = sample_where(*ov.r_min, rng,
                                     [](double v) { return v >= 0.0; });
        u.savings = delta_utility(u, b) - target;
    }
    validate_profile(u, b, /*allow_negative_savings=*/ov.r_min.has_value());
}

} // namespace

PartitionedPopulation partition_population(std::span<const UserProfile> base,
                                           std::size_t k,
                                           const GroupOverrides& group_a,
                                           const GroupOverrides& group_b,
                                           const BitrateBounds& bounds,
                                           std::uint64_t seed) {
    if (k > base.size())
        throw std::invalid_argument(
            "group size exceeds population: " + std::to_string(k) + " > " +
            std::to_string(base.size()));
    PartitionedPopulation out;
    out.profiles.assign(base.begin(), base.end());
    out.group_a_size = k;
    for (std::size_t i = 0; i < out.profiles.size(); ++i) {
        RngStream rng = make_stream(seed, StreamKind::partition,
                                    static_cast<std::uint64_t>(i));
        apply_overrides(out.profiles[i], i < k ? group_a : group_b, bounds, rng);
    }
    return out;
}

PopulationArrays PopulationArrays::from(std::span<const UserProfile> profiles,
                                        const BitrateBounds& bounds) {
    PopulationArrays a;
    a.r_min.reserve(profiles.size());
    a.delta.reserve(profiles.size());
    a.flex.reserve(profiles.size());
    for (const UserProfile& u : profiles) {
        a.r_min.push_back(min_incentive(u, bounds));
        a.delta.push_back(u.delta);
        a.flex.push_back(u.x_high - u.x_low);
    }
    return a;
}

std::string population_to_csv(std::span<const UserProfile> profiles,
                              const BitrateBounds& bounds) {
    CsvWriter w({"user_id", "x_high", "x_low", "gamma", "delta", "beta",
                 "savings", "r_min"});
    for (const UserProfile& u : profiles) {
        w.begin_row();
        w.add(u.id);
        w.add(u.x_high);
        w.add(u.x_low);
        w.add(u.gamma);
        w.add(u.delta);
        w.add(u.beta);
        w.add(u.savings);
        w.add(min_incentive(u, bounds));
        w.end_row();
    }
    return w.str();
}

std::vector<UserProfile> population_from_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows = parse_csv(text);
    if (rows.empty())
        throw std::invalid_argument("population csv: missing header");
    const std::vector<std::string> expected{"user_id", "x_high", "x_low",
                                            "gamma", "delta", "beta",
                                            "savings", "r_min"};
    if (rows.front() != expected)
        throw std::invalid_argument("population csv: unexpected header");
    std::vector<UserProfile> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != expected.size())
            throw std::invalid_argument("population csv: row " +
                                        std::to_string(r) + " has " +
                                        std::to_string(row.size()) + " fields");
        UserProfile u;
        u.id = std::stoll(row[0]);
        u.x_high = std::stod(row[1]);
        u.x_low = std::stod(row[2]);
        u.gamma = std::stod(row[3]);
        u.delta = std::stod(row[4]);
        u.beta = std::stod(row[5]);
        u.savings = std::stod(row[6]);
        out.push_back(u);
    }
    return out;
}

} // namespace greenstream
