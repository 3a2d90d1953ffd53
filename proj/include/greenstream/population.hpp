#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greenstream/distributions.hpp"
#include "greenstream/qoe.hpp"

namespace greenstream {

// Population sampling laws. When r_min is present the drawn value becomes the
// user's acceptance threshold directly and the saving is back-solved as
// s = delta_utility - r_min (negative s allowed); the savings law is ignored
// in that case.
struct PopulationConfig {
    std::size_t n_users = 1000;
    BitrateBounds bounds{};
    DistributionSpec x_high =
        DistributionSpec::make_discrete({2000, 3000, 4000, 5000});
    DistributionSpec x_low =
        DistributionSpec::make_discrete({300, 600, 1200, 1500});
    DistributionSpec gamma = DistributionSpec::make_constant(1.15);
    DistributionSpec delta = DistributionSpec::make_constant(1.2);
    DistributionSpec beta = DistributionSpec::make_constant(1.0);
    DistributionSpec savings = DistributionSpec::make_constant(0.0);
    std::optional<DistributionSpec> r_min;
};

// Draws each user from an independent sub-stream of (seed, user id).
// Rejection rules: bitrates inside [x_min, x_max] with x_low < x_high,
// gamma in [1, x_max/x_min), delta > 0, beta in [0, 1], savings >= 0,
// r_min target >= 0. Each rule throws after 1000 failed attempts.
std::vector<UserProfile> generate_population(const PopulationConfig& config,
                                             std::uint64_t seed);

// Re-sampled parameter overrides for one group of a split population.
struct GroupOverrides {
    std::optional<DistributionSpec> gamma;
    std::optional<DistributionSpec> delta;
    std::optional<DistributionSpec> beta;
    std::optional<DistributionSpec> savings;
    std::optional<DistributionSpec> r_min;
};

// Users [0, group_a_size) are group A, the rest group B.
struct PartitionedPopulation {
    std::vector<UserProfile> profiles;
    std::size_t group_a_size = 0;

    std::span<const UserProfile> group_a() const {
        return std::span(profiles).subspan(0, group_a_size);
    }
    std::span<const UserProfile> group_b() const {
        return std::span(profiles).subspan(group_a_size);
    }
};

// Assigns the first k users to group A and re-draws any overridden parameters
// from per-user sub-streams of (seed, user id). Throws std::invalid_argument
// when k exceeds the population size.
PartitionedPopulation partition_population(std::span<const UserProfile> base,
                                           std::size_t k,
                                           const GroupOverrides& group_a,
                                           const GroupOverrides& group_b,
                                           const BitrateBounds& bounds,
                                           std::uint64_t seed);

// Column-major views of the per-user quantities the policy kernels consume.
// flex[i] = x_high - x_low; r_min[i] = max(delta_utility - savings, 0).
struct PopulationArrays {
    std::vector<double> r_min;
    std::vector<double> delta;
    std::vector<double> flex;

    std::size_t size() const { return r_min.size(); }

    static PopulationArrays from(std::span<const UserProfile> profiles,
                                 const BitrateBounds& bounds);
};

// CSV round trip. Columns:
// user_id,x_high,x_low,gamma,delta,beta,savings,r_min
// Values are written in shortest round-trip decimal form; r_min is derived on
// export and recomputed on import.
std::string population_to_csv(std::span<const UserProfile> profiles,
                              const BitrateBounds& bounds);
std::vector<UserProfile> population_from_csv(const std::string& text);

} // namespace greenstream
