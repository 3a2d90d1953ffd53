#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greenstream/distributions.hpp"
#include "greenstream/population.hpp"

namespace greenstream {

// Offer amounts indexed like the population; 0 means no offer.
using OfferAssignment = std::vector<double>;

struct PolicyOutcome {
    double expected_cost = 0.0;        // sum p_i * r_i + c_admin * #{r_i > 0}
    double expected_flexibility = 0.0; // sum p_i * flex_i
    std::optional<double> ratio;       // absent when expected_cost == 0
    std::size_t offer_count = 0;
    double mean_accept_probability = 0.0;
};

// Expected cost/flexibility of one assignment. Users with a zero offer still
// contribute p_i(0) * flex_i to the flexibility sum but no administration
// cost. Throws std::invalid_argument on length mismatch and std::domain_error
// on negative or non-finite offers or c_admin < 0.
PolicyOutcome evaluate_policy(const PopulationArrays& population,
                              std::span<const double> offers, double c_admin);

// Bernoulli realization of the same assignment; the consistency oracle for
// the expected-value path. Admin cost is charged per issued offer either way.
struct RealizedOutcome {
    double cost = 0.0;
    double flexibility = 0.0;
    std::size_t accepted_count = 0;
};
RealizedOutcome realize_policy(const PopulationArrays& population,
                               std::span<const double> offers, double c_admin,
                               std::uint64_t seed, std::uint64_t replicate);

// --- Replicated sweeps -----------------------------------------------------

// One point of a sweep: replicate-averaged statistics of a policy family.
struct SweepPoint {
    std::vector<std::pair<std::string, double>> grid; // labeled grid position
    double expected_cost = 0.0;                       // replicate mean
    double expected_flexibility = 0.0;                // replicate mean
    std::optional<double> ratio;          // mean flexibility / mean cost
    double ratio_stderr = 0.0;            // stderr of per-replicate ratios
    bool is_argmax = false;
};

// Offers drawn i.i.d. per user from each law in the grid; negative draws are
// clamped to 0 (no offer). The ratio at each point is the ratio of
// replicate-mean flexibility to replicate-mean cost; is_argmax marks the
// largest finite ratio, ties resolved toward the earlier grid point.
std::vector<SweepPoint> sweep_distribution(const PopulationArrays& population,
                                           std::span<const DistributionSpec> offer_laws,
                                           double c_admin, std::size_t n_replicates,
                                           std::uint64_t seed);

enum class SelectionRule { random_permutation, ascending_r_min, descending_r_min };

struct SubsetSweepOptions {
    SelectionRule selection = SelectionRule::random_permutation;
    // When false, only the k incentivized users enter the cost/flexibility
    // sums (the rest of the population is outside the program). When true,
    // non-selected users contribute p_i(0) * flex_i as in evaluate_policy.
    bool include_unoffered = true;
};

// Sweeps the number of incentivized users. Offers for the selected subset are
// drawn per (grid point, replicate); selection order is drawn per replicate.
std::vector<SweepPoint> sweep_subset_size(const PopulationArrays& population,
                                          const DistributionSpec& offer_law,
                                          std::span<const std::size_t> k_grid,
                                          double c_admin, std::size_t n_replicates,
                                          std::uint64_t seed,
                                          const SubsetSweepOptions& options = {});

enum class TargetChoice { group_a, group_b, both };

struct TargetingPoint {
    TargetChoice target = TargetChoice::group_a;
    SweepPoint point;
};

// Ratio curves for offering only to group A, only to group B, or to both.
// Only targeted users enter the sums (an untargeted group is outside the
// program); with an empty targeted group the curve is the degenerate
// zero-cost baseline.
std::vector<TargetingPoint> compare_group_targeting(
    const PartitionedPopulation& split, const BitrateBounds& bounds,
    std::span<const DistributionSpec> offer_laws, double c_admin,
    std::size_t n_replicates, std::uint64_t seed);

struct MeanVsIndividualPoint {
    std::vector<std::pair<std::string, double>> grid;
    std::optional<double> ratio_individual;
    double ratio_individual_stderr = 0.0;
    std::optional<double> ratio_mean_offer;
};

// Per-user draws from each law versus the law's mean offered to everyone
// (clamped at 0). The mean-offer curve is deterministic.
std::vector<MeanVsIndividualPoint> compare_mean_vs_individual(
    const PopulationArrays& population, std::span<const DistributionSpec> offer_laws,
    double c_admin, std::size_t n_replicates, std::uint64_t seed);

} // namespace greenstream
