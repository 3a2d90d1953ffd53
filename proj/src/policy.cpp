#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "greenstream/kernels/kernels.hpp"
#include "greenstream/policy.hpp"
#include "greenstream/rng.hpp"

namespace greenstream {

namespace {

void check_inputs(const PopulationArrays& population,
                  std::span<const double> offers, double c_admin) {
    if (offers.size() != population.size())
        throw std::invalid_argument("offer count " + std::to_string(offers.size()) +
                                    " does not match population size " +
                                    std::to_string(population.size()));
    if (!std::isfinite(c_admin) || c_admin < 0.0)
        throw std::domain_error("administration cost must be finite and >= 0");
    for (double r : offers)
        if (!std::isfinite(r) || r < 0.0)
            throw std::domain_error("offers must be finite and >= 0");
}

std::vector<double> accept_probs(const PopulationArrays& population,
                                 std::span<const double> offers) {
    std::vector<double> p(population.size());
    kernels::active_ops().accept_probabilities(offers.data(),
                                               population.r_min.data(),
                                               population.delta.data(), p.data(),
                                               population.size());
    return p;
}

std::size_t count_offers(std::span<const double> offers) {
    return static_cast<std::size_t>(
        std::count_if(offers.begin(), offers.end(), [](double r) { return r > 0.0; }));
}

// Grid label of one offer law, used as sweep CSV columns.
std::vector<std::pair<std::string, double>> law_label(const DistributionSpec& law) {
    switch (law.kind) {
    case DistKind::uniform:
        return {{"a", law.a}, {"b", law.b}};
    case DistKind::normal:
        return {{"mu", law.mu}, {"sigma", std::sqrt(law.sigma_sq)}};
    case DistKind::constant:
        return {{"value", law.value}};
    case DistKind::discrete:
        return {{"mean", law.mean()}};
    }
    return {};
}

void mark_argmax(std::span<SweepPoint> points) {
    std::size_t best = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].ratio) continue;
        if (best == points.size() || *points[i].ratio > *points[best].ratio)
            best = i;
    }
    if (best < points.size()) points[best].is_argmax = true;
}

double stderr_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
                  static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double var = ss / static_cast<double>(xs.size() - 1);
    return std::sqrt(var / static_cast<double>(xs.size()));
}

// Replicate loop shared by the distribution sweeps. `stream_a` keys the offer
// stream so distinct arms of one experiment never share draws.
SweepPoint replicated_point(const PopulationArrays& population,
                            const DistributionSpec& law, double c_admin,
                            std::size_t n_replicates, std::uint64_t seed,
                            std::uint64_t stream_a) {
    SweepPoint pt;
    pt.grid = law_label(law);
    double cost_sum = 0.0, flex_sum = 0.0;
    std::vector<double> ratios;
    ratios.reserve(n_replicates);
    std::vector<double> offers(population.size());
    for (std::size_t rep = 0; rep < n_replicates; ++rep) {
        RngStream rng = make_stream(seed, StreamKind::offers, stream_a, rep);
        for (double& r : offers) r = std::max(sample(law, rng), 0.0);
        PolicyOutcome out = evaluate_policy(population, offers, c_admin);
        cost_sum += out.expected_cost;
        flex_sum += out.expected_flexibility;
        if (out.ratio) ratios.push_back(*out.ratio);
    }
    double n = static_cast<double>(n_replicates);
    pt.expected_cost = cost_sum / n;
    pt.expected_flexibility = flex_sum / n;
    if (cost_sum > 0.0) pt.ratio = flex_sum / cost_sum;
    pt.ratio_stderr = stderr_of(ratios);
    return pt;
}

PopulationArrays gather(const PopulationArrays& population,
                        std::span<const std::size_t> idx) {
    PopulationArrays out;
    out.r_min.reserve(idx.size());
    out.delta.reserve(idx.size());
    out.flex.reserve(idx.size());
    for (std::size_t i : idx) {
        out.r_min.push_back(population.r_min[i]);
        out.delta.push_back(population.delta[i]);
        out.flex.push_back(population.flex[i]);
    }
    return out;
}

} // namespace

PolicyOutcome evaluate_policy(const PopulationArrays& population,
                              std::span<const double> offers, double c_admin) {
    check_inputs(population, offers, c_admin);
    std::vector<double> p = accept_probs(population, offers);
    kernels::PolicyTerms terms = kernels::active_ops().policy_terms(
        p.data(), offers.data(), population.flex.data(), population.size());
    PolicyOutcome out;
    out.offer_count = count_offers(offers);
    out.expected_cost =
        terms.sum_p_r + c_admin * static_cast<double>(out.offer_count);
    out.expected_flexibility = terms.sum_p_x;
    if (out.expected_cost != 0.0)
        out.ratio = out.expected_flexibility / out.expected_cost;
    out.mean_accept_probability =
        population.size() ? terms.sum_p / static_cast<double>(population.size())
                          : 0.0;
    return out;
}

RealizedOutcome realize_policy(const PopulationArrays& population,
                               std::span<const double> offers, double c_admin,
                               std::uint64_t seed, std::uint64_t replicate) {
    check_inputs(population, offers, c_admin);
    std::vector<double> p = accept_probs(population, offers);
    // One stream per replicate, users drawn in index order; replicates stay
    // independent without paying a generator setup per user.
    RngStream rng = make_stream(seed, StreamKind::decisions, replicate);
    RealizedOutcome out;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (offers[i] > 0.0) out.cost += c_admin;
        if (rng.bernoulli(p[i])) {
            out.cost += offers[i];
            out.flexibility += population.flex[i];
            ++out.accepted_count;
        }
    }
    return out;
}

std::vector<SweepPoint> sweep_distribution(const PopulationArrays& population,
                                           std::span<const DistributionSpec> offer_laws,
                                           double c_admin, std::size_t n_replicates,
                                           std::uint64_t seed) {
    std::vector<SweepPoint> points;
    points.reserve(offer_laws.size());
    for (std::size_t g = 0; g < offer_laws.size(); ++g)
        points.push_back(replicated_point(population, offer_laws[g], c_admin,
                                          n_replicates, seed, g));
    mark_argmax(points);
    return points;
}

std::vector<SweepPoint> sweep_subset_size(const PopulationArrays& population,
                                          const DistributionSpec& offer_law,
                                          std::span<const std::size_t> k_grid,
                                          double c_admin, std::size_t n_replicates,
                                          std::uint64_t seed,
                                          const SubsetSweepOptions& options) {
    const std::size_t n = population.size();
    for (std::size_t k : k_grid)
        if (k > n)
            throw std::invalid_argument("subset size " + std::to_string(k) +
                                        " exceeds population size " +
                                        std::to_string(n));

    // Selection order per replicate, shared across the k grid so the subsets
    // are nested.
    std::vector<std::vector<std::size_t>> orders(n_replicates);
    for (std::size_t rep = 0; rep < n_replicates; ++rep) {
        std::vector<std::size_t>& order = orders[rep];
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        switch (options.selection) {
        case SelectionRule::random_permutation: {
            RngStream rng = make_stream(seed, StreamKind::replicates, rep);
            for (std::size_t i = n; i > 1; --i)
                std::swap(order[i - 1], order[rng.next_u64() % i]);
            break;
        }
        case SelectionRule::ascending_r_min:
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return population.r_min[a] < population.r_min[b];
                             });
            break;
        case SelectionRule::descending_r_min:
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return population.r_min[a] > population.r_min[b];
                             });
            break;
        }
    }

    std::vector<SweepPoint> points;
    points.reserve(k_grid.size());
    for (std::size_t gi = 0; gi < k_grid.size(); ++gi) {
        std::size_t k = k_grid[gi];
        SweepPoint pt;
        pt.grid = {{"k", static_cast<double>(k)}};
        double cost_sum = 0.0, flex_sum = 0.0;
        std::vector<double> ratios;
        for (std::size_t rep = 0; rep < n_replicates; ++rep) {
            RngStream rng = make_stream(seed, StreamKind::offers, gi, rep);
            std::span<const std::size_t> chosen(orders[rep].data(), k);
            PolicyOutcome out;
            if (options.include_unoffered) {
                std::vector<double> offers(n, 0.0);
                for (std::size_t i : chosen)
                    offers[i] = std::max(sample(offer_law, rng), 0.0);
                out = evaluate_policy(population, offers, c_admin);
            } else {
                PopulationArrays sub = gather(population, chosen);
                std::vector<double> offers(k);
                for (double& r : offers) r = std::max(sample(offer_law, rng), 0.0);
                out = evaluate_policy(sub, offers, c_admin);
            }
            cost_sum += out.expected_cost;
            flex_sum += out.expected_flexibility;
            if (out.ratio) ratios.push_back(*out.ratio);
        }
        double nr = static_cast<double>(n_replicates);
        pt.expected_cost = cost_sum / nr;
        pt.expected_flexibility = flex_sum / nr;
        if (cost_sum > 0.0) pt.ratio = flex_sum / cost_sum;
        pt.ratio_stderr = stderr_of(ratios);
        points.push_back(std::move(pt));
    }
    mark_argmax(points);
    return points;
}

std::vector<TargetingPoint> compare_group_targeting(
    const PartitionedPopulation& split, const BitrateBounds& bounds,
    std::span<const DistributionSpec> offer_laws, double c_admin,
    std::size_t n_replicates, std::uint64_t seed) {
    const PopulationArrays arrays_a = PopulationArrays::from(split.group_a(), bounds);
    const PopulationArrays arrays_b = PopulationArrays::from(split.group_b(), bounds);
    const PopulationArrays arrays_all =
        PopulationArrays::from(std::span(split.profiles), bounds);

    std::vector<TargetingPoint> out;
    out.reserve(offer_laws.size() * 3);
    const TargetChoice targets[] = {TargetChoice::group_a, TargetChoice::group_b,
                                    TargetChoice::both};
    for (TargetChoice t : targets) {
        const PopulationArrays& arrays = t == TargetChoice::group_a ? arrays_a
                                         : t == TargetChoice::group_b
                                             ? arrays_b
                                             : arrays_all;
        std::vector<SweepPoint> arm;
        arm.reserve(offer_laws.size());
        for (std::size_t g = 0; g < offer_laws.size(); ++g) {
            std::uint64_t stream_a = g * 3 + static_cast<std::uint64_t>(t);
            arm.push_back(replicated_point(arrays, offer_laws[g], c_admin,
                                           n_replicates, seed, stream_a));
        }
        mark_argmax(arm);
        for (SweepPoint& pt : arm) out.push_back({t, std::move(pt)});
    }
    return out;
}

std::vector<MeanVsIndividualPoint> compare_mean_vs_individual(
    const PopulationArrays& population, std::span<const DistributionSpec> offer_laws,
    double c_admin, std::size_t n_replicates, std::uint64_t seed) {
    std::vector<MeanVsIndividualPoint> out;
    out.reserve(offer_laws.size());
    for (std::size_t g = 0; g < offer_laws.size(); ++g) {
        SweepPoint individual = replicated_point(population, offer_laws[g],
                                                 c_admin, n_replicates, seed, g);
        MeanVsIndividualPoint pt;
        pt.grid = individual.grid;
        pt.ratio_individual = individual.ratio;
        pt.ratio_individual_stderr = individual.ratio_stderr;
        std::vector<double> offers(population.size(),
                                   std::max(offer_laws[g].mean(), 0.0));
        pt.ratio_mean_offer = evaluate_policy(population, offers, c_admin).ratio;
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace greenstream
