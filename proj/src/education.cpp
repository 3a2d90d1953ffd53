#include <cmath>
#include <stdexcept>

#include "greenstream/education.hpp"
#include "greenstream/policy.hpp"
#include "greenstream/rng.hpp"

namespace greenstream {

namespace {

void check_pair(double x_high, double x_low, const BitrateBounds& bounds) {
    validate_bounds(bounds);
    if (!(x_low >= bounds.x_min && x_high <= bounds.x_max && x_low < x_high))
        throw std::domain_error("bitrates must satisfy x_min <= x_low < x_high <= x_max");
}

} // namespace

BitrateSolution bitrate_for_target(double x_high, double gamma, double savings,
                                   double r_target, const BitrateBounds& bounds) {
    validate_bounds(bounds);
    if (!(x_high > bounds.x_min && x_high <= bounds.x_max))
        throw std::domain_error("x_high must lie in (x_min, x_max]");
    if (!(gamma >= 1.0 && gamma * bounds.x_min < bounds.x_max))
        throw std::domain_error("gamma out of range");
    if (!std::isfinite(savings) || !std::isfinite(r_target))
        throw std::domain_error("savings and target must be finite");
    double level = r_target + savings;
    if (level < 0.0)
        throw std::domain_error("threshold target below the zero clamp");
    double span = std::log(bounds.x_max) - std::log(gamma * bounds.x_min);
    BitrateSolution s;
    s.x_low = x_high * std::exp(-1.25 * span * level);
    s.feasible = s.x_low >= bounds.x_min && s.x_low < x_high;
    return s;
}

GammaSolution gamma_for_target(double x_high, double x_low, double savings,
                               double r_target, const BitrateBounds& bounds) {
    check_pair(x_high, x_low, bounds);
    if (!std::isfinite(savings) || !std::isfinite(r_target))
        throw std::domain_error("savings and target must be finite");
    double level = r_target + savings;
    if (level <= 0.0)
        throw std::domain_error("threshold target must exceed the zero clamp");
    double span = 0.8 * std::log(x_high / x_low) / level;
    GammaSolution s;
    s.gamma = bounds.x_max / (bounds.x_min * std::exp(span));
    s.feasible = s.gamma >= 1.0 && s.gamma * bounds.x_min < bounds.x_max;
    return s;
}

double savings_for_target(double x_high, double x_low, double gamma,
                          double r_target, const BitrateBounds& bounds) {
    check_pair(x_high, x_low, bounds);
    UserProfile u;
    u.x_high = x_high;
    u.x_low = x_low;
    u.gamma = gamma;
    return delta_utility(u, bounds) - r_target;
}

std::vector<EducationPoint> education_experiment(const EducationConfig& config,
                                                 std::uint64_t seed) {
    PopulationConfig base = config.population;
    base.r_min.reset();

    PopulationConfig with_baseline = base;
    with_baseline.r_min = config.baseline_r_min;
    PopulationConfig with_educated = base;
    with_educated.r_min = config.educated_r_min;

    // Same seed: both populations share every draw except the threshold draw,
    // so profiles differ only in the back-solved saving.
    std::vector<UserProfile> baseline = generate_population(with_baseline, seed);
    std::vector<UserProfile> educated = generate_population(with_educated, seed);

    PopulationArrays arrays_baseline =
        PopulationArrays::from(baseline, base.bounds);
    PopulationArrays arrays_educated =
        PopulationArrays::from(educated, base.bounds);

    std::vector<EducationPoint> out;
    out.reserve(config.offer_grid.size());
    for (double offer : config.offer_grid) {
        std::vector<double> offers(arrays_baseline.size(), offer);
        EducationPoint pt;
        pt.offer_value = offer;
        pt.ratio_baseline =
            evaluate_policy(arrays_baseline, offers, config.c_admin).ratio;
        pt.ratio_educated =
            evaluate_policy(arrays_educated, offers, config.c_admin).ratio;
        out.push_back(pt);
    }
    return out;
}

} // namespace greenstream
