#pragma once

#include <cstdint>

namespace greenstream {

// Feasible bitrate window shared by the whole population, in kbit/s.
struct BitrateBounds {
    double x_min = 300.0;
    double x_max = 5000.0;
};

// One streaming user. savings is the perceived energy-cost saving from the
// low-bitrate option; it may be negative when a threshold law is imposed
// directly and the saving is back-solved (see population.hpp).
struct UserProfile {
    std::int64_t id = 0;
    double x_high = 0.0;  // preferred bitrate
    double x_low = 0.0;   // green alternative bitrate
    double gamma = 1.0;   // sensitivity: steepens the opinion-score slope
    double delta = 1.0;   // decision steepness in the acceptance sigmoid
    double beta = 1.0;    // 1 = fully self-interested, 0 = fully altruistic
    double savings = 0.0;
};

// Throws std::domain_error when bounds are unusable (non-finite, x_min <= 0,
// or x_min >= x_max).
void validate_bounds(const BitrateBounds& bounds);

// Throws std::domain_error on violated profile constraints. The saving is
// allowed to be negative only when allow_negative_savings is set, which the
// threshold back-solving path uses.
void validate_profile(const UserProfile& user, const BitrateBounds& bounds,
                      bool allow_negative_savings = false);

// Mean opinion score of watching at bitrate x, natural-log law, clipped to
// [1, 5]. gamma must satisfy gamma >= 1 and gamma * x_min < x_max; x must lie
// in [x_min, x_max]. Throws std::domain_error otherwise.
double qoe_score(double x, double gamma, const BitrateBounds& bounds);

// qoe_score normalized to [0, 1].
double utility(double x, double gamma, const BitrateBounds& bounds);

// Utility loss of switching from x_high to x_low, closed form on the unclipped
// log law: 4 * (ln x_high - ln x_low) / (5 * (ln x_max - ln(gamma * x_min))).
double delta_utility(const UserProfile& user, const BitrateBounds& bounds);

// Smallest acceptable incentive: max(delta_utility - savings, 0).
double min_incentive(const UserProfile& user, const BitrateBounds& bounds);

// Net benefit loss before clamping: delta_utility - savings. Negative means
// the saving alone already compensates the quality drop.
double net_benefit_loss(const UserProfile& user, const BitrateBounds& bounds);

} // namespace greenstream
