#pragma once

#include <span>
#include <vector>

#include "greenstream/qoe.hpp"

namespace greenstream {

// Mean utility of the whole population watching at common bitrate x.
// Throws std::invalid_argument on an empty population.
double social_wellbeing(std::span<const UserProfile> profiles, double x,
                        const BitrateBounds& bounds);

// Acceptance threshold when user weighs own loss against the population mean:
// beta * dU_user + (1 - beta) * mean_i dU_i. Affine in beta with slope
// dU_user - mean dU; beta = 1 recovers the self-interested threshold.
double altruistic_min_incentive(const UserProfile& user,
                                std::span<const UserProfile> profiles,
                                const BitrateBounds& bounds);

// Same threshold net of the user's saving, clamped at zero like the
// self-interested minimum incentive.
double altruistic_net_min_incentive(const UserProfile& user,
                                    std::span<const UserProfile> profiles,
                                    const BitrateBounds& bounds);

// Closed form for a population of two homogeneous groups with utility losses
// dU_a (group size l) and dU_b (size m, l + m = n). in_group_a selects the
// branch. Throws std::invalid_argument unless l + m == n with n > 0, or when
// beta is outside [0, 1].
double two_group_min_incentive(bool in_group_a, double beta, double dU_a,
                               double dU_b, std::size_t l, std::size_t m,
                               std::size_t n);

struct BetaResponsePoint {
    double beta = 0.0;
    double r_beta_min = 0.0;
    int slope_sign = 0; // sign of dU_user - mean dU
};

struct BetaResponseCurve {
    std::vector<BetaResponsePoint> points;
    double minimizing_beta = 0.0;
};

// Threshold of one user across a beta grid, with the beta minimizing it.
// The grid must be non-empty.
BetaResponseCurve beta_response_curve(const UserProfile& user,
                                      std::span<const UserProfile> profiles,
                                      std::span<const double> beta_grid,
                                      const BitrateBounds& bounds);

} // namespace greenstream
