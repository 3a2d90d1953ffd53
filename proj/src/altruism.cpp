#include <algorithm>
#include <stdexcept>

#include "greenstream/altruism.hpp"

namespace greenstream {

namespace {

double mean_delta_utility(std::span<const UserProfile> profiles,
                          const BitrateBounds& bounds) {
    if (profiles.empty())
        throw std::invalid_argument("population must be non-empty");
    double sum = 0.0;
    for (const UserProfile& u : profiles) sum += delta_utility(u, bounds);
    return sum / static_cast<double>(profiles.size());
}

} // namespace

double social_wellbeing(std::span<const UserProfile> profiles, double x,
                        const BitrateBounds& bounds) {
    if (profiles.empty())
        throw std::invalid_argument("population must be non-empty");
    double sum = 0.0;
    for (const UserProfile& u : profiles) sum += utility(x, u.gamma, bounds);
    return sum / static_cast<double>(profiles.size());
}

double altruistic_min_incentive(const UserProfile& user,
                                std::span<const UserProfile> profiles,
                                const BitrateBounds& bounds) {
    double own = delta_utility(user, bounds);
    double social = mean_delta_utility(profiles, bounds);
    return user.beta * own + (1.0 - user.beta) * social;
}

double altruistic_net_min_incentive(const UserProfile& user,
                                    std::span<const UserProfile> profiles,
                                    const BitrateBounds& bounds) {
    return std::max(altruistic_min_incentive(user, profiles, bounds) -
                        user.savings,
                    0.0);
}

double two_group_min_incentive(bool in_group_a, double beta, double dU_a,
                               double dU_b, std::size_t l, std::size_t m,
                               std::size_t n) {
    if (n == 0 || l + m != n)
        throw std::invalid_argument("group sizes must satisfy l + m == n > 0");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("beta must lie in [0, 1]");
    double own = in_group_a ? dU_a : dU_b;
    double social = (static_cast<double>(l) * dU_a + static_cast<double>(m) * dU_b) /
                    static_cast<double>(n);
    return beta * own + (1.0 - beta) * social;
}

BetaResponseCurve beta_response_curve(const UserProfile& user,
                                      std::span<const UserProfile> profiles,
                                      std::span<const double> beta_grid,
                                      const BitrateBounds& bounds) {
    if (beta_grid.empty())
        throw std::invalid_argument("beta grid must be non-empty");
    double own = delta_utility(user, bounds);
    double social = mean_delta_utility(profiles, bounds);
    double slope = own - social;
    int sign = slope > 0.0 ? 1 : slope < 0.0 ? -1 : 0;

    BetaResponseCurve curve;
    curve.points.reserve(beta_grid.size());
    for (double beta : beta_grid) {
        if (!(beta >= 0.0 && beta <= 1.0))
            throw std::invalid_argument("beta must lie in [0, 1]");
        curve.points.push_back(
            {beta, beta * own + (1.0 - beta) * social, sign});
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        if (curve.points[i].r_beta_min < curve.points[best].r_beta_min) best = i;
    curve.minimizing_beta = curve.points[best].beta;
    return curve;
}

} // namespace greenstream
