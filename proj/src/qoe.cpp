#include "greenstream/qoe.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace greenstream {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error(what);
}

// ln x_max - ln(gamma * x_min); the common slope denominator. Positive once
// the gamma constraint holds.
double log_span(double gamma, const BitrateBounds& bounds) {
    return std::log(bounds.x_max) - std::log(gamma * bounds.x_min);
}

void check_gamma(double gamma, const BitrateBounds& bounds) {
    require(std::isfinite(gamma) && gamma >= 1.0, "gamma must be >= 1");
    require(gamma * bounds.x_min < bounds.x_max,
            "gamma * x_min must stay below x_max");
}

} // namespace

void validate_bounds(const BitrateBounds& bounds) {
    require(std::isfinite(bounds.x_min) && std::isfinite(bounds.x_max),
            "bitrate bounds must be finite");
    require(bounds.x_min > 0.0, "x_min must be positive");
    require(bounds.x_min < bounds.x_max, "x_min must be below x_max");
}

void validate_profile(const UserProfile& user, const BitrateBounds& bounds,
                      bool allow_negative_savings) {
    validate_bounds(bounds);
    require(std::isfinite(user.x_high) && std::isfinite(user.x_low),
            "bitrates must be finite");
    require(user.x_low >= bounds.x_min && user.x_high <= bounds.x_max,
            "bitrates must lie inside the bounds");
    require(user.x_low < user.x_high, "x_low must be below x_high");
    check_gamma(user.gamma, bounds);
    require(std::isfinite(user.delta) && user.delta > 0.0,
            "delta must be positive");
    require(std::isfinite(user.beta) && user.beta >= 0.0 && user.beta <= 1.0,
            "beta must lie in [0, 1]");
    require(std::isfinite(user.savings), "savings must be finite");
    if (!allow_negative_savings)
        require(user.savings >= 0.0, "savings must be non-negative");
}

double qoe_score(double x, double gamma, const BitrateBounds& bounds) {
    validate_bounds(bounds);
    check_gamma(gamma, bounds);
    require(std::isfinite(x) && x >= bounds.x_min && x <= bounds.x_max,
            "bitrate outside the feasible window");
    double raw = 1.0 + 4.0 * (std::log(x) - std::log(bounds.x_min)) /
                           log_span(gamma, bounds);
    if (raw < 1.0) return 1.0;
    if (raw > 5.0) return 5.0;
    return raw;
}

double utility(double x, double gamma, const BitrateBounds& bounds) {
    double u = qoe_score(x, gamma, bounds) / 5.0;
    if (u < 0.0) return 0.0;
    if (u > 1.0) return 1.0;
    return u;
}

double delta_utility(const UserProfile& user, const BitrateBounds& bounds) {
    validate_profile(user, bounds, true);
    return 4.0 * (std::log(user.x_high) - std::log(user.x_low)) /
           (5.0 * log_span(user.gamma, bounds));
}

double net_benefit_loss(const UserProfile& user, const BitrateBounds& bounds) {
    return delta_utility(user, bounds) - user.savings;
}

double min_incentive(const UserProfile& user, const BitrateBounds& bounds) {
    double loss = net_benefit_loss(user, bounds);
    return loss > 0.0 ? loss : 0.0;
}

} // namespace greenstream
