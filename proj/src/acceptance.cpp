#include "greenstream/acceptance.hpp"

#include <cmath>
#include <stdexcept>

namespace greenstream {

double accept_probability(double offer_amount, double r_min, double delta) {
    if (!std::isfinite(offer_amount) || !std::isfinite(r_min) ||
        !std::isfinite(delta))
        throw std::domain_error("acceptance arguments must be finite");
    if (delta <= 0.0) throw std::domain_error("delta must be positive");
    if (r_min < 0.0) throw std::domain_error("r_min must be non-negative");
    double t = delta * (offer_amount - r_min);
    // exp only ever sees non-positive arguments, so neither branch overflows.
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

Decision sample_decision(const Offer& offer, double r_min, double delta,
                         RngStream& rng) {
    double p = accept_probability(offer.amount, r_min, delta);
    return Decision{offer.user_id, rng.bernoulli(p)};
}

} // namespace greenstream
