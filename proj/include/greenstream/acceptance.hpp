#pragma once

#include <cstdint>

#include "greenstream/rng.hpp"

namespace greenstream {

struct Offer {
    std::int64_t user_id = 0;
    double amount = 0.0;
};

struct Decision {
    std::int64_t user_id = 0;
    bool accepted = false;
};

// Probability that a user with threshold r_min and steepness delta accepts an
// offered incentive r: 1 / (1 + exp(-delta * (r - r_min))). Evaluated in the
// overflow-safe branch form; exact 0.5 at r == r_min. The offer may be any
// finite value (offer laws with negative support are legal in the learning
// experiments). Throws std::domain_error unless delta > 0, r_min >= 0 and all
// arguments are finite.
double accept_probability(double offer_amount, double r_min, double delta);

// One Bernoulli(accept_probability) draw from the given stream.
Decision sample_decision(const Offer& offer, double r_min, double delta,
                         RngStream& rng);

} // namespace greenstream
