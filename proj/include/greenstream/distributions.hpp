#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "greenstream/rng.hpp"

namespace greenstream {

enum class DistKind { uniform, normal, discrete, constant };

// Parameter law for population attributes and offer sampling.
// normal carries the variance (sigma_sq), matching the N(mu, sigma^2) notation
// used throughout the scenario configs.
struct DistributionSpec {
    DistKind kind = DistKind::constant;
    double a = 0.0;        // uniform lower bound
    double b = 0.0;        // uniform upper bound
    double mu = 0.0;       // normal mean
    double sigma_sq = 0.0; // normal variance
    double value = 0.0;    // constant
    std::vector<double> values;  // discrete support
    std::vector<double> weights; // discrete weights, normalized on sample

    static DistributionSpec make_uniform(double a, double b);
    static DistributionSpec make_normal(double mu, double sigma_sq);
    static DistributionSpec make_discrete(std::vector<double> values,
                                          std::vector<double> weights = {});
    static DistributionSpec make_constant(double value);

    // Mean of the law; used by the mean-offer policy comparison.
    double mean() const;

    // Human-readable form for manifests and error messages.
    std::string describe() const;
};

// Throws std::invalid_argument when the spec is malformed (non-finite
// parameters, negative variance, empty discrete support, negative weights,
// weight/value length mismatch, all-zero weights).
void validate_spec(const DistributionSpec& spec);

double sample(const DistributionSpec& spec, RngStream& rng);

// Redraws until pred(x) holds. Throws std::runtime_error after max_attempts
// rejections; callers use this to enforce parameter-domain constraints.
template <typename Pred>
double sample_where(const DistributionSpec& spec, RngStream& rng, Pred pred,
                    int max_attempts = 1000) {
    for (int i = 0; i < max_attempts; ++i) {
        double x = sample(spec, rng);
        if (pred(x)) return x;
    }
    throw std::runtime_error("rejection sampling exhausted " +
                             std::to_string(max_attempts) +
                             " attempts for law " + spec.describe());
}

} // namespace greenstream
