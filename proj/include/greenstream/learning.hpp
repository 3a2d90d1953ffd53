#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "greenstream/distributions.hpp"
#include "greenstream/population.hpp"

namespace greenstream {

struct InteractionRecord {
    double offer = 0.0; // any finite value; negative offers are legal here
    bool accepted = false;
};

enum class FitStatus {
    converged,
    max_iterations,
    separated, // responses perfectly separable in the offer; MLE diverges
    degenerate // all offers identical; slope not identifiable
};

struct ParameterEstimate {
    double theta0 = 0.0; // intercept
    double theta1 = 0.0; // slope; the steepness estimate
    double delta_hat = 0.0;
    double r_min_hat = 0.0; // -theta0 / theta1
    double se_delta = 0.0;  // asymptotic standard errors from the inverse
    double se_r_min = 0.0;  // observed information (delta method for r_min)
    double log_likelihood = 0.0;
    std::size_t n_samples = 0;
    int iterations = 0;
    FitStatus status = FitStatus::degenerate;
    // +1 when all accepts lie strictly above all rejects, -1 for the reverse,
    // 0 when not applicable (includes one-class samples).
    int separation_direction = 0;

    bool converged() const { return status == FitStatus::converged; }
    // A usable threshold estimate needs convergence and a positive slope.
    bool plausible() const { return converged() && theta1 > 0.0; }
};

// Offers drawn i.i.d. from the law, responses Bernoulli(accept_probability).
std::vector<InteractionRecord> generate_interactions(double r_min, double delta,
                                                     const DistributionSpec& offer_law,
                                                     std::size_t m, RngStream& rng);

// Maximum-likelihood fit of the two-parameter logistic by damped Newton
// iteration from theta = (0, 0.1); converges when the gradient max-norm
// drops below 1e-8 or the line search can no longer improve the objective
// at float resolution, at most 100 iterations. ridge >= 0 adds an L2
// penalty. Degenerate samples are detected up front; separable samples are
// reported as such only for ridge == 0, since any positive penalty makes
// the optimum finite again. Throws std::invalid_argument on an empty
// sample or negative ridge.
ParameterEstimate fit_logistic(std::span<const InteractionRecord> records,
                               double ridge = 0.0);

struct LearningErrorPoint {
    std::size_t m = 0;
    double mean_abs_err_r_min = 0.0; // over plausible fits
    double mean_abs_err_delta = 0.0;
    std::size_t n_excluded = 0; // non-converged or non-positive-slope fits
    std::size_t n_fits = 0;
};

// For each sample count m: every user's interaction history is generated
// n_replicates times from per-(user, replicate) sub-streams, fitted, and the
// absolute estimation errors averaged over plausible fits.
std::vector<LearningErrorPoint> error_vs_samples(
    std::span<const UserProfile> profiles, const BitrateBounds& bounds,
    const DistributionSpec& offer_law, std::span<const std::size_t> m_grid,
    std::size_t n_replicates, std::uint64_t seed, double ridge = 0.0);

} // namespace greenstream
