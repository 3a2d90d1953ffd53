#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "greenstream/distributions.hpp"
#include "greenstream/population.hpp"

namespace greenstream {

// Result of inverting the threshold equation for one design parameter.
// feasible reports whether the solution respects the model's domain; the raw
// value is returned either way so callers can see how far out it lies.
struct BitrateSolution {
    double x_low = 0.0;
    bool feasible = false; // x_min <= x_low < x_high
};

struct GammaSolution {
    double gamma = 0.0;
    bool feasible = false; // 1 <= gamma and gamma * x_min < x_max
};

// Green bitrate that makes the net threshold hit r_target for a user with the
// given saving: x_low = x_high * exp(-(5/4) (ln x_max - ln(gamma x_min))
// (r_target + savings)). Requires r_target + savings >= 0 (the threshold
// cannot be driven below the zero clamp); throws std::domain_error otherwise.
BitrateSolution bitrate_for_target(double x_high, double gamma, double savings,
                                   double r_target, const BitrateBounds& bounds);

// Sensitivity that makes the net threshold hit r_target; requires
// r_target + savings > 0.
GammaSolution gamma_for_target(double x_high, double x_low, double savings,
                               double r_target, const BitrateBounds& bounds);

// Saving that makes the net threshold hit r_target. May be negative: the
// target then demands a perceived extra cost.
double savings_for_target(double x_high, double x_low, double gamma,
                          double r_target, const BitrateBounds& bounds);

struct EducationPoint {
    double offer_value = 0.0;
    std::optional<double> ratio_baseline;
    std::optional<double> ratio_educated;
};

struct EducationConfig {
    PopulationConfig population;     // shared base draws; r_min ignored here
    DistributionSpec baseline_r_min; // threshold law before the intervention
    DistributionSpec educated_r_min; // threshold law after it
    std::vector<double> offer_grid;  // constant offer per grid point
    double c_admin = 0.04;
};

// Builds one base population, back-solves the baseline and educated threshold
// laws onto the same users (profiles differ only in savings), and sweeps a
// constant offer over both. Identical laws produce identical curves.
std::vector<EducationPoint> education_experiment(const EducationConfig& config,
                                                 std::uint64_t seed);

} // namespace greenstream
