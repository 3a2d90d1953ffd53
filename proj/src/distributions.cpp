#include "greenstream/distributions.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace greenstream {

DistributionSpec DistributionSpec::make_uniform(double a, double b) {
    DistributionSpec s;
    s.kind = DistKind::uniform;
    // (a, b) means (min, max); a reversed pair is normalized here and the
    // config layer reports the normalization as a warning.
    s.a = a <= b ? a : b;
    s.b = a <= b ? b : a;
    return s;
}

DistributionSpec DistributionSpec::make_normal(double mu, double sigma_sq) {
    DistributionSpec s;
    s.kind = DistKind::normal;
    s.mu = mu;
    s.sigma_sq = sigma_sq;
    return s;
}

DistributionSpec DistributionSpec::make_discrete(std::vector<double> values,
                                                 std::vector<double> weights) {
    DistributionSpec s;
    s.kind = DistKind::discrete;
    s.values = std::move(values);
    s.weights = std::move(weights);
    if (s.weights.empty()) s.weights.assign(s.values.size(), 1.0);
    return s;
}

DistributionSpec DistributionSpec::make_constant(double value) {
    DistributionSpec s;
    s.kind = DistKind::constant;
    s.value = value;
    return s;
}

double DistributionSpec::mean() const {
    switch (kind) {
        case DistKind::uniform: return 0.5 * (a + b);
        case DistKind::normal: return mu;
        case DistKind::constant: return value;
        case DistKind::discrete: {
            double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
            double acc = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i)
                acc += values[i] * weights[i];
            return acc / wsum;
        }
    }
    return 0.0;
}

std::string DistributionSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case DistKind::uniform: os << "uniform(" << a << ", " << b << ")"; break;
        case DistKind::normal:
            os << "normal(" << mu << ", " << sigma_sq << ")";
            break;
        case DistKind::constant: os << "constant(" << value << ")"; break;
        case DistKind::discrete:
            os << "discrete(" << values.size() << " values)";
            break;
    }
    return os.str();
}

void validate_spec(const DistributionSpec& spec) {
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(msg + " in " + spec.describe());
    };
    switch (spec.kind) {
        case DistKind::uniform:
            if (!std::isfinite(spec.a) || !std::isfinite(spec.b))
                fail("non-finite bounds");
            if (spec.a > spec.b) fail("unnormalized bounds");
            break;
        case DistKind::normal:
            if (!std::isfinite(spec.mu) || !std::isfinite(spec.sigma_sq))
                fail("non-finite parameters");
            if (spec.sigma_sq < 0.0) fail("negative variance");
            break;
        case DistKind::constant:
            if (!std::isfinite(spec.value)) fail("non-finite value");
            break;
        case DistKind::discrete: {
            if (spec.values.empty()) fail("empty support");
            if (spec.weights.size() != spec.values.size())
                fail("weight/value length mismatch");
            double wsum = 0.0;
            for (double v : spec.values)
                if (!std::isfinite(v)) fail("non-finite support value");
            for (double w : spec.weights) {
                if (!std::isfinite(w) || w < 0.0) fail("invalid weight");
                wsum += w;
            }
            if (wsum <= 0.0) fail("weights sum to zero");
            break;
        }
    }
}

double sample(const DistributionSpec& spec, RngStream& rng) {
    switch (spec.kind) {
        case DistKind::uniform: return rng.uniform(spec.a, spec.b);
        case DistKind::normal:
            return rng.normal(spec.mu, std::sqrt(spec.sigma_sq));
        case DistKind::constant: return spec.value;
        case DistKind::discrete: {
            double wsum = std::accumulate(spec.weights.begin(),
                                          spec.weights.end(), 0.0);
            double u = rng.uniform01() * wsum;
            double acc = 0.0;
            for (std::size_t i = 0; i < spec.values.size(); ++i) {
                acc += spec.weights[i];
                if (u < acc) return spec.values[i];
            }
            return spec.values.back();
        }
    }
    throw std::logic_error("unreachable distribution kind");
}

} // namespace greenstream
