#include <cmath>

#include "greenstream/kernels/kernels.hpp"

namespace greenstream::kernels {

namespace {

inline double sigmoid_stable(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

void accept_probabilities_scalar(const double* offer, const double* r_min,
                                 const double* delta, double* p,
                                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        p[i] = sigmoid_stable(delta[i] * (offer[i] - r_min[i]));
}

PolicyTerms policy_terms_scalar(const double* p, const double* offer,
                                const double* flex, std::size_t n) {
    PolicyTerms t;
    for (std::size_t i = 0; i < n; ++i) {
        t.sum_p_r += p[i] * offer[i];
        t.sum_p_x += p[i] * flex[i];
        t.sum_p += p[i];
    }
    return t;
}

LogisticTerms logistic_terms_scalar(const double* offer,
                                    const std::uint8_t* response,
                                    std::size_t n, double theta0,
                                    double theta1) {
    LogisticTerms t;
    for (std::size_t i = 0; i < n; ++i) {
        double r = offer[i];
        double y = static_cast<double>(response[i]);
        double u = theta0 + theta1 * r;
        double z = sigmoid_stable(u);
        // softplus(u) in the shifted form that never overflows.
        double sp = (u > 0.0 ? u : 0.0) + std::log1p(std::exp(-std::abs(u)));
        t.log_lik += y * u - sp;
        double d = y - z;
        t.g0 += d;
        t.g1 += d * r;
        double w = z * (1.0 - z);
        t.h00 += w;
        t.h01 += w * r;
        t.h11 += w * r * r;
    }
    return t;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{accept_probabilities_scalar, policy_terms_scalar,
                         logistic_terms_scalar};
    return ops;
}

} // namespace greenstream::kernels
