#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace greenstream::kernels {

// Accumulated expectation terms of one offer assignment.
struct PolicyTerms {
    double sum_p_r = 0.0; // sum of p_i * offer_i
    double sum_p_x = 0.0; // sum of p_i * flex_i
    double sum_p = 0.0;
};

// One pass of log-likelihood, gradient and Hessian accumulation for the
// two-parameter logistic model z = sigmoid(theta0 + theta1 * offer).
struct LogisticTerms {
    double log_lik = 0.0;
    double g0 = 0.0, g1 = 0.0;       // d/dtheta0, d/dtheta1
    double h00 = 0.0, h01 = 0.0, h11 = 0.0; // negative Hessian (PSD)
};

struct Ops {
    // p[i] = sigmoid(delta[i] * (offer[i] - r_min[i]))
    void (*accept_probabilities)(const double* offer, const double* r_min,
                                 const double* delta, double* p, std::size_t n);
    PolicyTerms (*policy_terms)(const double* p, const double* offer,
                                const double* flex, std::size_t n);
    LogisticTerms (*logistic_terms)(const double* offer,
                                    const std::uint8_t* response, std::size_t n,
                                    double theta0, double theta1);
};

enum class Backend { scalar, avx2 };

// Backends compiled in and usable on this CPU, preferred first.
std::vector<Backend> available_backends();

// Active kernel table. Defaults to the widest available backend; the
// GREENSTREAM_KERNEL environment variable (scalar|avx2) overrides at first
// use, and set_backend overrides programmatically. Selection is stable for
// the life of the process, which keeps outputs bit-reproducible per machine.
const Ops& active_ops();
Backend active_backend();

// Returns false (and leaves the selection alone) when the backend is not
// available on this CPU.
bool set_backend(Backend backend);

const char* backend_name(Backend backend);

// Named lookup used by CLI/env overrides; throws std::invalid_argument for
// unknown names.
Backend parse_backend(const std::string& name);

const Ops& scalar_ops();

#if defined(GREENSTREAM_BUILD_AVX2)
const Ops& avx2_ops();
#endif

} // namespace greenstream::kernels
