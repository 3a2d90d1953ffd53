#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "greenstream/acceptance.hpp"
#include "greenstream/kernels/kernels.hpp"
#include "greenstream/learning.hpp"
#include "greenstream/rng.hpp"

namespace greenstream {

std::vector<InteractionRecord> generate_interactions(double r_min, double delta,
                                                     const DistributionSpec& offer_law,
                                                     std::size_t m, RngStream& rng) {
    std::vector<InteractionRecord> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        InteractionRecord rec;
        rec.offer = sample(offer_law, rng);
        rec.accepted = rng.bernoulli(accept_probability(rec.offer, r_min, delta));
        out.push_back(rec);
    }
    return out;
}

namespace {

struct Sample {
    std::vector<double> offers;
    std::vector<std::uint8_t> responses;
};

Sample to_arrays(std::span<const InteractionRecord> records) {
    Sample s;
    s.offers.reserve(records.size());
    s.responses.reserve(records.size());
    for (const InteractionRecord& r : records) {
        s.offers.push_back(r.offer);
        s.responses.push_back(r.accepted ? 1 : 0);
    }
    return s;
}

// Penalized objective value; the reported log_likelihood stays unpenalized.
double penalized(double log_lik, double ridge, double t0, double t1) {
    return log_lik - 0.5 * ridge * (t0 * t0 + t1 * t1);
}

} // namespace

ParameterEstimate fit_logistic(std::span<const InteractionRecord> records,
                               double ridge) {
    if (records.empty())
        throw std::invalid_argument("cannot fit an empty interaction sample");
    if (!(ridge >= 0.0) || !std::isfinite(ridge))
        throw std::invalid_argument("ridge must be finite and >= 0");

    ParameterEstimate est;
    est.n_samples = records.size();

    const double inf = std::numeric_limits<double>::infinity();
    double min_acc = inf, max_acc = -inf, min_rej = inf, max_rej = -inf;
    bool all_equal = true;
    for (const InteractionRecord& r : records) {
        if (!std::isfinite(r.offer))
            throw std::invalid_argument("offers must be finite");
        if (r.offer != records.front().offer) all_equal = false;
        if (r.accepted) {
            min_acc = std::min(min_acc, r.offer);
            max_acc = std::max(max_acc, r.offer);
        } else {
            min_rej = std::min(min_rej, r.offer);
            max_rej = std::max(max_rej, r.offer);
        }
    }
    if (all_equal) {
        est.status = FitStatus::degenerate;
        return est;
    }
    // Without a penalty a separable sample has no finite maximizer, so it is
    // reported instead of iterated; any positive ridge restores coercivity.
    bool has_acc = min_acc <= max_acc, has_rej = min_rej <= max_rej;
    if (ridge == 0.0) {
        if (!has_acc || !has_rej) {
            est.status = FitStatus::separated;
            return est;
        }
        if (min_acc > max_rej || max_acc < min_rej) {
            est.status = FitStatus::separated;
            est.separation_direction = min_acc > max_rej ? 1 : -1;
            return est;
        }
    }

    Sample s = to_arrays(records);
    const kernels::Ops& ops = kernels::active_ops();
    const std::size_t n = s.offers.size();

    double t0 = 0.0, t1 = 0.1;
    kernels::LogisticTerms terms =
        ops.logistic_terms(s.offers.data(), s.responses.data(), n, t0, t1);
    est.status = FitStatus::max_iterations;
    for (int iter = 0; iter < 100; ++iter) {
        double g0 = terms.g0 - ridge * t0;
        double g1 = terms.g1 - ridge * t1;
        if (std::max(std::abs(g0), std::abs(g1)) < 1e-8) {
            est.status = FitStatus::converged;
            break;
        }
        double h00 = terms.h00 + ridge, h01 = terms.h01, h11 = terms.h11 + ridge;
        double det = h00 * h11 - h01 * h01;
        if (!(det > 0.0) || !std::isfinite(det)) break;
        double d0 = (h11 * g0 - h01 * g1) / det;
        double d1 = (h00 * g1 - h01 * g0) / det;

        double base = penalized(terms.log_lik, ridge, t0, t1);
        double step = 1.0;
        bool improved = false;
        kernels::LogisticTerms next;
        while (true) {
            next = ops.logistic_terms(s.offers.data(), s.responses.data(), n,
                                      t0 + step * d0, t1 + step * d1);
            if (penalized(next.log_lik, ridge, t0 + step * d0, t1 + step * d1) >=
                base) {
                improved = true;
                break;
            }
            if (step < 1e-12) break;
            step *= 0.5;
        }
        if (!improved) {
            // No float-visible gain along the ascent direction: the iterate is
            // at the objective's numeric resolution, which is as converged as
            // the sample allows even if the raw gradient norm is above tol.
            est.status = FitStatus::converged;
            break;
        }
        t0 += step * d0;
        t1 += step * d1;
        terms = next;
        est.iterations = iter + 1;
        // A heavily backtracked step can be accepted on a bitwise-equal
        // objective while moving theta by less than its own rounding; that is
        // the same numeric optimum, so stop instead of spinning.
        if (std::abs(step * d0) <= 1e-9 * (1.0 + std::abs(t0)) &&
            std::abs(step * d1) <= 1e-9 * (1.0 + std::abs(t1))) {
            est.status = FitStatus::converged;
            break;
        }
    }

    est.theta0 = t0;
    est.theta1 = t1;
    est.delta_hat = t1;
    est.r_min_hat = t1 != 0.0 ? -t0 / t1 : 0.0;
    est.log_likelihood = terms.log_lik;

    double det = terms.h00 * terms.h11 - terms.h01 * terms.h01;
    if (det > 0.0 && std::isfinite(det)) {
        double v00 = terms.h11 / det;
        double v01 = -terms.h01 / det;
        double v11 = terms.h00 / det;
        est.se_delta = std::sqrt(v11);
        if (t1 != 0.0) {
            double q = t0 / t1;
            double var_r = (v00 - 2.0 * q * v01 + q * q * v11) / (t1 * t1);
            est.se_r_min = var_r > 0.0 ? std::sqrt(var_r) : 0.0;
        }
    }
    return est;
}

std::vector<LearningErrorPoint> error_vs_samples(
    std::span<const UserProfile> profiles, const BitrateBounds& bounds,
    const DistributionSpec& offer_law, std::span<const std::size_t> m_grid,
    std::size_t n_replicates, std::uint64_t seed, double ridge) {
    if (m_grid.empty())
        throw std::invalid_argument("sample-count grid must be non-empty");
    std::size_t max_m = *std::max_element(m_grid.begin(), m_grid.end());

    struct Acc {
        double err_r = 0.0, err_d = 0.0;
        std::size_t plausible = 0, fits = 0;
    };
    std::vector<Acc> acc(m_grid.size());

    for (std::size_t ui = 0; ui < profiles.size(); ++ui) {
        const UserProfile& u = profiles[ui];
        double r_true = min_incentive(u, bounds);
        for (std::size_t rep = 0; rep < n_replicates; ++rep) {
            RngStream rng = make_stream(seed, StreamKind::interactions, ui, rep);
            std::vector<InteractionRecord> history =
                generate_interactions(r_true, u.delta, offer_law, max_m, rng);
            for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
                std::span<const InteractionRecord> prefix(history.data(),
                                                          m_grid[mi]);
                ParameterEstimate est = fit_logistic(prefix, ridge);
                ++acc[mi].fits;
                if (est.plausible()) {
                    ++acc[mi].plausible;
                    acc[mi].err_r += std::abs(est.r_min_hat - r_true);
                    acc[mi].err_d += std::abs(est.delta_hat - u.delta);
                }
            }
        }
    }

    std::vector<LearningErrorPoint> out;
    out.reserve(m_grid.size());
    for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
        LearningErrorPoint pt;
        pt.m = m_grid[mi];
        pt.n_fits = acc[mi].fits;
        pt.n_excluded = acc[mi].fits - acc[mi].plausible;
        if (acc[mi].plausible) {
            pt.mean_abs_err_r_min =
                acc[mi].err_r / static_cast<double>(acc[mi].plausible);
            pt.mean_abs_err_delta =
                acc[mi].err_d / static_cast<double>(acc[mi].plausible);
        }
        out.push_back(pt);
    }
    return out;
}

} // namespace greenstream
