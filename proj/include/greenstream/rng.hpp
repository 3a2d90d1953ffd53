#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace greenstream {

// Every random draw in the toolkit flows through a named sub-stream derived
// from the master seed, so results never depend on the order in which
// independent units of work (users, grid points, replicates) are visited.
enum class StreamKind : std::uint64_t {
    population = 1,
    partition = 2,
    offers = 3,
    decisions = 4,
    replicates = 5,
    interactions = 6,
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + uniform01() * (b - a); }

    // Box-Muller, spare discarded: one normal consumes exactly two uniforms,
    // which keeps the stream position a pure function of the draw count.
    double normal(double mu, double sigma) {
        double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 gen_;
};

inline RngStream make_stream(std::uint64_t master_seed, StreamKind kind,
                             std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = detail::splitmix64(master_seed);
    s = detail::splitmix64(s ^ static_cast<std::uint64_t>(kind));
    s = detail::splitmix64(s ^ a);
    s = detail::splitmix64(s ^ b);
    return RngStream(s);
}

} // namespace greenstream
