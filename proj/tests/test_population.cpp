#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "greenstream/distributions.hpp"
#include "greenstream/population.hpp"
#include "greenstream/rng.hpp"

using namespace greenstream;

TEST_CASE("named sub-streams are deterministic and mutually distinct") {
    RngStream a = make_stream(99, StreamKind::offers, 3, 7);
    RngStream b = make_stream(99, StreamKind::offers, 3, 7);
    for (int i = 0; i < 32; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c = make_stream(99, StreamKind::offers, 3, 8);
    RngStream d = make_stream(99, StreamKind::decisions, 3, 7);
    RngStream e = make_stream(100, StreamKind::offers, 3, 7);
    RngStream base = make_stream(99, StreamKind::offers, 3, 7);
    std::uint64_t first = base.next_u64();
    CHECK(c.next_u64() != first);
    CHECK(d.next_u64() != first);
    CHECK(e.next_u64() != first);
}

TEST_CASE("unit uniforms stay in range with the right mean") {
    RngStream rng = make_stream(5, StreamKind::population, 1);
    double sum = 0.0, lo = 1.0, hi = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform01();
        sum += u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("normal draws match their first two moments") {
    DistributionSpec law = DistributionSpec::make_normal(0.0, 4.0);
    RngStream rng = make_stream(5, StreamKind::population, 2);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = sample(law, rng);
        sum += v;
        sq += v * v;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.03);      // 3 sigma of the mean estimator is .019
    CHECK(std::abs(var - 4.0) < 0.08); // and .054 for the variance
}

TEST_CASE("degenerate laws collapse to their single value") {
    RngStream rng = make_stream(5, StreamKind::population, 3);
    DistributionSpec point = DistributionSpec::make_uniform(5.0, 5.0);
    DistributionSpec fixed = DistributionSpec::make_constant(2.5);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample(point, rng) == 5.0);
        CHECK(sample(fixed, rng) == 2.5);
    }
}

TEST_CASE("uniform factory normalizes reversed bounds") {
    DistributionSpec law = DistributionSpec::make_uniform(7.0, 3.0);
    CHECK(law.a == 3.0);
    CHECK(law.b == 7.0);
    RngStream rng = make_stream(5, StreamKind::population, 4);
    for (int i = 0; i < 1000; ++i) {
        double v = sample(law, rng);
        CHECK(v >= 3.0);
        CHECK(v < 7.0);
    }
}

TEST_CASE("discrete draws respect support and weights") {
    DistributionSpec law =
        DistributionSpec::make_discrete({2000, 3000, 4000}, {1.0, 0.0, 3.0});
    RngStream rng = make_stream(5, StreamKind::population, 5);
    int low = 0, high = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double v = sample(law, rng);
        CHECK((v == 2000.0 || v == 4000.0)); // zero-weight value never appears
        (v == 2000.0 ? low : high)++;
    }
    CHECK(std::abs(low / double(n) - 0.25) < 0.01);
    CHECK(std::abs(high / double(n) - 0.75) < 0.01);
}

TEST_CASE("law means follow the closed forms") {
    CHECK(DistributionSpec::make_uniform(2.0, 6.0).mean() == 4.0);
    CHECK(DistributionSpec::make_normal(1.5, 9.0).mean() == 1.5);
    CHECK(DistributionSpec::make_constant(0.7).mean() == 0.7);
    CHECK(DistributionSpec::make_discrete({1, 2, 3}, {1, 1, 2}).mean() ==
          doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("malformed laws are rejected") {
    DistributionSpec raw;
    raw.kind = DistKind::uniform;
    raw.a = 4.0;
    raw.b = 1.0; // skipped the factory, bounds left unnormalized
    CHECK_THROWS_AS(validate_spec(raw), std::invalid_argument);

    CHECK_THROWS_AS(validate_spec(DistributionSpec::make_normal(0.0, -1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(DistributionSpec::make_discrete({})),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(DistributionSpec::make_discrete({1.0}, {-1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        validate_spec(DistributionSpec::make_discrete({1.0, 2.0}, {1.0})),
        std::invalid_argument);
    CHECK_THROWS_AS(
        validate_spec(DistributionSpec::make_discrete({1.0, 2.0}, {0.0, 0.0})),
        std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(DistributionSpec::make_constant(
                        std::numeric_limits<double>::quiet_NaN())),
                    std::invalid_argument);
}

TEST_CASE("default population satisfies every profile constraint") {
    PopulationConfig cfg;
    std::vector<UserProfile> pop = generate_population(cfg, 7);
    REQUIRE(pop.size() == 1000);
    for (const UserProfile& u : pop) {
        CHECK(u.x_low >= cfg.bounds.x_min);
        CHECK(u.x_high <= cfg.bounds.x_max);
        CHECK(u.x_low < u.x_high);
        CHECK(u.gamma >= 1.0);
        CHECK(u.gamma * cfg.bounds.x_min < cfg.bounds.x_max);
        CHECK(u.delta > 0.0);
        CHECK(u.beta >= 0.0);
        CHECK(u.beta <= 1.0);
        CHECK(u.savings >= 0.0);
        CHECK(min_incentive(u, cfg.bounds) >= 0.0);
    }
    // pinned first-user threshold guards the stream layout
    CHECK(std::abs(min_incentive(pop[0], cfg.bounds) - 0.3602486058335565) <
          1e-13);
}

TEST_CASE("population draws are per-user, so prefixes agree across sizes") {
    PopulationConfig small;
    small.n_users = 10;
    PopulationConfig large;
    large.n_users = 20;
    std::vector<UserProfile> a = generate_population(small, 11);
    std::vector<UserProfile> b = generate_population(large, 11);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x_high == b[i].x_high);
        CHECK(a[i].x_low == b[i].x_low);
        CHECK(a[i].savings == b[i].savings);
    }
    std::vector<UserProfile> other = generate_population(small, 12);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        any_diff = any_diff || a[i].x_high != other[i].x_high ||
                   a[i].x_low != other[i].x_low;
    CHECK(any_diff);
}

TEST_CASE("threshold law overrides the saving and may drive it negative") {
    PopulationConfig cfg;
    cfg.n_users = 50;
    cfg.r_min = DistributionSpec::make_constant(2.0);
    std::vector<UserProfile> pop = generate_population(cfg, 3);
    for (const UserProfile& u : pop) {
        CHECK(std::abs(min_incentive(u, cfg.bounds) - 2.0) < 1e-12);
        CHECK(u.savings < 0.0); // loss never reaches 2 on the default grids
    }
}

TEST_CASE("impossible sampling laws exhaust their rejection budget") {
    PopulationConfig cfg;
    cfg.n_users = 1;
    cfg.x_high = DistributionSpec::make_constant(6000.0); // above x_max
    CHECK_THROWS_AS(generate_population(cfg, 1), std::runtime_error);

    PopulationConfig neg;
    neg.n_users = 1;
    neg.r_min = DistributionSpec::make_constant(-1.0);
    CHECK_THROWS_AS(generate_population(neg, 1), std::runtime_error);
}

TEST_CASE("partition splits at k and redraws only the overridden laws") {
    PopulationConfig cfg;
    cfg.n_users = 400;
    std::vector<UserProfile> base = generate_population(cfg, 21);

    GroupOverrides a;
    a.r_min = DistributionSpec::make_normal(30.0, 25.0);
    GroupOverrides b;
    b.r_min = DistributionSpec::make_normal(3.0, 0.25);

    PartitionedPopulation split =
        partition_population(base, 150, a, b, cfg.bounds, 21);
    REQUIRE(split.profiles.size() == 400);
    CHECK(split.group_a().size() == 150);
    CHECK(split.group_b().size() == 250);

    double mean_a = 0.0, mean_b = 0.0;
    for (const UserProfile& u : split.group_a())
        mean_a += min_incentive(u, cfg.bounds);
    for (const UserProfile& u : split.group_b())
        mean_b += min_incentive(u, cfg.bounds);
    mean_a /= 150.0;
    mean_b /= 250.0;
    CHECK(std::abs(mean_a - 30.0) < 1.5); // 3 sigma of the group mean is 1.22
    CHECK(std::abs(mean_b - 3.0) < 0.15);

    // bitrates come through untouched
    for (std::size_t i = 0; i < 400; ++i) {
        CHECK(split.profiles[i].x_high == base[i].x_high);
        CHECK(split.profiles[i].x_low == base[i].x_low);
    }

    PartitionedPopulation all_a =
        partition_population(base, 400, a, b, cfg.bounds, 21);
    CHECK(all_a.group_b().empty());
    PartitionedPopulation all_b =
        partition_population(base, 0, a, b, cfg.bounds, 21);
    CHECK(all_b.group_a().empty());
    CHECK_THROWS_AS(partition_population(base, 401, a, b, cfg.bounds, 21),
                    std::invalid_argument);

    // no overrides: the base population passes through bit-identical
    PartitionedPopulation plain =
        partition_population(base, 150, {}, {}, cfg.bounds, 21);
    for (std::size_t i = 0; i < 400; ++i)
        CHECK(plain.profiles[i].savings == base[i].savings);
}

TEST_CASE("array views mirror the per-user derived quantities") {
    PopulationConfig cfg;
    cfg.n_users = 64;
    std::vector<UserProfile> pop = generate_population(cfg, 9);
    PopulationArrays arr = PopulationArrays::from(pop, cfg.bounds);
    REQUIRE(arr.size() == pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        CHECK(arr.r_min[i] == min_incentive(pop[i], cfg.bounds));
        CHECK(arr.delta[i] == pop[i].delta);
        CHECK(arr.flex[i] == pop[i].x_high - pop[i].x_low);
    }
}

TEST_CASE("population csv round-trips every field exactly") {
    PopulationConfig cfg;
    cfg.n_users = 200;
    cfg.gamma = DistributionSpec::make_uniform(1.0, 2.0);
    cfg.savings = DistributionSpec::make_uniform(0.0, 0.3);
    std::vector<UserProfile> pop = generate_population(cfg, 13);

    std::string csv = population_to_csv(pop, cfg.bounds);
    std::vector<UserProfile> back = population_from_csv(csv);
    REQUIRE(back.size() == pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        CHECK(back[i].id == pop[i].id);
        CHECK(back[i].x_high == pop[i].x_high);
        CHECK(back[i].x_low == pop[i].x_low);
        CHECK(back[i].gamma == pop[i].gamma);
        CHECK(back[i].delta == pop[i].delta);
        CHECK(back[i].beta == pop[i].beta);
        CHECK(back[i].savings == pop[i].savings);
    }

    CHECK_THROWS_AS(population_from_csv("nonsense header\n1,2\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(population_from_csv(""), std::invalid_argument);
}
