#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "greenstream/acceptance.hpp"
#include "greenstream/altruism.hpp"
#include "greenstream/education.hpp"
#include "greenstream/qoe.hpp"
#include "greenstream/rng.hpp"

using namespace greenstream;

namespace {

const BitrateBounds kBounds{300.0, 5000.0};

UserProfile profile(double x_high, double x_low, double gamma, double savings,
                    double beta = 1.0, double delta = 1.0) {
    UserProfile u;
    u.x_high = x_high;
    u.x_low = x_low;
    u.gamma = gamma;
    u.savings = savings;
    u.beta = beta;
    u.delta = delta;
    return u;
}

} // namespace

TEST_CASE("opinion score hits the scale endpoints exactly") {
    CHECK(qoe_score(300.0, 1.0, kBounds) == 1.0);
    CHECK(qoe_score(5000.0, 1.0, kBounds) == 5.0);
    // gamma > 1 shrinks the denominator, so the top end clips to 5 exactly.
    CHECK(qoe_score(5000.0, 1.15, kBounds) == 5.0);
    CHECK(qoe_score(300.0, 1.15, kBounds) == 1.0);
}

TEST_CASE("opinion score matches independently evaluated mid-rates") {
    CHECK(std::abs(qoe_score(1200.0, 1.0, kBounds) - 2.9709804229598826) <
          1e-13);
    CHECK(std::abs(qoe_score(2500.0, 1.3, kBounds) - 4.324539283547231) <
          1e-13);
}

TEST_CASE("opinion score is strictly increasing in bitrate") {
    double prev = qoe_score(300.0, 1.0, kBounds);
    for (int i = 1; i <= 200; ++i) {
        double x = 300.0 * std::pow(5000.0 / 300.0, i / 200.0);
        double cur = qoe_score(x, 1.0, kBounds);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("opinion score rises with the sensitivity factor") {
    // Central finite differences at 100 random points, away from the clip.
    RngStream rng = make_stream(12, StreamKind::population, 901);
    const double h = 1e-6;
    int checked = 0;
    while (checked < 100) {
        double x = rng.uniform(320.0, 4800.0);
        double g = rng.uniform(1.0 + h, 10.0);
        double lo = qoe_score(x, g - h, kBounds);
        double hi = qoe_score(x, g + h, kBounds);
        if (lo <= 1.0 + 1e-3 || hi >= 5.0 - 1e-3) continue; // clip would mask it
        CHECK((hi - lo) / (2.0 * h) > 0.0);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("opinion score rejects out-of-domain arguments") {
    CHECK_THROWS_AS(qoe_score(299.0, 1.0, kBounds), std::domain_error);
    CHECK_THROWS_AS(qoe_score(5001.0, 1.0, kBounds), std::domain_error);
    CHECK_THROWS_AS(qoe_score(1000.0, 0.9, kBounds), std::domain_error);
    // gamma * x_min reaching x_max kills the denominator
    CHECK_THROWS_AS(qoe_score(1000.0, 5000.0 / 300.0, kBounds),
                    std::domain_error);
    CHECK_THROWS_AS(qoe_score(1000.0, 1.0, BitrateBounds{0.0, 5000.0}),
                    std::domain_error);
    CHECK_THROWS_AS(qoe_score(1000.0, 1.0, BitrateBounds{5000.0, 300.0}),
                    std::domain_error);
}

TEST_CASE("utility is the opinion score on the unit scale") {
    CHECK(utility(300.0, 1.0, kBounds) == 0.2);
    CHECK(utility(5000.0, 1.0, kBounds) == 1.0);
    CHECK(utility(5000.0, 1.15, kBounds) == 1.0);
    RngStream rng = make_stream(12, StreamKind::population, 902);
    for (int i = 0; i < 50; ++i) {
        double x = rng.uniform(300.0, 5000.0);
        CHECK(utility(x, 1.0, kBounds) ==
              doctest::Approx(qoe_score(x, 1.0, kBounds) / 5.0).epsilon(1e-15));
    }
}

TEST_CASE("utility drop matches the closed-form evaluation") {
    UserProfile u = profile(5000.0, 1200.0, 1.15, 0.0);
    CHECK(std::abs(delta_utility(u, kBounds) - 0.42701685256874633) < 1e-13);
}

TEST_CASE("utility drop grows with sensitivity and with the bitrate gap") {
    UserProfile a = profile(5000.0, 1200.0, 1.15, 0.0);
    UserProfile b = profile(5000.0, 1200.0, 1.3, 0.0);
    CHECK(delta_utility(b, kBounds) > delta_utility(a, kBounds));

    UserProfile c = profile(5000.0, 1000.0, 1.15, 0.0);
    CHECK(delta_utility(c, kBounds) > delta_utility(a, kBounds));

    // closing the gap drives the loss to zero
    UserProfile d = profile(5000.0, 5000.0 * (1.0 - 1e-12), 1.15, 0.0);
    CHECK(delta_utility(d, kBounds) > 0.0);
    CHECK(delta_utility(d, kBounds) < 1e-11);
}

TEST_CASE("incentive floor subtracts the saving and clamps at zero") {
    UserProfile u = profile(5000.0, 1200.0, 1.15, 0.1);
    CHECK(std::abs(min_incentive(u, kBounds) - 0.3270168525687463) < 1e-13);

    UserProfile clamped = profile(1500.0, 1000.0, 1.0, 0.5);
    CHECK(delta_utility(clamped, kBounds) < 0.5);
    CHECK(min_incentive(clamped, kBounds) == 0.0);
    CHECK(net_benefit_loss(clamped, kBounds) < 0.0);

    UserProfile zero_saving = profile(5000.0, 1200.0, 1.15, 0.0);
    CHECK(min_incentive(zero_saving, kBounds) ==
          delta_utility(zero_saving, kBounds));
}

TEST_CASE("incentive floor is zero exactly when the saving covers the loss") {
    RngStream rng = make_stream(12, StreamKind::population, 903);
    for (int i = 0; i < 200; ++i) {
        double x_high = rng.uniform(400.0, 5000.0);
        double x_low = rng.uniform(300.0, x_high * 0.999);
        double gamma = rng.uniform(1.0, 3.0);
        double s = rng.uniform(0.0, 1.0);
        UserProfile u = profile(x_high, x_low, gamma, s);
        double r = min_incentive(u, kBounds);
        CHECK(r >= 0.0);
        if (s >= delta_utility(u, kBounds))
            CHECK(r == 0.0);
        else
            CHECK(r > 0.0);
    }
}

TEST_CASE("profile validation rejects broken parameter combinations") {
    CHECK_THROWS_AS(validate_profile(profile(1000.0, 1000.0, 1.0, 0.0), kBounds),
                    std::domain_error);
    CHECK_THROWS_AS(validate_profile(profile(6000.0, 1000.0, 1.0, 0.0), kBounds),
                    std::domain_error);
    CHECK_THROWS_AS(validate_profile(profile(1000.0, 200.0, 1.0, 0.0), kBounds),
                    std::domain_error);
    CHECK_THROWS_AS(validate_profile(profile(1000.0, 500.0, 0.5, 0.0), kBounds),
                    std::domain_error);
    CHECK_THROWS_AS(validate_profile(profile(1000.0, 500.0, 20.0, 0.0), kBounds),
                    std::domain_error);
    CHECK_THROWS_AS(
        validate_profile(profile(1000.0, 500.0, 1.0, 0.0, 1.0, -1.0), kBounds),
        std::domain_error);
    CHECK_THROWS_AS(
        validate_profile(profile(1000.0, 500.0, 1.0, 0.0, 1.5), kBounds),
        std::domain_error);
    CHECK_THROWS_AS(validate_profile(profile(1000.0, 500.0, 1.0, -0.1), kBounds),
                    std::domain_error);
    CHECK_NOTHROW(validate_profile(profile(1000.0, 500.0, 1.0, -0.1), kBounds,
                                   /*allow_negative_savings=*/true));
}

TEST_CASE("acceptance probability anchors at one half on the threshold") {
    for (double delta : {0.1, 1.0, 1.2, 100.0, 1e6})
        for (double r_min : {0.0, 0.3, 2.0})
            CHECK(accept_probability(r_min, r_min, delta) == 0.5);
}

TEST_CASE("acceptance probability matches hand-evaluated offsets") {
    CHECK(std::abs(accept_probability(0.4, 0.3, 100.0) - 0.9999546021312976) <
          1e-15);
    CHECK(std::abs(accept_probability(0.2, 0.3, 100.0) -
                   4.5397868702434395e-05) < 1e-18);
}

TEST_CASE("acceptance probability is symmetric around the threshold") {
    RngStream rng = make_stream(12, StreamKind::population, 904);
    for (int i = 0; i < 1000; ++i) {
        double delta = rng.uniform(1e-3, 500.0);
        double d = rng.uniform(-5.0, 5.0);
        double r_min = rng.uniform(0.0, 3.0);
        double up = accept_probability(r_min + d, r_min, delta);
        double down = accept_probability(r_min - d, r_min, delta);
        CHECK(std::abs(up + down - 1.0) <= 1e-12);
    }
}

TEST_CASE("acceptance probability survives extreme slopes without overflow") {
    CHECK(accept_probability(10.0, 0.0, 1e8) == 1.0);
    CHECK(accept_probability(0.0, 10.0, 1e8) == 0.0);
    double near_one = accept_probability(1.0, 0.0, 700.0);
    CHECK(near_one > 0.0);
    CHECK(near_one <= 1.0);
    double near_zero = accept_probability(0.0, 1.0, 700.0);
    CHECK(near_zero >= 0.0);
    CHECK(std::isfinite(near_zero));
    // negative offers are legal; the probability just collapses
    CHECK(accept_probability(-3.0, 0.5, 2.0) ==
          doctest::Approx(1.0 / (1.0 + std::exp(7.0))).epsilon(1e-12));
}

TEST_CASE("acceptance probability rejects invalid slope and threshold") {
    CHECK_THROWS_AS(accept_probability(0.5, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(accept_probability(0.5, 0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(accept_probability(0.5, -0.1, 1.0), std::domain_error);
}

TEST_CASE("decision sampling is reproducible and tracks its probability") {
    Offer offer{0, 0.3};

    std::vector<bool> first, second;
    {
        RngStream rng = make_stream(42, StreamKind::decisions, 0);
        for (int i = 0; i < 100; ++i)
            first.push_back(sample_decision(offer, 0.3, 1.2, rng).accepted);
    }
    {
        RngStream rng = make_stream(42, StreamKind::decisions, 0);
        for (int i = 0; i < 100; ++i)
            second.push_back(sample_decision(offer, 0.3, 1.2, rng).accepted);
    }
    CHECK(first == second);

    RngStream rng = make_stream(42, StreamKind::decisions, 1);
    int accepted = 0;
    for (int i = 0; i < 100000; ++i)
        accepted += sample_decision(offer, 0.3, 1.2, rng).accepted ? 1 : 0;
    // p = 0.5 exactly on the threshold
    CHECK(std::abs(accepted / 100000.0 - 0.5) < 0.01);

    Offer poor{0, 0.0};
    int rare = 0;
    for (int i = 0; i < 100000; ++i)
        rare += sample_decision(poor, 1.0, 1000.0, rng).accepted ? 1 : 0;
    CHECK(rare / 100000.0 < 1e-3);
}

TEST_CASE("altruistic threshold blends own and population-average loss") {
    std::vector<UserProfile> pop{
        profile(5000.0, 1200.0, 1.15, 0.05, 0.4),
        profile(5000.0, 2500.0, 1.0, 0.0, 0.9),
        profile(3000.0, 600.0, 1.5, 0.2, 0.0),
    };

    CHECK(std::abs(delta_utility(pop[0], kBounds) - 0.42701685256874633) <
          1e-13);
    CHECK(std::abs(delta_utility(pop[1], kBounds) - 0.19709804229598823) <
          1e-13);
    CHECK(std::abs(delta_utility(pop[2], kBounds) - 0.5347090587599014) <
          1e-13);

    CHECK(std::abs(altruistic_min_incentive(pop[0], pop, kBounds) -
                   0.4025715317524257) < 1e-12);
    CHECK(std::abs(altruistic_net_min_incentive(pop[0], pop, kBounds) -
                   0.3525715317524257) < 1e-12);
    CHECK(std::abs(social_wellbeing(pop, 1200.0, kBounds) -
                   0.6231905447378705) < 1e-12);

    // beta = 0 collapses to the population mean loss for every member
    UserProfile selfless = pop[2];
    CHECK(std::abs(altruistic_min_incentive(selfless, pop, kBounds) -
                   0.38627465120821197) < 1e-12);
}

TEST_CASE("altruistic threshold is affine in the selfishness weight") {
    RngStream rng = make_stream(12, StreamKind::population, 905);
    for (int i = 0; i < 100; ++i) {
        std::vector<UserProfile> pop;
        for (int j = 0; j < 8; ++j) {
            double xh = rng.uniform(500.0, 5000.0);
            double xl = rng.uniform(300.0, xh * 0.99);
            pop.push_back(profile(xh, xl, rng.uniform(1.0, 2.0), 0.0,
                                  rng.uniform(0.0, 1.0)));
        }
        UserProfile& u = pop[0];
        u.beta = 1.0;
        double own = altruistic_min_incentive(u, pop, kBounds);
        CHECK(own == doctest::Approx(delta_utility(u, kBounds)).epsilon(1e-14));
        u.beta = 0.0;
        double social = altruistic_min_incentive(u, pop, kBounds);
        double b = rng.uniform(0.0, 1.0);
        u.beta = b;
        double mixed = altruistic_min_incentive(u, pop, kBounds);
        CHECK(std::abs(mixed - (b * own + (1.0 - b) * social)) <= 1e-12);
    }
}

TEST_CASE("two-group closed form agrees with the averaged population") {
    RngStream rng = make_stream(12, StreamKind::population, 906);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng.next_u64() % 49; // up to ~50 users
        std::size_t l = 1 + rng.next_u64() % (n - 1);
        std::size_t m = n - l;

        UserProfile a = profile(5000.0, rng.uniform(400.0, 3000.0),
                                rng.uniform(1.0, 2.0), 0.0);
        UserProfile b = profile(4200.0, rng.uniform(320.0, 2500.0),
                                rng.uniform(1.0, 2.0), 0.0);
        double dU_a = delta_utility(a, kBounds);
        double dU_b = delta_utility(b, kBounds);

        std::vector<UserProfile> pop;
        for (std::size_t i = 0; i < l; ++i) pop.push_back(a);
        for (std::size_t i = 0; i < m; ++i) pop.push_back(b);

        double beta = rng.uniform(0.0, 1.0);
        pop[0].beta = beta;
        pop[l].beta = beta;

        CHECK(std::abs(two_group_min_incentive(true, beta, dU_a, dU_b, l, m, n) -
                       altruistic_min_incentive(pop[0], pop, kBounds)) <=
              1e-12);
        CHECK(std::abs(two_group_min_incentive(false, beta, dU_a, dU_b, l, m,
                                               n) -
                       altruistic_min_incentive(pop[l], pop, kBounds)) <=
              1e-12);
    }
    CHECK_THROWS_AS(two_group_min_incentive(true, 0.5, 0.3, 0.2, 2, 2, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(two_group_min_incentive(true, 1.5, 0.3, 0.2, 2, 2, 4),
                    std::invalid_argument);
}

TEST_CASE("threshold-minimizing weight sits at the endpoint the loss gap picks") {
    RngStream rng = make_stream(12, StreamKind::population, 907);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);

    int confirmed = 0;
    while (confirmed < 100) {
        std::vector<UserProfile> pop;
        for (int j = 0; j < 12; ++j) {
            double xh = rng.uniform(500.0, 5000.0);
            double xl = rng.uniform(300.0, xh * 0.99);
            pop.push_back(profile(xh, xl, rng.uniform(1.0, 2.0), 0.0));
        }
        double own = delta_utility(pop[0], kBounds);
        double sum = 0.0;
        for (const UserProfile& u : pop) sum += delta_utility(u, kBounds);
        double gap = own - sum / pop.size();
        if (std::abs(gap) < 1e-9) continue;

        BetaResponseCurve curve =
            beta_response_curve(pop[0], pop, grid, kBounds);
        CHECK(curve.minimizing_beta == (gap > 0.0 ? 0.0 : 1.0));
        CHECK(curve.points.front().slope_sign == (gap > 0.0 ? 1 : -1));
        ++confirmed;
    }
    CHECK(confirmed == 100);
}

TEST_CASE("green-bitrate design hits hand-checked targets") {
    BitrateSolution s = bitrate_for_target(5000.0, 1.15, 0.1, 0.3, kBounds);
    CHECK(s.feasible);
    CHECK(std::abs(s.x_low - 1313.3925536563697) < 1e-9);

    GammaSolution g = gamma_for_target(5000.0, 1200.0, 0.1, 0.35, kBounds);
    CHECK(g.feasible);
    CHECK(std::abs(g.gamma - 1.3182630164269744) < 1e-12);

    // a milder target would need gamma below one; reported but flagged
    GammaSolution low = gamma_for_target(5000.0, 1200.0, 0.1, 0.3, kBounds);
    CHECK_FALSE(low.feasible);
    CHECK(low.gamma < 1.0);

    CHECK_THROWS_AS(bitrate_for_target(5000.0, 1.15, 0.1, -0.2, kBounds),
                    std::domain_error);
}

TEST_CASE("design inversions round-trip through the threshold formula") {
    RngStream rng = make_stream(12, StreamKind::population, 908);
    int done = 0;
    while (done < 1000) {
        double x_high = rng.uniform(400.0, 5000.0);
        double x_low = rng.uniform(300.0, x_high * 0.995);
        if (x_low >= x_high) continue;
        double gamma = rng.uniform(1.0, 4.0);
        double savings = rng.uniform(0.0, 0.5);
        UserProfile u = profile(x_high, x_low, gamma, savings);
        double target = delta_utility(u, kBounds) - savings;

        BitrateSolution bs =
            bitrate_for_target(x_high, gamma, savings, target, kBounds);
        CHECK(bs.feasible);
        CHECK(std::abs(bs.x_low - x_low) <= 1e-9 * x_low);

        GammaSolution gs =
            gamma_for_target(x_high, x_low, savings, target, kBounds);
        CHECK(gs.feasible);
        CHECK(std::abs(gs.gamma - gamma) <= 1e-9 * gamma);

        double ss = savings_for_target(x_high, x_low, gamma, target, kBounds);
        CHECK(std::abs(ss - savings) <= 1e-9 * std::max(savings, 1e-6));
        ++done;
    }
    CHECK(done == 1000);
}
