#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nomasim/channel.hpp"
#include "nomasim/rng.hpp"
#include "nomasim/specfun.hpp"
#include "support/oracles.hpp"

using namespace nomasim;

TEST_CASE("disc deployment is area uniform and reproducible") {
    RngStream rng(7001);
    const auto users = channel::deploy_users(1000, 30.0, rng);
    REQUIRE(users.size() == 1000);
    oracle::RunningStat d2;
    for (const auto& u : users) {
        const double d = u.distance();
        CHECK(d <= 30.0);
        CHECK(d >= 0.5);
        d2.add(u.squared_distance());
    }
    // E[d^2] = R^2/2 for a uniform disc; the 0.5 m exclusion shifts it by
    // well under the 5% budget.
    CHECK(std::fabs(d2.mean() - 450.0) < 0.05 * 450.0);

    RngStream a(99);
    RngStream b(99);
    const auto run1 = channel::deploy_users(50, 30.0, a);
    const auto run2 = channel::deploy_users(50, 30.0, b);
    REQUIRE(run1.size() == run2.size());
    for (std::size_t i = 0; i < run1.size(); ++i) {
        CHECK(run1[i].x == run2[i].x);
        CHECK(run1[i].y == run2[i].y);
    }

    RngStream empty_rng(1);
    CHECK(channel::deploy_users(0, 30.0, empty_rng).empty());

    RngStream excl(5);
    for (const auto& u : channel::deploy_users(400, 10.0, 2.0, excl)) CHECK(u.distance() >= 2.0);
}

TEST_CASE("position observation is exact at zero noise and unbiased otherwise") {
    const channel::UserGeometry g{3.0, -4.0};
    RngStream rng(42);
    const auto z = channel::observe_position(g, 0.0, rng);
    CHECK(z.x_hat == g.x);
    CHECK(z.y_hat == g.y);
    CHECK(z.distance() == g.distance());

    const double sigma_ob2 = 6.25;
    oracle::RunningStat err;
    RngStream noisy(43);
    for (int t = 0; t < 1'000'000; ++t) {
        const auto obs = channel::observe_position(g, sigma_ob2, noisy);
        err.add(obs.x_hat - g.x);
        err.add(obs.y_hat - g.y);
    }
    const double var = err.sum_sq / 2e6 - err.mean() * err.mean();
    CHECK(std::fabs(var - sigma_ob2) < 0.01 * sigma_ob2);
    CHECK(std::fabs(err.mean()) < 5.0 * std::sqrt(sigma_ob2 / 2e6));
}

TEST_CASE("squared estimated range follows the noncentral chi-square law") {
    const channel::UserGeometry g{3.0, 3.0};
    const double sigma_ob2 = 9.0;
    const double nc = channel::noncentrality_param(g);
    RngStream rng(2024);
    std::vector<double> draws;
    draws.reserve(100'000);
    for (int t = 0; t < 100'000; ++t) {
        draws.push_back(channel::observe_position(g, sigma_ob2, rng).squared_distance());
    }
    const double d = oracle::ks_statistic(
        draws, [&](double x) { return specfun::noncentral_chisq2_cdf(x, nc, sigma_ob2); });
    CHECK(d < oracle::ks_critical_001(draws.size()));
}

TEST_CASE("fading draws have unit mean and the documented order statistics") {
    RngStream rng(11);
    oracle::RunningStat h;
    for (int t = 0; t < 1'000'000; ++t) h.add(channel::sample_fading(rng));
    CHECK(std::fabs(h.mean() - 1.0) < 0.005);

    // Pr{h1 d1^-a > h2 d2^-a} = D/(D+1) with D = (d2/d1)^a.
    const double d1 = 4.0;
    const double d2 = 9.0;
    const double alpha = 3.0;
    const double big_d = std::pow(d2 / d1, alpha);
    const double g1 = std::pow(d1, -alpha);
    const double g2 = std::pow(d2, -alpha);
    RngStream pair_rng(12);
    std::uint64_t hits = 0;
    const int n = 1'000'000;
    for (int t = 0; t < n; ++t) {
        const double a = channel::sample_fading(pair_rng) * g1;
        const double b = channel::sample_fading(pair_rng) * g2;
        if (a > b) ++hits;
    }
    const double p = static_cast<double>(hits) / n;
    const double target = big_d / (big_d + 1.0);
    CHECK(std::fabs(p - target) <= 3.0 * oracle::binomial_se(target, n));

    RngStream r1(77);
    RngStream r2(77);
    for (int t = 0; t < 64; ++t) CHECK(channel::sample_fading(r1) == channel::sample_fading(r2));
}

TEST_CASE("channel gain has mean d^-alpha") {
    const double d = 6.0;
    const double alpha = 2.7;
    const double gain = std::pow(d, -alpha);
    RngStream rng(5);
    oracle::RunningStat g;
    for (int t = 0; t < 1'000'000; ++t) g.add(channel::sample_fading(rng) * gain);
    CHECK(std::fabs(g.mean() - gain) < 0.01 * gain);
}

TEST_CASE("transmit SNR conversions") {
    CHECK(channel::snr_of(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(channel::snr_of(20.0, -50.0) == doctest::Approx(1e7).epsilon(1e-12));
    CHECK(channel::snr_of(15.0, -50.0) == doctest::Approx(3.1623e6).epsilon(1e-4));
    CHECK(channel::dbm_to_linear(30.0) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(channel::path_loss_rate(3.0, 2.0) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("distance ordering is rotation invariant and exact under zero noise") {
    const channel::UserGeometry u1{3.0, 3.0};
    const channel::UserGeometry u2{7.0, 7.0};
    for (const double theta : {0.3, 1.2, 2.9, 4.4}) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const channel::UserGeometry r1{c * u1.x - s * u1.y, s * u1.x + c * u1.y};
        const channel::UserGeometry r2{c * u2.x - s * u2.y, s * u2.x + c * u2.y};
        CHECK(r1.distance() == doctest::Approx(u1.distance()).epsilon(1e-12));
        CHECK(r2.distance() == doctest::Approx(u2.distance()).epsilon(1e-12));
        CHECK((r1.distance() < r2.distance()) == (u1.distance() < u2.distance()));
    }

    RngStream rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto z1 = channel::observe_position(u1, 0.0, rng);
        const auto z2 = channel::observe_position(u2, 0.0, rng);
        CHECK(z1.distance() < z2.distance());
    }
}
