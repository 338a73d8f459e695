#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "coalsec/channel.hpp"

using namespace coalsec;

namespace {

SimConfig reference_config() {
    SimConfig cfg;  // defaults already mirror the reference setup
    return cfg;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Independent root-finder for the exchange-power boundary: the distance at
// which nu0*sigma2*d^mu equals the slot budget, solved by bisection instead
// of the closed form.
double exchange_boundary_by_bisection(const SimConfig& cfg) {
    auto exchange_power_at = [&](double d) {
        return cfg.exchange_snr * cfg.noise_power * std::pow(d, cfg.pathloss_exp);
    };
    double lo = 1e-6, hi = 1e9;
    REQUIRE(exchange_power_at(lo) < cfg.slot_power);
    REQUIRE(exchange_power_at(hi) > cfg.slot_power);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (exchange_power_at(mid) < cfg.slot_power)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("channel_gain basic values") {
    Point origin{0, 0};
    // unit distance, zero phase
    Complex g1 = channel_gain(origin, Point{1, 0}, 3.0, 0.0);
    CHECK(g1.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g1.imag() == doctest::Approx(0.0).epsilon(1e-12));

    // d=100, mu=2, phase pi: d^-1 = 0.01 with flipped sign
    Complex g2 = channel_gain(origin, Point{100, 0}, 2.0, M_PI);
    CHECK(g2.real() == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(std::abs(g2.imag()) < 1e-14);

    // d=1000, mu=3, phase pi/2: magnitude 10^-4.5, purely imaginary
    Complex g3 = channel_gain(origin, Point{0, 1000}, 3.0, M_PI / 2.0);
    CHECK(std::abs(g3) == doctest::Approx(std::pow(10.0, -4.5)).epsilon(1e-12));
    CHECK(std::abs(g3.real()) < 1e-18);
}

TEST_CASE("channel_gain rejects coincident nodes") {
    CHECK_THROWS_AS(channel_gain(Point{5, 5}, Point{5, 5}, 3.0, 0.0), std::invalid_argument);
}

TEST_CASE("channel_gain magnitude depends only on distance") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
    Point a{12.0, -3.0}, b{140.0, 96.0};
    double d = distance(a, b);
    for (int i = 0; i < 50; ++i) {
        Complex g = channel_gain(a, b, 3.0, phase(rng));
        CHECK(std::abs(g) == doctest::Approx(std::pow(d, -1.5)).epsilon(1e-12));
    }
}

TEST_CASE("max_exchange_distance reference parameters give 1 km") {
    SimConfig cfg = reference_config();
    CHECK(rel_err(max_exchange_distance(cfg), 1000.0) < 1e-9);
}

TEST_CASE("max_exchange_distance when budget equals exchange floor") {
    SimConfig cfg = reference_config();
    cfg.slot_power = cfg.exchange_snr * cfg.noise_power;
    CHECK(max_exchange_distance(cfg) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("max_exchange_distance closed form matches bisection oracle") {
    SimConfig cfg = reference_config();
    cfg.pathloss_exp = 2.0;
    double oracle = exchange_boundary_by_bisection(cfg);
    double expected = std::pow(10.0, 4.5);  // frozen from the oracle
    CHECK(rel_err(oracle, expected) < 1e-9);
    CHECK(rel_err(max_exchange_distance(cfg), expected) < 1e-9);
}

TEST_CASE("exchange power at the discovery boundary equals the slot budget") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        SimConfig cfg = reference_config();
        cfg.slot_power = 0.01 * u(rng);
        cfg.noise_power = 1e-12 * u(rng);
        cfg.exchange_snr = u(rng);
        cfg.pathloss_exp = 2.0 + 2.0 * (u(rng) / 10.0);
        double d = max_exchange_distance(cfg);
        double power = cfg.exchange_snr * cfg.noise_power * std::pow(d, cfg.pathloss_exp);
        CHECK(rel_err(power, cfg.slot_power) < 1e-9);
    }
}

TEST_CASE("max_exchange_distance monotonicity") {
    SimConfig cfg = reference_config();
    double base = max_exchange_distance(cfg);

    SimConfig more_power = cfg;
    more_power.slot_power *= 2.0;
    CHECK(max_exchange_distance(more_power) > base);

    SimConfig more_snr = cfg;
    more_snr.exchange_snr *= 2.0;
    CHECK(max_exchange_distance(more_snr) < base);

    SimConfig more_noise = cfg;
    more_noise.noise_power *= 2.0;
    CHECK(max_exchange_distance(more_noise) < base);
}

TEST_CASE("build_channel_state tabulates expected magnitudes") {
    SimConfig cfg = reference_config();
    cfg.n_users = 2;
    cfg.n_destinations = 1;
    cfg.n_eavesdroppers = 2;
    Deployment dep;
    dep.user_pos = {Point{0, 0}, Point{500, 0}};
    dep.dest_pos = {Point{1000, 0}};
    dep.eve_pos = {Point{0, 700}, Point{900, 900}};
    dep.assignment = {0, 0};

    std::mt19937_64 rng(3);
    ChannelState ch = build_channel_state(dep, cfg, rng);
    CHECK(std::abs(ch.h(0, 0)) == doctest::Approx(std::pow(10.0, -4.5)).epsilon(1e-12));
    CHECK(ch.q(0, 1) == doctest::Approx(8e-9).epsilon(1e-12));
    CHECK(ch.q(1, 0) == ch.q(0, 1));
    CHECK(ch.user_dist(0, 1) == doctest::Approx(500.0));
}

TEST_CASE("build_channel_state is deterministic per seed") {
    SimConfig cfg = reference_config();
    cfg.n_users = 4;
    Deployment dep;
    dep.user_pos = {Point{10, 10}, Point{600, 40}, Point{90, 800}, Point{1200, 1500}};
    dep.dest_pos = {Point{300, 300}, Point{2000, 2000}};
    dep.eve_pos = {Point{50, 1000}, Point{1500, 200}};
    dep.assignment = nearest_destination_assignment(dep.user_pos, dep.dest_pos);

    std::mt19937_64 rng_a(42), rng_b(42);
    ChannelState a = build_channel_state(dep, cfg, rng_a);
    ChannelState b = build_channel_state(dep, cfg, rng_b);
    CHECK(a.h == b.h);
    CHECK(a.g == b.g);
    CHECK(a.phase_h == b.phase_h);
    CHECK(a.phase_g == b.phase_g);
}

TEST_CASE("build_channel_state rejects coincident interacting nodes") {
    SimConfig cfg = reference_config();
    cfg.n_users = 1;
    cfg.n_destinations = 1;
    Deployment dep;
    dep.user_pos = {Point{100, 100}};
    dep.dest_pos = {Point{100, 100}};
    dep.eve_pos = {Point{5, 5}, Point{9, 9}};
    dep.assignment = {0};
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(build_channel_state(dep, cfg, rng), std::invalid_argument);

    dep.dest_pos = {Point{200, 200}};
    dep.eve_pos = {Point{100, 100}, Point{9, 9}};
    std::mt19937_64 rng2(1);
    CHECK_THROWS_AS(build_channel_state(dep, cfg, rng2), std::invalid_argument);
}

TEST_CASE("nearest destination assignment breaks ties by lowest index") {
    std::vector<Point> users = {Point{0, 0}};
    std::vector<Point> dests = {Point{10, 0}, Point{-10, 0}};
    auto a = nearest_destination_assignment(users, dests);
    CHECK(a[0] == 0);
}
