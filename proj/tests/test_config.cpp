#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "coalsec/config.hpp"
#include "coalsec/format.hpp"

using namespace coalsec;

namespace {
SimConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config_stream(in);
}
}  // namespace

TEST_CASE("empty config yields the reference defaults") {
    SimConfig cfg = parse("");
    CHECK(cfg.n_users == 15);
    CHECK(cfg.n_destinations == 2);
    CHECK(cfg.n_eavesdroppers == 2);
    CHECK(cfg.area_side == 2500.0);
    CHECK(cfg.slot_power == 0.01);
    CHECK(cfg.noise_power == 1e-12);
    CHECK(cfg.exchange_snr == 10.0);
    CHECK(cfg.pathloss_exp == 3.0);
}

TEST_CASE("dBm and dB keys convert to linear units") {
    SimConfig cfg = parse("noise_dbm = -90\nexchange_snr_db = 10\n");
    CHECK(std::abs(cfg.noise_power - 1e-12) / 1e-12 < 1e-12);
    CHECK(std::abs(cfg.exchange_snr - 10.0) < 1e-12);
}

TEST_CASE("comments and blank lines are ignored") {
    SimConfig cfg = parse("# header\n\nn_users = 7  # trailing\n");
    CHECK(cfg.n_users == 7);
}

TEST_CASE("unknown keys are named in the error") {
    CHECK_THROWS_WITH_AS(parse("frobnicate = 1\n"), "unknown config key 'frobnicate'",
                         config_error);
}

TEST_CASE("non-positive values are rejected") {
    CHECK_THROWS_AS(parse("slot_power = 0\n"), config_error);
    CHECK_THROWS_AS(parse("area_side = -5\n"), config_error);
    CHECK_THROWS_AS(parse("pathloss_exp = 1.5\n"), config_error);
}

TEST_CASE("fewer than two eavesdroppers is rejected") {
    CHECK_THROWS_AS(parse("n_eavesdroppers = 1\n"), config_error);
}

TEST_CASE("malformed lines are rejected") {
    CHECK_THROWS_AS(parse("n_users 7\n"), config_error);
    CHECK_THROWS_AS(parse("n_users = seven\n"), config_error);
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.01, 1e-12, 2500.0, 0.1 + 0.2, 3.141592653589793, -1.5e-9}) {
        std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}
