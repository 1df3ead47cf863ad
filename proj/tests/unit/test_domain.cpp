#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "ramprisk/domain.hpp"
#include "ramprisk/errors.hpp"

using namespace ramprisk;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("threshold_to_error_space: worked values", "[domain]") {
    CHECK(threshold_to_error_space(300, 1065, 1065, Direction::down) == 300.0);
    CHECK(threshold_to_error_space(0, 0, 0, Direction::down) == 0.0);
    CHECK(threshold_to_error_space(200, 1062, 1068, Direction::up) == 194.0);
    CHECK(threshold_to_error_space(200, 1062, 1068, Direction::down) == 206.0);
}

TEST_CASE("threshold_to_error_space: rejects non-finite input", "[domain]") {
    CHECK_THROWS_AS(threshold_to_error_space(kNaN, 0, 0, Direction::down), InvalidArgument);
    CHECK_THROWS_AS(threshold_to_error_space(0, kInf, 0, Direction::up), InvalidArgument);
    CHECK_THROWS_AS(threshold_to_error_space(0, 0, -kInf, Direction::down), InvalidArgument);
}

TEST_CASE("threshold_to_error_space: down(R, a, b) == up(R, b, a)", "[domain][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2000.0, 2000.0);
    for (int i = 0; i < 500; ++i) {
        const double r = u(rng), a = u(rng), b = u(rng);
        REQUIRE(threshold_to_error_space(r, a, b, Direction::down) ==
                threshold_to_error_space(r, b, a, Direction::up));
    }
}

TEST_CASE("ErrorPair and RampQuery reject non-finite values", "[domain]") {
    CHECK_THROWS_AS(ErrorPair(kNaN, 0.0), InvalidArgument);
    CHECK_THROWS_AS(ErrorPair(0.0, kInf), InvalidArgument);
    CHECK_NOTHROW(ErrorPair(-1e9, 1e9));
    CHECK_THROWS_AS(RampQuery(Direction::down, kNaN), InvalidArgument);
}

TEST_CASE("RampQuery::from_power_space records its origin", "[domain]") {
    const auto q = RampQuery::from_power_space(Direction::up, 200, 1062, 1068);
    CHECK(q.threshold() == 194.0);
    REQUIRE(q.origin().has_value());
    CHECK(q.origin()->ramp_mw == 200.0);
    CHECK(q.origin()->forecast2_mw == 1068.0);
    CHECK_FALSE(RampQuery(Direction::down, 3.0).origin().has_value());
}

TEST_CASE("WassersteinConfig: dual exponent and validation", "[domain]") {
    CHECK(std::isinf(WassersteinConfig::with_radius(1.0, 0.1).q()));
    CHECK(WassersteinConfig::with_radius(kInf, 0.1).q() == 1.0);
    CHECK(WassersteinConfig::with_radius(2.0, 0.1).q() == 2.0);
    CHECK(WassersteinConfig::with_radius(3.0, 0.1).q() == Catch::Approx(1.5));

    CHECK_THROWS_AS(WassersteinConfig::with_radius(0.5, 0.1), InvalidArgument);
    CHECK_THROWS_AS(WassersteinConfig::with_radius(kNaN, 0.1), InvalidArgument);
    CHECK_THROWS_AS(WassersteinConfig::with_radius(1.0, -0.1), InvalidArgument);
    CHECK_THROWS_AS(WassersteinConfig::with_radius(1.0, kInf), InvalidArgument);

    const auto c = WassersteinConfig::with_confidence(1.0, 0.9, 200);
    CHECK(c.radius_source() == WassersteinConfig::RadiusSource::from_confidence);
    CHECK(c.radius() == Catch::Approx(0.01151292546497023).epsilon(1e-14));
    CHECK(c.alpha() == 0.9);
    CHECK(c.sample_count() == 200u);
    CHECK_FALSE(WassersteinConfig::with_radius(1.0, 0.0).alpha().has_value());
}

TEST_CASE("SampleSet keeps ingestion order and slices prefixes", "[domain]") {
    const SampleSet s({{1, 2}, {3, 4}, {5, 6}}, "test");
    CHECK(s.size() == 3);
    const SampleSet head = s.prefix(2);
    REQUIRE(head.size() == 2);
    CHECK(head[0] == ErrorPair(1, 2));
    CHECK(head[1] == ErrorPair(3, 4));
    CHECK(s.prefix(3) == s);
    CHECK(s.prefix(0).empty());
    CHECK_THROWS_AS(s.prefix(4), InvalidArgument);
}

TEST_CASE("Direction parsing", "[domain]") {
    CHECK(parse_direction("down") == Direction::down);
    CHECK(parse_direction("up") == Direction::up);
    CHECK(to_string(Direction::up) == "up");
    CHECK_THROWS_AS(parse_direction("sideways"), InvalidArgument);
}
