#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "ramprisk/errors.hpp"
#include "ramprisk/estimator.hpp"
#include "support/oracles.hpp"

using namespace ramprisk;
using Catch::Approx;

namespace {

const SampleSet kThreePairs({{2, -1}, {0, 0}, {-3, 1}});

std::vector<double> values(const MarginVector& m) { return {m.values().begin(), m.values().end()}; }

}  // namespace

TEST_CASE("ramp_margins", "[estimator]") {
    const SampleSet one({{1, 0}});
    CHECK(values(ramp_margins(one, Direction::down, 3)) == std::vector<double>{2});
    CHECK(values(ramp_margins(one, Direction::up, 3)) == std::vector<double>{4});
    CHECK(values(ramp_margins(kThreePairs, Direction::down, 1)) == std::vector<double>{-2, 1, 5});
    CHECK_THROWS_AS(ramp_margins(SampleSet{}, Direction::down, 1), EmptyInput);
}

TEST_CASE("dual_norm_scale", "[estimator]") {
    CHECK(dual_norm_scale(1.0) == 1.0);
    CHECK(dual_norm_scale(std::numeric_limits<double>::infinity()) == 2.0);
    CHECK(dual_norm_scale(2.0) == Approx(std::sqrt(2.0)).epsilon(1e-14));
    // ||(1,-1)||_q computed directly for q = 3 (p = 1.5)
    CHECK(dual_norm_scale(1.5) == Approx(std::cbrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(dual_norm_scale(0.99), InvalidArgument);
}

TEST_CASE("radius_from_confidence", "[estimator]") {
    CHECK(radius_from_confidence(0.9, 200) == Approx(std::log(10.0) / 200.0).epsilon(1e-13));
    const double r90 = radius_from_confidence(0.9, 200);
    CHECK(radius_from_confidence(0.99, 200) / r90 == Approx(2.0).epsilon(1e-12));
    CHECK(radius_from_confidence(0.999, 200) / r90 == Approx(3.0).epsilon(1e-12));
    CHECK(radius_from_confidence(1e-300, 7) < 1e-299);
    CHECK(radius_from_confidence(0.9, 400) < radius_from_confidence(0.9, 200));

    CHECK_THROWS_AS(radius_from_confidence(0.0, 10), InvalidArgument);
    CHECK_THROWS_AS(radius_from_confidence(1.0, 10), InvalidArgument);
    CHECK_THROWS_AS(radius_from_confidence(std::nan(""), 10), InvalidArgument);
    CHECK_THROWS_AS(radius_from_confidence(0.9, 0), InvalidArgument);
}

TEST_CASE("solve_worst_case: worked instances", "[estimator]") {
    SECTION("all samples are ramps") {
        const auto s = solve_worst_case(MarginVector({-1, -5}), 0.1, 1.0);
        CHECK(s.value == 0.0);
        CHECK(s.gamma_star == 0.0);
        CHECK_FALSE(s.active_breakpoint.has_value());
    }
    SECTION("zero radius gives the positive-margin fraction") {
        const auto s = solve_worst_case(MarginVector({2, 1, -1}), 0.0, 1.0);
        CHECK(s.value == Approx(2.0 / 3.0).epsilon(1e-15));
    }
    SECTION("radius 0.1") {
        const std::vector<double> g = {2, 1, -1};
        const auto s = solve_worst_case(MarginVector(g), 0.1, 1.0);
        CHECK(s.value == Approx(17.0 / 30.0).epsilon(1e-14));
        CHECK(s.gamma_star == 1.0);
        CHECK(s.active_breakpoint == 1u);
        // dense gamma grid on [0, 10], step 1e-5
        CHECK(testing::grid_dual(g, 0.1, 1.0, 10.0, 1e-5) == Approx(17.0 / 30.0).margin(1e-10));
    }
}

TEST_CASE("solve_worst_case: reports the smallest maximizer on a flat top", "[estimator]") {
    // objective min(1, gamma) - gamma is 0 on [0, 1]
    const auto flat = solve_worst_case(MarginVector({1}), 1.0, 1.0);
    CHECK(flat.value == 0.0);
    CHECK(flat.gamma_star == 0.0);

    // (1/2)[min(1, 2g) + min(1, g)] - 0.5 g: slope 1 on [0, .5], 0 on [.5, 1]
    const auto plateau = solve_worst_case(MarginVector({2, 1}), 0.5, 1.0);
    CHECK(plateau.gamma_star == 0.5);
    CHECK(plateau.value == Approx(0.5));
}

TEST_CASE("solve_worst_case: argument errors", "[estimator]") {
    CHECK_THROWS_AS(solve_worst_case(MarginVector({1}), -0.1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_worst_case(MarginVector({1}), 0.1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(solve_worst_case(MarginVector({1}), 0.1, -1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_worst_case(MarginVector(std::vector<double>{}), 0.1, 1.0), EmptyInput);
    CHECK_THROWS_AS(MarginVector({std::nan("")}), InvalidArgument);
}

TEST_CASE("solve_worst_case matches breakpoint enumeration", "[estimator]") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto inst = testing::random_dual_instance(rng);
        const auto s = solve_worst_case(MarginVector(inst.margins), inst.radius, inst.scale);
        const double oracle = testing::enumerate_dual(inst.margins, inst.radius, inst.scale);
        REQUIRE(s.value == Approx(oracle).margin(1e-12));
        REQUIRE(testing::objective_at(inst.margins, inst.radius, inst.scale, s.gamma_star) ==
                Approx(oracle).margin(1e-12));
    }
}

TEST_CASE("estimate: worked instances", "[estimator]") {
    SECTION("no historical ramp and no budget") {
        const SampleSet zeros(std::vector<ErrorPair>(10, ErrorPair(0, 0)));
        const auto r = estimate(zeros, RampQuery(Direction::down, 100), WassersteinConfig::with_radius(1, 0));
        CHECK(r.ramp_probability == 0.0);
        CHECK(r.inner_value == 1.0);
    }
    SECTION("three-pair instance on both solver paths") {
        const auto config = WassersteinConfig::with_radius(1, 0.1);
        const RampQuery q(Direction::down, 1);
        const auto closed = estimate(kThreePairs, q, config);
        const auto lp = estimate(kThreePairs, q, config, {SolverPath::lp_oracle});
        CHECK(closed.ramp_probability == Approx(13.0 / 30.0).margin(1e-10));
        CHECK(lp.ramp_probability == Approx(13.0 / 30.0).margin(1e-10));
        CHECK(closed.solver == SolverPath::closed_form);
        CHECK(lp.solver == SolverPath::lp_oracle);
        CHECK(closed.gamma_star == 1.0);
        CHECK(lp.gamma_star == Approx(1.0).margin(1e-9));
        CHECK(closed.radius_used == 0.1);
        CHECK(closed.ramp_probability == 1.0 - closed.inner_value);
    }
    SECTION("p = 2 rescales the radius by sqrt(2)") {
        const auto r2 = estimate(kThreePairs, RampQuery(Direction::down, 1), WassersteinConfig::with_radius(2, 0.1));
        const auto direct = solve_worst_case(MarginVector({-2, 1, 5}), 0.1 * std::sqrt(2.0), 1.0);
        CHECK(r2.inner_value == Approx(direct.value).margin(1e-14));
    }
    SECTION("confidence-derived radius uses the configured sample count") {
        const auto c = WassersteinConfig::with_confidence(1, 0.99, 3);
        CHECK(estimate(kThreePairs, RampQuery(Direction::up, 0), c).radius_used == c.radius());
    }
}

TEST_CASE("estimate at zero radius equals ERP", "[estimator]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> thr(-120.0, 120.0);
    for (int i = 0; i < 300; ++i) {
        const SampleSet s = testing::random_samples(rng);
        const RampQuery q(i % 2 ? Direction::up : Direction::down, thr(rng));
        const auto r = estimate(s, q, WassersteinConfig::with_radius(1.0, 0.0));
        REQUIRE(r.ramp_probability == Approx(erp(s, q)).margin(1e-12));
    }
}

TEST_CASE("erp", "[estimator]") {
    CHECK(erp(kThreePairs, RampQuery(Direction::down, 1)) == Approx(1.0 / 3.0));
    CHECK(erp(kThreePairs, RampQuery(Direction::down, -100)) == 1.0);
    const SampleSet zeros(std::vector<ErrorPair>(5, ErrorPair(0, 0)));
    CHECK(erp(zeros, RampQuery(Direction::down, 0)) == 1.0);
    CHECK(erp(zeros, RampQuery(Direction::down, 1e-12)) == 0.0);
    CHECK_THROWS_AS(erp(SampleSet{}, RampQuery(Direction::down, 0)), EmptyInput);
}

TEST_CASE("sweep", "[estimator]") {
    const auto zero = WassersteinConfig::with_radius(1, 0);
    SECTION("no ramps anywhere") {
        const SampleSet flat(std::vector<ErrorPair>(4, ErrorPair(0, 0)));
        const std::vector<double> grid = {10, 20};
        const auto c = sweep(flat, Direction::down, grid, zero);
        CHECK(c.ramp_probabilities == std::vector<double>{0, 0});
        CHECK(c.density == std::vector<double>{0, 0});
    }
    SECTION("empirical curve at zero radius") {
        const std::vector<double> grid = {1, 4};
        const auto c = sweep(kThreePairs, Direction::down, grid, zero);
        CHECK(c.ramp_probabilities[0] == Approx(1.0 / 3.0));
        CHECK(c.ramp_probabilities[1] == 0.0);
        CHECK(c.density[0] == Approx(1.0 / 9.0));
        CHECK(c.density[1] == c.density[0]);
    }
    SECTION("grid validation") {
        const std::vector<double> one = {1};
        const std::vector<double> flat = {1, 1};
        const std::vector<double> down = {2, 1};
        CHECK_THROWS_AS(sweep(kThreePairs, Direction::down, one, zero), InvalidArgument);
        CHECK_THROWS_AS(sweep(kThreePairs, Direction::down, flat, zero), InvalidArgument);
        CHECK_THROWS_AS(sweep(kThreePairs, Direction::down, down, zero), InvalidArgument);
    }
}

TEST_CASE("degenerate inputs are well defined", "[estimator]") {
    const SampleSet single({{5, 0}});
    const auto config = WassersteinConfig::with_radius(1, 0.5);
    // threshold far above the data: one positive margin g = 995
    const auto far = estimate(single, RampQuery(Direction::down, 1000), config);
    CHECK(far.ramp_probability == Approx(0.5 / 995.0));
    // threshold below the data: every pair already ramps
    CHECK(estimate(single, RampQuery(Direction::down, -1000), config).ramp_probability == 1.0);
}
