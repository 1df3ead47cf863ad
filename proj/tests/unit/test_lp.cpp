#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <random>

#include "ramprisk/errors.hpp"
#include "ramprisk/lp.hpp"
#include "support/oracles.hpp"

using namespace ramprisk;
using namespace ramprisk::lp;
using Catch::Approx;

namespace {

Constraint row(std::vector<double> a, Relation rel, double rhs) { return {std::move(a), rel, rhs}; }

}  // namespace

TEST_CASE("simplex: small hand-checkable programs", "[lp]") {
    SECTION("max x s.t. x <= 1") {
        LinearProgram p(1);
        p.set_objective({1});
        p.add_constraint(row({1}, Relation::less_equal, 1));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective_value == Approx(1.0));
    }
    SECTION("max x + y s.t. x + y <= 1") {
        LinearProgram p(2);
        p.set_objective({1, 1});
        p.add_constraint(row({1, 1}, Relation::less_equal, 1));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective_value == Approx(1.0));
    }
    SECTION("max -x s.t. x >= 3") {
        LinearProgram p(1);
        p.set_objective({-1});
        p.add_constraint(row({1}, Relation::greater_equal, 3));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective_value == Approx(-3.0));
        CHECK(s.variable_values[0] == Approx(3.0));
    }
    SECTION("textbook: max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18") {
        LinearProgram p(2);
        p.set_objective({3, 5});
        p.add_constraint(row({1, 0}, Relation::less_equal, 4));
        p.add_constraint(row({0, 2}, Relation::less_equal, 12));
        p.add_constraint(row({3, 2}, Relation::less_equal, 18));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective_value == Approx(36.0));
        CHECK(s.variable_values[0] == Approx(2.0));
        CHECK(s.variable_values[1] == Approx(6.0));
    }
    SECTION("covering rows: min x + y, x + 2y >= 4, 3x + y >= 6") {
        LinearProgram p(2);
        p.set_objective({-1, -1});
        p.add_constraint(row({1, 2}, Relation::greater_equal, 4));
        p.add_constraint(row({3, 1}, Relation::greater_equal, 6));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective_value == Approx(-14.0 / 5.0));
        CHECK(s.variable_values[0] == Approx(8.0 / 5.0));
        CHECK(s.variable_values[1] == Approx(6.0 / 5.0));
    }
    SECTION("equality row with a free variable") {
        // max x - y, x + y = 2, x free, -1 <= y <= 5
        LinearProgram p(2);
        p.set_objective({1, -1});
        p.set_bounds(0, {-kInf, kInf});
        p.set_bounds(1, {-1, 5});
        p.add_constraint(row({1, 1}, Relation::equal, 2));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.objective_value == Approx(4.0));
        CHECK(s.variable_values[0] == Approx(3.0));
        CHECK(s.variable_values[1] == Approx(-1.0));
    }
    SECTION("upper-bounded variable with no lower bound") {
        // max -x with x <= -2 and x >= -10  ->  x = -10
        LinearProgram p(1);
        p.set_objective({-1});
        p.set_bounds(0, {-kInf, -2});
        p.add_constraint(row({1}, Relation::greater_equal, -10));
        const auto s = solve(p);
        REQUIRE(s.status == Status::optimal);
        CHECK(s.variable_values[0] == Approx(-10.0));
    }
}

TEST_CASE("simplex: infeasible and unbounded programs", "[lp]") {
    LinearProgram infeasible(1);
    infeasible.set_objective({1});
    infeasible.add_constraint(row({1}, Relation::less_equal, 1));
    infeasible.add_constraint(row({1}, Relation::greater_equal, 2));
    CHECK(solve(infeasible).status == Status::infeasible);

    LinearProgram crossed(1);
    crossed.set_bounds(0, {3, 2});
    CHECK(solve(crossed).status == Status::infeasible);

    LinearProgram unbounded(2);
    unbounded.set_objective({1, 0});
    unbounded.add_constraint(row({0, 1}, Relation::less_equal, 1));
    CHECK(solve(unbounded).status == Status::unbounded);
}

TEST_CASE("simplex: malformed programs are rejected", "[lp]") {
    LinearProgram p(2);
    CHECK_THROWS_AS(p.add_constraint(row({1}, Relation::less_equal, 1)), InvalidArgument);
    CHECK_THROWS_AS(p.add_constraint(row({1, std::nan("")}, Relation::less_equal, 1)), InvalidArgument);
    CHECK_THROWS_AS(p.set_objective({1}), InvalidArgument);
    CHECK_THROWS_AS(p.set_bounds(5, {}), InvalidArgument);
}

TEST_CASE("build_dual_lp: structure", "[lp]") {
    const auto one = build_dual_lp(MarginVector({2}), 0.1, 1.0);
    CHECK(one.num_variables() == 3);
    CHECK(one.num_constraints() == 3);
    CHECK(one.bounds()[0].lower == -kInf);  // beta is free
    CHECK(one.bounds()[1].lower == 0.0);    // gamma >= 0
    CHECK(one.bounds()[2].lower == 0.0);    // tau >= 0
    CHECK(one.objective() == std::vector<double>{1.0, -0.1, 0.0});

    CHECK_THROWS_AS(build_dual_lp(MarginVector({1}), -1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_dual_lp(MarginVector({1}), 0.1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(build_dual_lp(MarginVector(std::vector<double>(kMaxDualSamples + 1, 0.0)), 0.1, 1.0),
                    InvalidArgument);
}

TEST_CASE("build_dual_lp: worked instances", "[lp]") {
    const MarginVector g({2, 1, -1});
    CHECK(solve(build_dual_lp(g, 0.1, 1.0)).objective_value == Approx(17.0 / 30.0).margin(1e-12));
    CHECK(solve(build_dual_lp(g, 0.0, 1.0)).objective_value == Approx(2.0 / 3.0).margin(1e-12));
    const auto packaged = solve_worst_case_lp(g, 0.1, 1.0);
    CHECK(packaged.value == Approx(17.0 / 30.0).margin(1e-12));
    CHECK_FALSE(packaged.active_breakpoint.has_value());
}

TEST_CASE("dual LP solutions: feasibility, objective recomputation, determinism", "[lp]") {
    std::mt19937_64 rng(303);
    for (int i = 0; i < 150; ++i) {
        const auto inst = testing::random_dual_instance(rng);
        const auto program = build_dual_lp(MarginVector(inst.margins), inst.radius, inst.scale);
        const auto s = solve(program);
        REQUIRE(s.status == Status::optimal);
        REQUIRE(max_violation(program, s.variable_values) <= 1e-9);

        double recomputed = 0.0;
        for (std::size_t j = 0; j < program.num_variables(); ++j) {
            recomputed += program.objective()[j] * s.variable_values[j];
        }
        REQUIRE(s.objective_value == Approx(recomputed).margin(1e-9));

        const auto again = solve(program);
        REQUIRE(std::memcmp(&again.objective_value, &s.objective_value, sizeof(double)) == 0);
        REQUIRE(again.variable_values == s.variable_values);
    }
}

TEST_CASE("dual LP agrees with the closed form and with enumeration", "[lp]") {
    std::mt19937_64 rng(304);
    for (int i = 0; i < 300; ++i) {
        const auto inst = testing::random_dual_instance(rng);
        const MarginVector m(inst.margins);
        const double via_lp = solve_worst_case_lp(m, inst.radius, inst.scale).value;
        REQUIRE(via_lp == Approx(solve_worst_case(m, inst.radius, inst.scale).value).margin(1e-8));
        REQUIRE(via_lp == Approx(testing::enumerate_dual(inst.margins, inst.radius, inst.scale)).margin(1e-8));
    }
}
