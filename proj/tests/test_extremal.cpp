#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hardylab/extremal.hpp"

using namespace hardylab;

namespace {
const double kE = std::exp(1.0);
}

TEST_CASE("singleton family reproduces the verifier's constant exactly") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, false);
    // pin every parameter: lo == hi
    fam.lo = {1.0, 0.3};
    fam.hi = {1.0, 0.3};
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    ExtremalResult r = maximize_ratio(fam, obj, 100, 3, 7);
    const double direct = obj.eval(fam.make({1.0, 0.3}), true);
    CHECK(r.best_ratio == doctest::Approx(direct).epsilon(1e-12));
    CHECK(r.restart_dispersion == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("monotone best-so-far trace") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, false);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    ExtremalResult r = maximize_ratio(fam, obj, 150, 3, 11);
    REQUIRE(!r.best_trace.empty());
    CHECK(std::is_sorted(r.best_trace.begin(), r.best_trace.end()));
}

TEST_CASE("recomputation of the incumbent matches the stored ratio") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, true);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    ExtremalResult r = maximize_ratio(fam, obj, 200, 3, 5);
    const double recomputed = obj.eval(fam.make(r.best_params), true);
    CHECK(std::fabs(recomputed - r.best_ratio) <= 1e-9 * std::fabs(r.best_ratio));
}

TEST_CASE("objective is amplitude scale invariant at 1e-9") {
    Domain omega = Domain::interval(1.0);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    const double r1 = obj.eval(TestFunction::smooth_bump(0.8, 0.3, 1.0));
    const double r2 = obj.eval(TestFunction::smooth_bump(0.8, 0.3, 4.0));
    const double r3 = obj.eval(TestFunction::smooth_bump(0.8, 0.3, -0.25));
    CHECK(std::fabs(r1 - r2) <= 1e-9 * r1);
    CHECK(std::fabs(r1 - r3) <= 1e-9 * r1);
}

TEST_CASE("fixed vs free amplitude searches agree") {
    Domain omega = Domain::interval(1.0);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    ParametricFamily fixed = ParametricFamily::bump_mixture(1, omega, false);
    ParametricFamily free = ParametricFamily::bump_mixture(1, omega, true);
    ExtremalResult rf = maximize_ratio(fixed, obj, 500, 4, 21);
    ExtremalResult rv = maximize_ratio(free, obj, 500, 4, 21);
    CHECK(std::fabs(rf.best_ratio - rv.best_ratio) <= 1e-9 * rf.best_ratio);
}

TEST_CASE("restart dispersion is small for the 1-bump family") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, false);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    ExtremalResult r = maximize_ratio(fam, obj, 500, 5, 42);
    CHECK(r.restart_dispersion < 0.10);
    CHECK(r.evaluations >= 5 * 500);
}

TEST_CASE("growth profile: ratios over 2^m bounded across m") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, false);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    auto rows = constant_growth_profile(fam, obj, 2, 4, 150, 3, 9);
    REQUIRE(rows.size() == 3);
    // m = 2 row reproduces maximize_ratio at m = 2 (same seed/budget)
    ExtremalResult direct = maximize_ratio(fam, obj, 150, 3, 9);
    CHECK(rows[0].best_ratio == doctest::Approx(direct.best_ratio).epsilon(1e-12));
    for (const auto& row : rows) {
        CHECK(std::isfinite(row.best_ratio));
        CHECK(row.ratio_over_2m == doctest::Approx(row.best_ratio / std::ldexp(1.0, row.m)));
    }
}

TEST_CASE("degenerate family raises") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::spline_profile(2, omega);
    fam.lo = {0.0, 0.0};
    fam.hi = {0.0, 0.0}; // all-zero splines only
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    CHECK_THROWS_AS(maximize_ratio(fam, obj, 100, 3, 1), EstimatorError);
}

TEST_CASE("preconditions") {
    Domain omega = Domain::interval(1.0);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, false);
    ExtremalObjective obj{ExtremalObjective::Kind::Main, 2, kE, 0.5, omega};
    CHECK_THROWS_AS(maximize_ratio(fam, obj, 50, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(maximize_ratio(fam, obj, 100, 2, 1), std::invalid_argument);
}

TEST_CASE("intermediate objective works") {
    Domain omega = Domain::interval(0.5);
    ParametricFamily fam = ParametricFamily::bump_mixture(1, omega, false);
    ExtremalObjective obj{ExtremalObjective::Kind::Intermediate, 2, kE, 0.5, omega};
    ExtremalResult r = maximize_ratio(fam, obj, 120, 3, 3);
    CHECK(r.best_ratio > 0.0);
    CHECK(std::isfinite(r.best_ratio));
}
