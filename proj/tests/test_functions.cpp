#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "hardylab/functions.hpp"
#include "oracles.hpp"

using namespace hardylab;

TEST_CASE("average: linear") {
    TestFunction u = TestFunction::linear();
    CHECK(average(u, Region::interval(0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(average(u, Region::interval(0.0, 0.5)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(average(u, Region::interval(0.3, 0.3)), std::invalid_argument);
}

TEST_CASE("average: smooth bump vs refined oracle") {
    TestFunction u = TestFunction::smooth_bump(0.5, 0.3, 2.0);
    const double got = average(u, Region::interval(0.2, 0.8));
    const double oracle = test_oracles::simpson([&](double x) { return u.value(x); }, 0.2, 0.8, 40000) / 0.6;
    CHECK(got > 0.0);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("average invariant under zero-integral odd perturbation") {
    TestFunction u = TestFunction::linear();
    // odd pair of bumps about 0.5 integrates to zero on (0,1)
    TestFunction pert = TestFunction::bump_mixture({0.3, 0.7}, {0.1, 0.1}, {0.8, -0.8});
    const double a_u = average(u, Region::interval(0.0, 1.0));
    const double a_pert = average(pert, Region::interval(0.0, 1.0));
    CHECK(a_pert == doctest::Approx(0.0).epsilon(1e-10));
    // additivity of averages makes the perturbed average equal
    CHECK(a_u + a_pert == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("tv_seminorm: exact and derived cases") {
    Domain omega = Domain::interval(0.5); // (0,1)
    CHECK(tv_seminorm(TestFunction::linear(), omega) == doctest::Approx(1.0).epsilon(1e-9));

    Domain omega2 = Domain::interval(1.0); // (0,2)
    TestFunction st = TestFunction::step({0.0, 1.0, 2.0}, {0.0, 2.0});
    CHECK(tv_seminorm(st, omega2) == doctest::Approx(2.0));

    TestFunction bump = TestFunction::smooth_bump(0.5, 0.25, 1.7);
    CHECK(tv_seminorm(bump, omega) == doctest::Approx(2.0 * 1.7).epsilon(1e-9));
    // numerical route agrees with the carried value under refinement
    const double numeric =
        test_oracles::simpson([&](double x) { return std::fabs(bump.derivative(x)); }, 0.2, 0.8, 40000);
    CHECK(numeric == doctest::Approx(2.0 * 1.7).epsilon(1e-6));

    // tv(u + c) = tv(u): shift a spline by a constant
    TestFunction sp = TestFunction::spline_linear(0.1, 0.9, {0.0, 1.0, -0.5, 0.0});
    TestFunction sp_shift = TestFunction::spline_linear(0.1, 0.9, {2.0, 3.0, 1.5, 2.0});
    CHECK(tv_seminorm(sp, omega) == doctest::Approx(tv_seminorm(sp_shift, omega)));
}

TEST_CASE("tv invariance under centering (step function)") {
    // [u - (u)_Omega]_BV = [u]_BV: subtracting the average shifts values only
    Domain omega = Domain::interval(1.0);
    TestFunction st = TestFunction::step({0.0, 1.0, 2.0}, {0.0, 1.0});
    const double avg = average(st, Region::interval(0.0, 2.0));
    TestFunction centered = TestFunction::step({0.0, 1.0, 2.0}, {0.0 - avg, 1.0 - avg});
    CHECK(tv_seminorm(st, omega) == doctest::Approx(tv_seminorm(centered, omega)));
}

TEST_CASE("l1_norm") {
    Domain omega = Domain::interval(0.5);
    CHECK(l1_norm(TestFunction::linear(), omega) == doctest::Approx(0.5).epsilon(1e-10));
    Domain omega2 = Domain::interval(1.0);
    TestFunction st = TestFunction::step({0.0, 1.0, 2.0}, {0.0, 1.0});
    CHECK(l1_norm(st, omega2) == doctest::Approx(1.0).epsilon(1e-10));
    TestFunction bump = TestFunction::smooth_bump(0.5, 0.25, 1.0);
    const double oracle = test_oracles::simpson([&](double x) { return std::fabs(bump.value(x)); }, 0.2, 0.8, 40000);
    CHECK(l1_norm(bump, omega) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("boundary plateau shape and tv") {
    Domain omega = Domain::interval(1.0); // (0,2)
    TestFunction p = TestFunction::boundary_plateau(omega, 1.0, 0.01, 0.002);
    CHECK(p.value(0.005) == doctest::Approx(1.0));
    CHECK(p.value(1.0) == doctest::Approx(0.0));
    CHECK(p.value(1.995) == doctest::Approx(1.0));
    CHECK(p.value(0.011) > 0.0);
    CHECK(p.value(0.011) < 1.0);
    CHECK(tv_seminorm(p, omega) == doctest::Approx(2.0));
    CHECK_THROWS_AS(TestFunction::boundary_plateau(omega, 0.0, 0.01, 0.002), std::invalid_argument);
}

TEST_CASE("tensor and coordinate 2D functions") {
    TestFunction prof = TestFunction::smooth_bump(0.0, 0.5, 1.0);
    TestFunction u = TestFunction::tensor(prof);
    CHECK(u.dim() == 2);
    CHECK(u.value(Point{0.0, 0.7}) == doctest::Approx(1.0));
    CHECK(u.value(Point{0.0, 0.1}) == doctest::Approx(1.0)); // constant in x_d

    Domain box = Domain::axis_box(2, 1, 1.0);
    CHECK(tv_seminorm(u, box) == doctest::Approx(2.0).epsilon(1e-9)); // 1D tv (=2) x height (=1)
    CHECK(l1_norm(u, box) ==
          doctest::Approx(test_oracles::simpson([&](double x) { return prof.value(x); }, -0.5, 0.5, 20000))
              .epsilon(1e-8));

    TestFunction x1 = TestFunction::coordinate();
    Domain sq = Domain::unit_square();
    CHECK(tv_seminorm(x1, sq) == doctest::Approx(1.0));
    CHECK(l1_norm(x1, sq) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(average(x1, Region::box(0, 1, 0, 1)) == doctest::Approx(0.5));
}

TEST_CASE("descriptor JSON and grid CSV export") {
    TestFunction u = TestFunction::smooth_bump(0.5, 0.25, 1.5).with_grid(64);
    auto j = u.to_json();
    CHECK(j["dim"] == 1);
    CHECK(j["grid"] == 64);
    CHECK(j["centers"][0] == 0.5);
    CHECK(j["known_tv"] == doctest::Approx(3.0));

    const std::string path = "/tmp/hardylab_grid_test.csv";
    write_grid_csv(u, Domain::interval(0.5), path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,value");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 65); // grid + 1 samples
}

TEST_CASE("step evaluation and jumps") {
    TestFunction st = TestFunction::step({0.0, 0.5, 1.5, 2.0}, {1.0, -1.0, 0.5});
    CHECK(st.value(0.25) == doctest::Approx(1.0));
    CHECK(st.value(1.0) == doctest::Approx(-1.0));
    CHECK(st.value(1.75) == doctest::Approx(0.5));
    auto js = st.jumps();
    REQUIRE(js.size() == 2);
    CHECK(js[0].second == doctest::Approx(2.0));
    CHECK(js[1].second == doctest::Approx(1.5));
    CHECK(*st.known_tv() == doctest::Approx(3.5));
}
