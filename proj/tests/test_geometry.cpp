#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hardylab/geometry.hpp"
#include "oracles.hpp"

using namespace hardylab;

TEST_CASE("interval distance is exact") {
    Domain d = Domain::interval(1.0);
    CHECK(d.distance_to_boundary(0.5) == doctest::Approx(0.5));
    CHECK(d.distance_to_boundary(1.7) == doctest::Approx(0.3));
    for (int i = 1; i < 100; ++i) {
        const double x = 2.0 * i / 100.0;
        CHECK(d.distance_to_boundary(x) == doctest::Approx(std::min(x, 2.0 - x)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(d.distance_to_boundary(-0.1), std::domain_error);
    CHECK(d.measure() == doctest::Approx(2.0));
    CHECK(d.max_inradius() == doctest::Approx(1.0));
}

TEST_CASE("axis box distance") {
    Domain b = Domain::axis_box(2, 2, 1.0);
    CHECK(b.distance_to_boundary(Point{0.0, 0.25}) == doctest::Approx(0.25));
    CHECK(b.distance_to_boundary(Point{-1.9, 0.5}) == doctest::Approx(0.1));
    CHECK(b.measure() == doctest::Approx(4.0));
    CHECK(b.max_inradius() == doctest::Approx(0.5));
    Domain b1 = Domain::axis_box(1, 1, 2.0);
    CHECK(b1.distance_to_boundary(0.5) == doctest::Approx(0.5));
}

TEST_CASE("polygon distance: unit square") {
    Domain sq = Domain::unit_square();
    CHECK(sq.distance_to_boundary(Point{0.3, 0.5}) == doctest::Approx(0.3));
    CHECK(sq.distance_to_boundary(Point{0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(sq.measure() == doctest::Approx(1.0));
    CHECK_THROWS_AS(sq.distance_to_boundary(Point{1.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(Domain::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument); // clockwise
}

TEST_CASE("graph domain distance vs brute force") {
    Domain g = Domain::graph(GraphFn::abs(1.0), 1.0, -2.0, 2.0, 2.0);
    const double d = g.distance_to_boundary(Point{0.0, 1.0});
    CHECK(d == doctest::Approx(0.7071067811865475).epsilon(1e-9));
    // a few generic points against a dense boundary sweep
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double x = u(rng), extra = 0.2 + 0.6 * std::fabs(u(rng));
        Point p{x, std::fabs(x) + extra};
        const double got = g.distance_to_boundary(p);
        const double want =
            test_oracles::brute_graph_distance([](double t) { return std::fabs(t); }, p[0], p[1], -2.0, 2.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
        CHECK(got <= want * (1.0 + 1e-8)); // refinement can only beat sampling
    }
    Domain gs = Domain::graph(GraphFn::sine(0.5, 1.0), 0.5, -3.0, 3.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const double x = 2.0 * u(rng), extra = 0.2 + 0.5 * std::fabs(u(rng));
        Point p{x, 0.5 * std::sin(x) + extra};
        const double got = gs.distance_to_boundary(p);
        const double want =
            test_oracles::brute_graph_distance([](double t) { return 0.5 * std::sin(t); }, p[0], p[1], -3.0, 3.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("graph constructor validates Lipschitz constant") {
    CHECK_THROWS_AS(Domain::graph(GraphFn::slope(2.0), 1.0, -1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dyadic layers: 1D") {
    auto layers = dyadic_layers(1, 1, -2);
    REQUIRE(layers.size() == 2);
    CHECK(layers[0].k == -2);
    CHECK(layers[0].y0 == doctest::Approx(1.0 / 9));
    CHECK(layers[0].y1 == doctest::Approx(1.0 / 3));
    CHECK(layers[0].cubes.size() == 1);
    CHECK(layers[1].cubes.size() == 1);
}

TEST_CASE("dyadic layers: 2D counts and area") {
    auto layers = dyadic_layers(2, 2, -1);
    REQUIRE(layers.size() == 1);
    CHECK(layers[0].cubes.size() == 6); // sigma_{-1} = 3 * 2
    CHECK(layers[0].cubes[0].hi[0] - layers[0].cubes[0].lo[0] == doctest::Approx(2.0 / 3));

    auto l3 = dyadic_layers(1, 2, -3);
    size_t total = 0;
    double area = 0.0;
    for (const auto& layer : l3) {
        total += layer.cubes.size();
        for (const auto& c : layer.cubes) area += (c.hi[0] - c.lo[0]) * (c.hi[1] - c.lo[1]);
        // cubes tile the slab without overlap: widths sum to 2n
        double width = 0.0;
        for (const auto& c : layer.cubes) width += c.hi[0] - c.lo[0];
        CHECK(width == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(total == 3 + 9 + 27);
    CHECK(area == doctest::Approx(2.0 * (1.0 - 1.0 / 27.0)).epsilon(1e-12));
}

TEST_CASE("dyadic stacking: 3^{d-1} cubes below each upper cube") {
    auto layers = dyadic_layers(2, 2, -3);
    for (size_t li = 0; li + 1 < layers.size(); ++li) {
        const auto& lo = layers[li];
        const auto& up = layers[li + 1];
        std::vector<int> counts(up.cubes.size(), 0);
        for (size_t i = 0; i < lo.cubes.size(); ++i) {
            const size_t j = cube_above(lo, i, up);
            // the lower cube's center must lie inside the upper cube's x-extent
            const double cx = lo.cubes[i].center()[0];
            CHECK(cx >= up.cubes[j].lo[0]);
            CHECK(cx <= up.cubes[j].hi[0]);
            counts[j]++;
        }
        for (int c : counts) CHECK(c == 3);
    }
}

TEST_CASE("flatten round trip and bilipschitz constant") {
    GraphFn gid = GraphFn::zero();
    Point p{0.3, 0.7};
    Point f = graph_flatten(gid, p);
    CHECK(f[0] == p[0]);
    CHECK(f[1] == p[1]);

    GraphFn gl = GraphFn::slope(1.0);
    Point q = graph_flatten(gl, Point{1.0, 3.0});
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == doctest::Approx(2.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const GraphFn& g : {GraphFn::abs(1.0), GraphFn::slope(0.75), GraphFn::sine(0.5, 1.0)}) {
        const double M = g.lipschitz();
        const double C = std::sqrt(2.0 * M * M + 2.0);
        int bad = 0;
        for (int i = 0; i < 100000; ++i) {
            Point x{u(rng), u(rng)};
            Point y{u(rng), u(rng)};
            Point rt = graph_unflatten(g, graph_flatten(g, x));
            if (std::fabs(rt[0] - x[0]) >= 1e-12 || std::fabs(rt[1] - x[1]) >= 1e-12) ++bad;
            const double dxy = std::hypot(x[0] - y[0], x[1] - y[1]);
            Point fx = graph_flatten(g, x), fy = graph_flatten(g, y);
            const double dF = std::hypot(fx[0] - fy[0], fx[1] - fy[1]);
            if (dF > C * dxy * (1.0 + 1e-12) || dF < dxy / C * (1.0 - 1e-12)) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("delta equivalence on graph domains") {
    Domain flat = Domain::graph(GraphFn::zero(), 0.0, -1.0, 1.0, 1.0);
    DeltaEquivalence e0 = delta_equivalence_check(flat, 2000, 3);
    CHECK(e0.C1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e0.C2 == doctest::Approx(1.0).epsilon(1e-9));

    Domain vee = Domain::graph(GraphFn::abs(1.0), 1.0, -2.0, 2.0, 2.0);
    DeltaEquivalence e1 = delta_equivalence_check(vee, 5000, 5);
    CHECK(e1.C1 >= 0.5 - 0.01);
    CHECK(e1.C2 <= 2.0 + 0.01);

    Domain sine = Domain::graph(GraphFn::sine(0.5, 1.0), 0.5, -3.0, 3.0, 2.0);
    DeltaEquivalence e2 = delta_equivalence_check(sine, 5000, 5);
    const double C = std::sqrt(2.0 * 0.25 + 2.0);
    CHECK(e2.C1 >= 1.0 / C - 0.01);
    CHECK(e2.C2 <= C + 0.01);
}

TEST_CASE("domain JSON round trip") {
    for (const Domain& d : {Domain::interval(1.5), Domain::axis_box(2, 3, 2.0), Domain::unit_square(),
                            Domain::graph(GraphFn::sine(0.5, 2.0), 1.0, -1.0, 1.0, 1.0)}) {
        Domain back = Domain::from_json(d.to_json());
        CHECK(back.kind() == d.kind());
        CHECK(back.dim() == d.dim());
        CHECK(back.measure() == doctest::Approx(d.measure()).epsilon(1e-9));
    }
}
