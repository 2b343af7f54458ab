#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hardylab {

using Point = std::array<double, 2>; // 1D domains use [0]; [1] stays 0

/// Boundary-graph descriptor gamma : R -> R for 2D Lipschitz graph domains.
/// Only analytic kinds are supported; the Lipschitz constant M is stored and
/// verified by sampling at construction.
struct GraphFn {
    enum class Kind { Zero, Slope, Abs, Sine };
    Kind kind = Kind::Zero;
    double a = 0.0;     // slope / scale
    double omega = 1.0; // frequency for Sine

    double operator()(double xp) const;
    double lipschitz() const;

    static GraphFn zero() { return {Kind::Zero, 0.0, 1.0}; }
    static GraphFn slope(double a) { return {Kind::Slope, a, 1.0}; }
    static GraphFn abs(double a = 1.0) { return {Kind::Abs, a, 1.0}; }
    static GraphFn sine(double a, double omega = 1.0) { return {Kind::Sine, a, omega}; }
};

/// Axis cube [lo, hi) used by the dyadic decomposition.
struct DyadicCube {
    Point lo, hi;
    Point center() const { return {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])}; }
};

/// Layer A_k = (-n,n)^{d-1} x [3^k, 3^{k+1}) split into sigma_k cubes of side 2*3^k.
struct DyadicLayer {
    long k = -1;
    double y0 = 0.0, y1 = 0.0;
    std::vector<DyadicCube> cubes;
};

/// Domain variants with an exact (or tolerance-certified, for graphs)
/// distance-to-boundary oracle. Immutable after construction.
class Domain {
  public:
    enum class Kind { Interval, AxisBox, Graph, Polygon };

    /// (0, 2D)
    static Domain interval(double D);
    /// (-n,n)^{d-1} x (0,h); d in {1,2}. For d=1 this is just (0,h).
    static Domain axis_box(int d, int n, double h);
    /// {x_d > gamma(x')} clipped to x' in [x_lo, x_hi], x_d < y_hi.
    static Domain graph(GraphFn gamma, double M, double x_lo, double x_hi, double y_hi);
    /// Simple polygon, vertices counterclockwise.
    static Domain polygon(std::vector<Point> ccw_vertices);
    static Domain unit_square() { return polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double measure() const;                    // |Omega|
    bool contains(const Point& x) const;       // open-domain membership
    double distance_to_boundary(const Point& x) const;
    double distance_to_boundary(double x) const; // 1D convenience
    double max_inradius() const;               // sup of delta over Omega

    // Interval / AxisBox accessors
    double interval_length() const; // 2D for Interval, h for 1D AxisBox
    double box_halfwidth() const { return n_; }
    double box_height() const { return h_; }
    const GraphFn& graph_fn() const { return gamma_; }
    double graph_lipschitz() const { return M_; }
    std::array<double, 2> graph_x_range() const { return {x_lo_, x_hi_}; }
    const std::vector<Point>& vertices() const { return vertices_; }

    nlohmann::json to_json() const;
    static Domain from_json(const nlohmann::json& j);

  private:
    Domain() = default;
    Kind kind_ = Kind::Interval;
    int dim_ = 1;
    double D_ = 1.0;                 // Interval
    double n_ = 1.0, h_ = 1.0;       // AxisBox
    GraphFn gamma_;                  // Graph
    double M_ = 0.0;
    double x_lo_ = -1.0, x_hi_ = 1.0, y_hi_ = 1.0;
    std::vector<Point> vertices_;    // Polygon
};

/// Layers k = ell..-1 tiling (-n,n)^{d-1} x [3^ell, 1).
std::vector<DyadicLayer> dyadic_layers(int n, int d, long ell);

/// Index (within the k+1 layer) of the cube lying above the given layer-k cube.
std::size_t cube_above(const DyadicLayer& layer_k, std::size_t i, const DyadicLayer& layer_k1);

/// Graph flattening F(x) = (x', x_d - gamma(x')) and its inverse.
Point graph_flatten(const GraphFn& gamma, const Point& x);
Point graph_unflatten(const GraphFn& gamma, const Point& xi);

struct DeltaEquivalence {
    double C1; // min delta/xi_d over samples
    double C2; // max delta/xi_d over samples
};

/// Empirical two-sided comparison delta_Omega(x) ~ xi_d on a graph domain.
DeltaEquivalence delta_equivalence_check(const Domain& graph_domain, int sample_count,
                                         std::uint64_t seed = 1);

} // namespace hardylab
