#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/geometry.hpp"

namespace hardylab {

/// Axis-aligned region (interval in 1D, box in 2D) for averages.
struct Region {
    int dim = 1;
    Point lo{0.0, 0.0}, hi{1.0, 0.0};

    static Region interval(double a, double b) { return {1, {a, 0.0}, {b, 0.0}}; }
    static Region box(double ax, double bx, double ay, double by) { return {2, {ax, ay}, {bx, by}}; }
    double measure() const { return dim == 1 ? hi[0] - lo[0] : (hi[0] - lo[0]) * (hi[1] - lo[1]); }
};

// Analytic test-function family. Every descriptor evaluates exactly; grids are
// only used by the quadrature helpers. Instances are immutable.
class TestFunction {
  public:
    enum class Kind {
        Linear,          // u(x) = x, 1D
        Constant,        // u == c (1D or 2D)
        Step,            // 1D piecewise constant
        BumpMixture,     // 1D sum of smooth bumps a_i * exp(-r^2/(1-r^2))
        SplineLinear,    // 1D piecewise linear through knot values
        BoundaryPlateau, // c on {delta < eps}, clamped-cubic drop to 0 over [eps, eps+band]
        Tensor,          // 2D u(x,y) = profile(x)
        Coordinate,      // 2D u(x,y) = x
    };

    static TestFunction linear();
    static TestFunction constant(double c, int dim = 1);
    /// Piecewise constant: values[i] on (breaks[i], breaks[i+1]); breaks has
    /// values.size()+1 entries covering the domain of interest.
    static TestFunction step(std::vector<double> breaks, std::vector<double> values);
    static TestFunction smooth_bump(double center, double radius, double amplitude);
    static TestFunction bump_mixture(std::vector<double> centers, std::vector<double> radii,
                                     std::vector<double> amplitudes);
    static TestFunction spline_linear(double a, double b, std::vector<double> knot_values);
    /// Constant c on {delta_Omega < eps}, cubic transition to 0 on [eps, eps+band].
    static TestFunction boundary_plateau(const Domain& omega, double c, double eps, double band);
    static TestFunction tensor(TestFunction profile);
    static TestFunction coordinate();

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    int grid() const { return grid_; }
    TestFunction with_grid(int g) const;

    double value(double x) const;        // 1D
    double value(const Point& p) const;  // any dim
    double derivative(double x) const;   // 1D a.e. derivative (away from jumps)

    /// 1D kink/jump locations; quadratures split here.
    std::vector<double> breakpoints() const;
    /// 1D jump discontinuities as (location, |height|).
    std::vector<std::pair<double, double>> jumps() const;

    std::optional<double> known_tv() const { return known_tv_; }
    std::optional<double> known_l1() const { return known_l1_; }

    const TestFunction& profile() const; // Tensor inner profile

    nlohmann::json to_json() const;
    std::string label() const;

  private:
    TestFunction() = default;
    Kind kind_ = Kind::Linear;
    int dim_ = 1;
    int grid_ = 4096;
    double c_ = 0.0;
    std::vector<double> breaks_, values_;              // Step / SplineLinear
    std::vector<double> centers_, radii_, amps_;       // BumpMixture
    double eps_ = 0.0, band_ = 0.0;                    // BoundaryPlateau
    std::shared_ptr<const Domain> plateau_domain_;
    std::shared_ptr<const TestFunction> inner_;        // Tensor
    std::optional<double> known_tv_, known_l1_;
};

/// Average (1/|E|) integral of u over E, by composite quadrature at the
/// function's grid resolution. Throws on |E| = 0.
double average(const TestFunction& u, const Region& E);

/// Total variation seminorm over Omega. 1D: integral of |u'| plus jump
/// heights; 2D: integral of |grad u| (tensor rule or centered differences).
/// Returns known_tv when the descriptor carries it.
double tv_seminorm(const TestFunction& u, const Domain& omega);

/// L1 norm over Omega.
double l1_norm(const TestFunction& u, const Domain& omega);

/// Export sampled grid as CSV rows "x[,y],value".
void write_grid_csv(const TestFunction& u, const Domain& omega, const std::string& path);

} // namespace hardylab
