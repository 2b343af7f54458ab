#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hardylab/hardy.hpp"

namespace hardylab {

/// Search space of test functions. Box bounds keep supports inside Omega;
/// make() additionally clips bump widths so every in-bounds vector is valid.
struct ParametricFamily {
    enum class Kind { BumpMixture, SplineProfile };
    Kind kind = Kind::BumpMixture;
    int K = 1;
    double length = 2.0; // Omega = (0, length)
    bool amplitude_free = true;
    std::vector<double> lo, hi;

    static ParametricFamily bump_mixture(int K, const Domain& omega, bool amplitude_free = true);
    static ParametricFamily spline_profile(int interior_knots, const Domain& omega);

    int n_params() const { return static_cast<int>(lo.size()); }
    TestFunction make(const std::vector<double>& params) const;
};

/// Objective: the measured constant of verify_main / verify_intermediate.
struct ExtremalObjective {
    enum class Kind { Main, Intermediate };
    Kind kind = Kind::Main;
    int m = 2;
    double R = 2.718281828459045;
    double s = 0.5; // Intermediate only
    Domain omega = Domain::interval(1.0);

    /// Ratio at u; 0 for degenerate (zero-TV) functions. tight sharpens the
    /// quadrature tolerance one order for the final incumbent re-evaluation.
    double eval(const TestFunction& u, bool tight = false) const;
};

struct ExtremalResult {
    std::vector<double> best_params;
    double best_ratio = 0.0;
    long evaluations = 0;
    std::uint64_t seed = 0;
    double restart_dispersion = 0.0; // coefficient of variation across restarts
    std::vector<double> restart_best;
    std::vector<double> best_trace; // best-so-far of the winning restart

    nlohmann::json to_json() const;
};

/// Nelder-Mead with shrink/expand, box clipping, uniform random restarts and a
/// deterministic pattern-search polish. Deterministic given (seed, restarts).
ExtremalResult maximize_ratio(const ParametricFamily& family, const ExtremalObjective& objective,
                              long budget_per_restart, int restarts, std::uint64_t seed);

struct GrowthRow {
    int m;
    double best_ratio;
    double ratio_over_2m;
};

/// m-sweep of maximize_ratio; emits the growth table for plotting.
std::vector<GrowthRow> constant_growth_profile(const ParametricFamily& family, ExtremalObjective objective,
                                               int m_lo, int m_hi, long budget_per_restart, int restarts,
                                               std::uint64_t seed);

} // namespace hardylab
