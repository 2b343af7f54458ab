#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hardylab {

/// Result of an adaptive quadrature: value plus an a-posteriori error estimate.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Thrown when adaptive refinement stalls before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Single Gauss7/Kronrod15 panel on [a,b]. Error estimate follows QUADPACK's
/// (200|G7-K15|)^{3/2} heuristic.
QuadResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

/// Adaptive G7K15 over [a,b]. Splits the worst panel until
/// sum(err) <= max(rel_tol*|sum|, abs_tol) or max_panels is hit.
QuadResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-9, double abs_tol = 1e-300,
                               int max_panels = 4000);

/// Like adaptive_quadrature but seeds the panel list with the given breakpoints
/// (integrand may have kinks or jumps there).
QuadResult adaptive_quadrature_split(const std::function<double(double)>& f, double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double rel_tol = 1e-9, double abs_tol = 1e-300,
                                     int max_panels = 4000);

/// Fixed-order Gauss-Legendre panel (order 16), no error estimate. Used for
/// graded-mesh integration where the grading already controls the error.
double gauss_legendre_16(const std::function<double(double)>& f, double a, double b);

} // namespace hardylab
