#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/functions.hpp"

namespace hardylab {

enum class SeminormMethod { ClosedForm, AdaptiveQuadrature1D, TensorQuadrature, MonteCarloPairs };

std::string to_string(SeminormMethod m);

/// Gagliardo seminorm estimate [u]_{W^{s,1}}: value, statistical error (0 for
/// deterministic quadrature), method tag, and the order s (or BV marker).
struct SeminormEstimate {
    double value = 0.0;
    double std_error = 0.0;
    SeminormMethod method = SeminormMethod::AdaptiveQuadrature1D;
    double s = 0.0;
    bool is_bv = false;
    std::uint64_t seed = 0;
    long budget = 0;

    nlohmann::json to_json() const;
};

class EstimatorError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 1D evaluable with known kink/jump locations; quadratures split there.
struct Func1D {
    std::function<double(double)> f;
    std::vector<double> breakpoints;
};

/// [u]_{W^{s,1}((a,b))} by adaptive quadrature. The double integral is folded
/// to 2 int_0^{b-a} h^{-1-s} int |u(x+h)-u(x)| dx dh and the outer singular
/// factor is absorbed by the substitution w = h^{1-s}.
SeminormEstimate gagliardo_1d(const TestFunction& u, double a, double b, double s, double rel_tol = 1e-6);
SeminormEstimate gagliardo_1d_func(const Func1D& u, double a, double b, double s, double rel_tol = 1e-6);

/// d = 2 Gagliardo seminorm by stratified pair sampling with radial importance
/// density ~ rho^{-s}. Deterministic for a fixed seed. Throws EstimatorError
/// when std_error/value > 0.05 (budget too small).
SeminormEstimate gagliardo_nd(const TestFunction& u, const Domain& omega, double s, long budget,
                              std::uint64_t seed);

/// BBM constant C_{BV,d} = integral over S^{d-1} of |e.w|: 2, 4, 2*pi.
double bbm_constant(int d);

/// Sweep of (s, (1-s)[u]_{W^{s,1}}); tends to C_{BV,d} [u]_{BV} as s -> 1.
std::vector<std::pair<double, double>> bbm_limit_sweep(const TestFunction& u, const Domain& omega,
                                                       const std::vector<double>& s_list,
                                                       long budget = 200000, std::uint64_t seed = 1);

struct PoincareMeasurement {
    double lambda = 1.0;
    double s = 0.5;
    double measured_constant = 0.0; // smallest C making the cube inequality hold for this u
    int d = 1;
};

/// Measured fractional Poincare constant on a cube:
///   mean osc / ( lambda^{s-d} (1-s) [u]_{W^{s,1}(cube)} ).
PoincareMeasurement poincare_measure(const TestFunction& u, const Region& cube, double s);

struct AvgChainResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// |(u)_E - (u)_F| <= C lambda^{s-d}(1-s) (|G|/min(|E|,|F|)) [u]_{W^{s,1}(G)},
/// with C the measured Poincare constant of u on G.
AvgChainResult avg_chain_check(const TestFunction& u, const Region& E, const Region& F, const Region& G,
                               double s);

/// BV Poincare ratio: integral |u - (u)_Omega| / [u]_{BV(Omega)}.
double bv_poincare_measure(const TestFunction& u, const Domain& omega);

/// ||xi u||_{W^{s,1}} / ||u||_{W^{s,1}} with the full norm [.] + L1.
double cutoff_multiplication_check(const TestFunction& u, const TestFunction& xi, const Domain& omega,
                                   double s);

} // namespace hardylab
