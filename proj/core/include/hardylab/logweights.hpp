#pragma once

#include <stdexcept>
#include <vector>

#include "hardylab/quadrature.hpp"

namespace hardylab {

// Iterated-logarithm weight family
//
//   L_1(t) = 1/(1 - ln t),   L_m = L_1 o L_{m-1},
//
// extended by continuity with L_m(0) = 0 and L_m(1) = 1. Evaluation tracks the
// reciprocal g = 1 - ln t (then g <- 1 + ln g), which stays in [1, ~710] for
// any positive double, so nothing overflows near t = 0.

enum class TailKind { Square, Power, RhoStar };

struct Tail {
    TailKind kind = TailKind::Square;
    double beta = 2.0; // exponent for Power / RhoStar

    static Tail square() { return {TailKind::Square, 2.0}; }
    static Tail power(double beta) { return {TailKind::Power, beta}; }
    static Tail rho_star(double beta) { return {TailKind::RhoStar, beta}; }
};

/// Weight chain L_1(t/R)...L_{m-1}(t/R) * tail(t/R) with tail one of
/// L_m^2, L_m^beta, or L_m^{1+rho*}. For m = 1 the leading product is empty.
struct WeightChain {
    int m;
    double R;
    Tail tail;

    WeightChain(int m_, double R_, Tail tail_ = Tail::square());
};

/// L_m(t) for t in [0,1]. Strictly increasing, L_m(0)=0, L_m(1)=1.
double eval_L(int m, double t);

/// Chain value at t in (0, R]. Lies in (0, 1].
double eval_chain(const WeightChain& chain, double t);

/// Exact antiderivative: integral over (0,T] of chain(x)/x dx for the Square
/// tail equals L_m(T/R) by the derivative identity
///   d/dt L_m(t) = (1/t) L_1(t)...L_{m-1}(t) L_m^2(t).
/// Throws for non-Square tails.
double chain_antiderivative(const WeightChain& chain, double T);

/// Closed form of integral over (a,T] of chain(x)/x dx, valid for every tail:
///   Square      -> L_m(T/R) - L_m(a/R)
///   Power(b>1)  -> (L_m^{b-1}(T/R) - L_m^{b-1}(a/R)) / (b-1)
///   Power(b=1)  -> ln L_m(T/R) - ln L_m(a/R)   (diverges as a -> 0)
///   Power(b<1)  -> same antiderivative; diverges as a -> 0
///   RhoStar(b)  -> the Power(b) form one rung up (m+1), by the rho* identity.
/// With a = 0 the value is +infinity exactly when beta <= 1.
double chain_over_t_integral(const WeightChain& chain, double a, double T);

/// Adaptive quadrature of integral over (0,T] of chain(x)/x dx, independent of
/// the closed form above. Integrates in iterated-log coordinates so the mass
/// sitting below the smallest positive double (a ~20% chunk already for m = 2)
/// is still captured; see chain_over_t_quadrature in the .cpp for the change
/// of variables. Supports Square and Power(beta >= 2) tails.
QuadResult chain_over_t_quadrature(const WeightChain& chain, double T, double rel_tol = 1e-7);

/// Lattice majorant Y_1(k) = 1/(-k), Y_m(k) = 1/(1 - ln Y_{m-1}(k)), k <= -1.
double eval_Y(int m, long k);

struct GapCheck {
    double lhs; // Y_m(k) - Y_m(k-1)
    double rhs; // Y_1(k)...Y_{m-1}(k) Y_m(k)^2 / 2^{m+1}
    bool holds;
};

/// Lattice gap inequality Y_m(k) - Y_m(k-1) >= Y_1...Y_{m-1} Y_m^2 / 2^{m+1}.
GapCheck check_Y_gap(int m, long k);

/// Sampled check of L_m(x/R) < Y_m(k) over x in [3^k, 3^{k+1}), R > 1.
bool check_L_below_Y(int m, long k, double R, int samples);

/// Domination constant C(theta): (2/theta)^2 e^{theta-2} for theta <= 1; for
/// theta > 1 decompose theta = n1 + r with r in (0,1] and use (2/r)^2 e^{r-2}.
double theta_domination_constant(double theta);

/// Checks L_m^theta(t) <= C(theta) L_{m+1}^2(t) at every grid point.
bool check_theta_domination(int m, double theta, const std::vector<double>& t_grid);

struct BoundCheck {
    double value; // L_m(1/R)
    double bound; // 1/((m+1) R)
    bool holds;
};

/// Lower bound L_m(1/R) >= 1/((m+1)R) for R > 1.
BoundCheck check_L_lower_bound_at_inv_R(int m, double R);

/// Optimal exponent perturbation
///   rho*(t) = beta ln(1 - ln L_m(t)) / ln(1 - ln L_{m-1}(t)),  L_0(t) := t,
/// which satisfies L_m^{1+rho*}(t) = L_m(t) L_{m+1}^beta(t) exactly.
double eval_rho_star(int m, double beta, double t);

} // namespace hardylab
