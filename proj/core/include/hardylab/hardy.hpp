#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/functions.hpp"
#include "hardylab/logweights.hpp"
#include "hardylab/seminorms.hpp"

namespace hardylab {

/// Raised when the weighted integral is provably (or empirically, past the
/// ceiling) divergent. Carries the value accumulated before the signal.
class DivergenceSignal : public std::runtime_error {
  public:
    DivergenceSignal(const std::string& what, double partial) : std::runtime_error(what), partial_value(partial) {}
    double partial_value;
};

/// One weighted-Hardy evaluation: function, domain, weight chain, weight
/// exponent on delta (1 = BV mode, s in [1/2,1) = fractional mode), centering.
struct HardyCase {
    TestFunction u;
    Domain omega;
    WeightChain chain;
    double s_exp = 1.0;
    bool centered = true;
    std::optional<double> alpha;
    std::optional<Region> region; // integrate over a sub-rectangle of omega
    double collar_cutoff = 0.0;   // > 0: truncate at delta > cutoff (failure sweeps)
    double rel_tol = 1e-6;
    double ceiling_factor = 1e6;

    HardyCase(TestFunction u_, Domain omega_, WeightChain chain_);
};

struct VerificationReport {
    std::string case_id;
    double lhs = 0.0;
    std::vector<std::pair<std::string, double>> rhs_components;
    double measured_constant = 0.0;
    std::string constant_form;
    bool pass = false;
    std::string oracle;
    double m = 0, s = 0, alpha = 0, beta = 0;

    nlohmann::json to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

/// The weighted integral
///   int_Omega |u - (u)_Omega| / delta^{s_exp} * chain(delta) dx
/// (|u| instead when centered = false). Boundary mass is integrated on a
/// 1/3-graded mesh toward the boundary; in BV mode the last collar carries the
/// exact closed-form tail of chain(t)/t weighted by the boundary trace.
/// Throws DivergenceSignal when the tail is divergent (beta <= 1 against a
/// nonzero trace) or the accumulated value passes the ceiling.
double weighted_lhs(const HardyCase& c);

/// BV-mode bound: lhs <= C 2^m [u]_BV, measured constant lhs/(2^m TV).
VerificationReport verify_main(const TestFunction& u, const Domain& omega, int m, double R);

/// Fractional-mode bound: lhs <= C 2^m { (1-s)[u]_{W^{s,1}} + ||u||_L1 },
/// s in [1/2, 1).
VerificationReport verify_intermediate(const TestFunction& u, const Domain& omega, double s, int m, double R,
                                       long budget = 200000, std::uint64_t seed = 1);

struct FlatCaseCheck {
    double lhs, rhs, gagliardo, l1;
    bool holds;
};

/// 1D explicit-coefficient form on (0,1) with weight x^{-s} chain(x/R):
///   lhs <= C1 (2^{3s+m} + 2^s)(1-s)[u]_{W^{s,1}((0,1))} + 2^{m+1} 3^s ||u||_L1.
FlatCaseCheck flat_case_check(const TestFunction& u, double s, int m, double R, double C1_poin);

enum class SeriesVerdict { Converged, DivergenceWitness, Inconclusive };

struct SeriesResult {
    SeriesVerdict verdict = SeriesVerdict::Inconclusive;
    std::vector<double> terms;        // alpha^m * lhs_m, m = 2..
    std::vector<double> partial_sums;
    double total = 0.0;
    double tail_estimate = 0.0;
    int witness_m = -1;
    double reference_total = 0.0; // alpha = 0.4 series of the same case
    std::string term_oracle;
};

/// Series over m >= 2 of alpha^m * lhs_m. Converged when the geometric tail
/// estimate drops below tol; DivergenceWitness when a partial sum exceeds
/// witness_factor times the alpha = 0.4 reference total.
SeriesResult series_sum(const HardyCase& base, double alpha, int m_max, double tol = 1e-6,
                        double witness_factor = 10.0);

/// The product-function failure construction: u(x) = profile(x') on
/// (-2n,2n) x (0,2), integrated over (-n,n) x (0,1) where delta = x_d.
/// Per-m lhs has the closed form ||profile||_L1 * L_m(1/R).
HardyCase make_counterexample_case(const TestFunction& profile, int n, int m, double R);
double counterexample_lhs_closed_form(const TestFunction& profile, int n, int m, double R);

/// Power-tail bound L_m^beta. beta > 1: verifies the theta-domination
/// reduction lhs_beta <= C(beta-1) * lhs_{m+1,Square} and reports both
/// candidate constants C(beta) and C(beta-1).
VerificationReport power_tail_verify(const TestFunction& u, const Domain& omega, int m, double R,
                                         double beta);

/// Rho-star-tail bound L_m^{1+rho*}; checks the exact reduction to the
/// L_{m+1}^beta chain and the 2^m bound.
VerificationReport rho_star_tail_verify(const TestFunction& u, const Domain& omega, int m, double R,
                                        double beta);

struct CollarSweepRow {
    double cutoff;
    double lhs;
};

/// Failure demonstration for beta <= 1: fixed BoundaryPlateau, shrinking
/// quadrature cutoff; lhs grows without bound while [u]_BV stays fixed.
std::vector<CollarSweepRow> collar_divergence_sweep(const TestFunction& plateau, const Domain& omega, int m,
                                                    double R, double beta, const std::vector<double>& cutoffs);

struct MainBatteryRow {
    std::string label;
    int m;
    double lhs, tv, measured;
};

struct MainBatterySummary {
    std::vector<MainBatteryRow> rows;
    double max_measured = 0.0;
    double max_spearman = -1.0; // max over functions of Spearman(measured, m)
};

/// BV-mode battery over a list of functions and m-range.
MainBatterySummary run_main_battery(const std::vector<TestFunction>& battery, const Domain& omega, int m_lo,
                                    int m_hi, double R);

/// Spearman rank correlation (no tie handling; inputs are generic reals).
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace hardylab
