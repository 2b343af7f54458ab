#include "hardylab/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> shifted_union(const std::vector<double>& breaks, double h) {
    std::vector<double> out = breaks;
    for (double b : breaks) out.push_back(b - h);
    std::sort(out.begin(), out.end());
    return out;
}

Func1D as_func(const TestFunction& u) {
    return {[&u](double x) { return u.value(x); }, u.breakpoints()};
}

} // namespace

std::string to_string(SeminormMethod m) {
    switch (m) {
        case SeminormMethod::ClosedForm: return "closed-form";
        case SeminormMethod::AdaptiveQuadrature1D: return "adaptive-quadrature-1d";
        case SeminormMethod::TensorQuadrature: return "tensor-quadrature";
        case SeminormMethod::MonteCarloPairs: return "monte-carlo-pairs";
    }
    return "?";
}

nlohmann::json SeminormEstimate::to_json() const {
    nlohmann::json j;
    j["value"] = value;
    j["std_error"] = std_error;
    j["method"] = to_string(method);
    j["s"] = is_bv ? nlohmann::json("BV") : nlohmann::json(s);
    j["seed"] = seed;
    j["budget"] = budget;
    return j;
}

SeminormEstimate gagliardo_1d_func(const Func1D& u, double a, double b, double s, double rel_tol) {
    if (!(s > 0.0) || !(s < 1.0)) throw std::invalid_argument("gagliardo_1d: s must lie in (0,1)");
    if (!(b > a)) throw std::invalid_argument("gagliardo_1d: empty interval");
    const double len = b - a;

    // inner integral g(h) = int_a^{b-h} |u(x+h)-u(x)| dx
    auto g = [&](double h) {
        if (h >= len) return 0.0;
        auto diff = [&](double x) { return std::fabs(u.f(x + h) - u.f(x)); };
        QuadResult r = adaptive_quadrature_split(diff, a, b - h, shifted_union(u.breakpoints, h),
                                                 0.05 * rel_tol, 1e-16, 6000);
        return r.value;
    };
    // outer: 2 int h^{-1-s} g(h) dh  ==  (2/(1-s)) int g(h(w))/h(w) dw, w = h^{1-s}.
    // g(h)/h extends continuously to h = 0 (limit is the TV), so differences
    // below the cancellation scale are evaluated at a floored h instead.
    const double one_ms = 1.0 - s;
    const double h_floor = 1e-8 * len;
    auto outer = [&](double w) {
        double h = std::pow(w, 1.0 / one_ms);
        if (h < h_floor) h = h_floor;
        return g(h) / h;
    };
    const double W = std::pow(len, one_ms);
    QuadResult r = adaptive_quadrature(outer, 0.0, W, rel_tol, 1e-16, 600);
    SeminormEstimate est;
    est.value = 2.0 / one_ms * r.value;
    est.std_error = 0.0;
    est.method = SeminormMethod::AdaptiveQuadrature1D;
    est.s = s;
    return est;
}

SeminormEstimate gagliardo_1d(const TestFunction& u, double a, double b, double s, double rel_tol) {
    if (u.dim() != 1) throw std::invalid_argument("gagliardo_1d: function must be 1D");
    if (u.kind() == TestFunction::Kind::Constant) {
        SeminormEstimate est;
        est.method = SeminormMethod::AdaptiveQuadrature1D;
        est.s = s;
        return est;
    }
    return gagliardo_1d_func(as_func(u), a, b, s, rel_tol);
}

SeminormEstimate gagliardo_nd(const TestFunction& u, const Domain& omega, double s, long budget,
                              std::uint64_t seed) {
    if (!(s > 0.0) || !(s < 1.0)) throw std::invalid_argument("gagliardo_nd: s must lie in (0,1)");
    if (u.dim() != 2 || omega.dim() != 2) throw std::invalid_argument("gagliardo_nd: needs d = 2");
    if (budget < 1000) throw std::invalid_argument("gagliardo_nd: budget too small");

    // bounding rectangle; sampling assumes the domain is a rectangle (AxisBox
    // or axis-aligned 4-gon), which is all the 2D verification uses.
    double xlo, xhi, ylo, yhi;
    if (omega.kind() == Domain::Kind::AxisBox) {
        xlo = -omega.box_halfwidth();
        xhi = omega.box_halfwidth();
        ylo = 0.0;
        yhi = omega.box_height();
    } else if (omega.kind() == Domain::Kind::Polygon && omega.vertices().size() == 4) {
        xlo = xhi = omega.vertices()[0][0];
        ylo = yhi = omega.vertices()[0][1];
        for (const Point& p : omega.vertices()) {
            xlo = std::min(xlo, p[0]);
            xhi = std::max(xhi, p[0]);
            ylo = std::min(ylo, p[1]);
            yhi = std::max(yhi, p[1]);
        }
    } else {
        throw std::invalid_argument("gagliardo_nd: only rectangle-like domains are supported");
    }
    const double area = (xhi - xlo) * (yhi - ylo);
    const double rho_cap = std::hypot(xhi - xlo, yhi - ylo);
    const double one_ms = 1.0 - s;
    const double scale = area * 2.0 * kPi * std::pow(rho_cap, one_ms) / one_ms;

    // stratify the radial importance variable U (rho = rho_cap U^{1/(1-s)})
    const int K = 32;
    const long per = std::max<long>(budget / K, 8);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double mean_sum = 0.0, var_sum = 0.0;
    for (int k = 0; k < K; ++k) {
        double m1 = 0.0, m2 = 0.0;
        for (long i = 0; i < per; ++i) {
            const double ux = xlo + (xhi - xlo) * unif(rng);
            const double uy = ylo + (yhi - ylo) * unif(rng);
            const double phi = 2.0 * kPi * unif(rng);
            const double U = (k + unif(rng)) / K;
            const double rho = rho_cap * std::pow(U, 1.0 / one_ms);
            const double yx = ux + rho * std::cos(phi);
            const double yy = uy + rho * std::sin(phi);
            double w = 0.0;
            if (yx > xlo && yx < xhi && yy > ylo && yy < yhi && rho > 0.0) {
                const double du = std::fabs(u.value(Point{ux, uy}) - u.value(Point{yx, yy}));
                w = scale * du / rho;
            }
            m1 += w;
            m2 += w * w;
        }
        const double mean = m1 / per;
        const double var = std::max(0.0, m2 / per - mean * mean);
        mean_sum += mean;
        var_sum += var / per;
    }
    SeminormEstimate est;
    est.value = mean_sum / K;
    est.std_error = std::sqrt(var_sum) / K;
    est.method = SeminormMethod::MonteCarloPairs;
    est.s = s;
    est.seed = seed;
    est.budget = per * K;
    if (est.value > 0.0 && est.std_error / est.value > 0.05)
        throw EstimatorError("gagliardo_nd: budget too small (std_error/value > 0.05)");
    return est;
}

double bbm_constant(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 4.0;
        case 3: return 2.0 * kPi;
        default: throw std::invalid_argument("bbm_constant: d must be 1, 2 or 3");
    }
}

std::vector<std::pair<double, double>> bbm_limit_sweep(const TestFunction& u, const Domain& omega,
                                                       const std::vector<double>& s_list, long budget,
                                                       std::uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    out.reserve(s_list.size());
    for (double s : s_list) {
        double val;
        if (u.dim() == 1) {
            auto rect = Region::interval(0.0, omega.interval_length());
            val = gagliardo_1d(u, rect.lo[0], rect.hi[0], s, 1e-6).value;
        } else {
            val = gagliardo_nd(u, omega, s, budget, seed).value;
        }
        out.emplace_back(s, (1.0 - s) * val);
    }
    return out;
}

PoincareMeasurement poincare_measure(const TestFunction& u, const Region& cube, double s) {
    if (cube.dim != u.dim()) throw std::invalid_argument("poincare_measure: dimension mismatch");
    if (cube.dim != 1) throw std::invalid_argument("poincare_measure: only d = 1 cubes are measured");
    const double lambda = cube.hi[0] - cube.lo[0];
    const double avg = average(u, cube);
    QuadResult osc = adaptive_quadrature_split([&](double x) { return std::fabs(u.value(x) - avg); },
                                               cube.lo[0], cube.hi[0], u.breakpoints(), 1e-9, 1e-14);
    const double numerator = osc.value / lambda;
    const double J = gagliardo_1d(u, cube.lo[0], cube.hi[0], s).value;
    if (!(J > 0.0)) throw EstimatorError("poincare_measure: zero seminorm (constant function)");
    const double denom = std::pow(lambda, s - 1.0) * (1.0 - s) * J;
    return {lambda, s, numerator / denom, 1};
}

AvgChainResult avg_chain_check(const TestFunction& u, const Region& E, const Region& F, const Region& G,
                               double s) {
    if (E.dim != 1 || F.dim != 1 || G.dim != 1)
        throw std::invalid_argument("avg_chain_check: only 1D regions are supported");
    const bool disjoint = E.hi[0] <= F.lo[0] || F.hi[0] <= E.lo[0];
    const bool inside = E.lo[0] >= G.lo[0] && E.hi[0] <= G.hi[0] && F.lo[0] >= G.lo[0] && F.hi[0] <= G.hi[0];
    if (!disjoint || !inside) throw std::invalid_argument("avg_chain_check: need E, F disjoint with E u F inside G");
    const double lhs = std::fabs(average(u, E) - average(u, F));
    const double lambda = G.hi[0] - G.lo[0];
    const PoincareMeasurement pm = poincare_measure(u, G, s);
    const double J = gagliardo_1d(u, G.lo[0], G.hi[0], s).value;
    const double rhs = pm.measured_constant * std::pow(lambda, s - 1.0) * (1.0 - s) *
                       (G.measure() / std::min(E.measure(), F.measure())) * J;
    return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9) + 1e-12};
}

double bv_poincare_measure(const TestFunction& u, const Domain& omega) {
    const double tv = tv_seminorm(u, omega);
    if (!(tv > 0.0)) throw EstimatorError("bv_poincare_measure: zero total variation (constant function)");
    if (u.dim() != 1) throw std::invalid_argument("bv_poincare_measure: only 1D implemented");
    const double L = omega.interval_length();
    const double avg = average(u, Region::interval(0.0, L));
    QuadResult osc = adaptive_quadrature_split([&](double x) { return std::fabs(u.value(x) - avg); }, 0.0, L,
                                               u.breakpoints(), 1e-9, 1e-14);
    return osc.value / tv;
}

double cutoff_multiplication_check(const TestFunction& u, const TestFunction& xi, const Domain& omega,
                                   double s) {
    if (u.dim() != 1 || xi.dim() != 1) throw std::invalid_argument("cutoff_multiplication_check: 1D only");
    const double L = omega.interval_length();
    std::vector<double> breaks = u.breakpoints();
    for (double b : xi.breakpoints()) breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    Func1D prod{[&](double x) { return xi.value(x) * u.value(x); }, breaks};

    const double J_u = gagliardo_1d(u, 0.0, L, s).value;
    const double l1_u = adaptive_quadrature_split([&](double x) { return std::fabs(u.value(x)); }, 0.0, L,
                                                  u.breakpoints(), 1e-9, 1e-14)
                            .value;
    const double norm_u = J_u + l1_u;
    if (!(norm_u > 0.0)) throw EstimatorError("cutoff_multiplication_check: u has zero norm");

    const double J_p = gagliardo_1d_func(prod, 0.0, L, s).value;
    const double l1_p =
        adaptive_quadrature_split([&](double x) { return std::fabs(prod.f(x)); }, 0.0, L, breaks, 1e-9, 1e-14)
            .value;
    return (J_p + l1_p) / norm_u;
}

} // namespace hardylab
