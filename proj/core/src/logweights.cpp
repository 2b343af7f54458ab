#include "hardylab/logweights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reciprocal recursion: g_1 = 1 - ln t, g_{j+1} = 1 + ln g_j, L_j = 1/g_j.
// Returns g_m. t must be in (0,1].
double g_value(int m, double t) {
    double g = 1.0 - std::log(t);
    for (int j = 1; j < m; ++j) g = 1.0 + std::log(g);
    return g;
}

} // namespace

WeightChain::WeightChain(int m_, double R_, Tail tail_) : m(m_), R(R_), tail(tail_) {
    if (m < 1) throw std::invalid_argument("WeightChain: m must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("WeightChain: R must be > 0");
    if (tail.kind == TailKind::Power && !(tail.beta > 0.0))
        throw std::invalid_argument("WeightChain: Power tail requires beta > 0");
    if (tail.kind == TailKind::RhoStar && !(tail.beta > 1.0))
        throw std::invalid_argument("WeightChain: RhoStar tail requires beta > 1");
}

double eval_L(int m, double t) {
    if (m < 1) throw std::invalid_argument("eval_L: m must be >= 1");
    if (t < 0.0 || t > 1.0 || std::isnan(t)) throw std::domain_error("eval_L: t must lie in [0,1]");
    if (t == 0.0) return 0.0;
    if (t == 1.0) return 1.0;
    return 1.0 / g_value(m, t);
}

double eval_chain(const WeightChain& chain, double t) {
    if (!(t > 0.0) || t > chain.R) throw std::domain_error("eval_chain: t must lie in (0, R]");
    const double x = t / chain.R;
    if (x >= 1.0) return 1.0;
    double g = 1.0 - std::log(x);
    double neg_logsum = 0.0; // sum of ln g_j over the leading product
    for (int j = 1; j < chain.m; ++j) {
        neg_logsum += std::log(g);
        g = 1.0 + std::log(g);
    }
    const double ln_gm = std::log(g);
    switch (chain.tail.kind) {
        case TailKind::Square:
            return std::exp(-(neg_logsum + 2.0 * ln_gm));
        case TailKind::Power:
            return std::exp(-(neg_logsum + chain.tail.beta * ln_gm));
        case TailKind::RhoStar: {
            const double rho = eval_rho_star(chain.m, chain.tail.beta, x);
            return std::exp(-(neg_logsum + (1.0 + rho) * ln_gm));
        }
    }
    return 0.0; // unreachable
}

double chain_antiderivative(const WeightChain& chain, double T) {
    if (chain.tail.kind != TailKind::Square)
        throw std::invalid_argument("chain_antiderivative: only the Square tail has L_m as antiderivative");
    if (!(T > 0.0) || T > chain.R) throw std::domain_error("chain_antiderivative: T must lie in (0, R]");
    return eval_L(chain.m, T / chain.R);
}

double chain_over_t_integral(const WeightChain& chain, double a, double T) {
    if (!(T > 0.0) || T > chain.R) throw std::domain_error("chain_over_t_integral: T must lie in (0, R]");
    if (a < 0.0 || a > T) throw std::domain_error("chain_over_t_integral: need 0 <= a <= T");
    int m = chain.m;
    double p = 2.0;
    if (chain.tail.kind == TailKind::Power) {
        p = chain.tail.beta;
    } else if (chain.tail.kind == TailKind::RhoStar) {
        // pointwise identity: chain(m, RhoStar(b)) == chain(m+1, Power(b))
        m += 1;
        p = chain.tail.beta;
    }
    // antiderivative of chain(x)/x in terms of z = L_m(x/R):
    //   p != 1 : z^{p-1}/(p-1),   p == 1 : ln z
    auto F = [&](double x) -> double {
        const double z = eval_L(m, x / chain.R);
        if (p == 1.0) return (z == 0.0) ? -kInf : std::log(z);
        if (z == 0.0) return (p > 1.0) ? 0.0 : kInf; // 0^{p-1}
        return std::pow(z, p - 1.0) / (p - 1.0);
    };
    const double upper = F(T);
    const double lower = (a == 0.0) ? ((p > 1.0) ? 0.0 : -kInf) : F(a);
    return upper - lower;
}

QuadResult chain_over_t_quadrature(const WeightChain& chain, double T, double rel_tol) {
    if (!(T > 0.0) || T > chain.R) throw std::domain_error("chain_over_t_quadrature: T must lie in (0, R]");
    int m = chain.m;
    double p = 2.0;
    if (chain.tail.kind == TailKind::Power) p = chain.tail.beta;
    if (chain.tail.kind == TailKind::RhoStar) {
        m += 1;
        p = chain.tail.beta;
    }
    if (!(p > 1.0))
        throw std::invalid_argument("chain_over_t_quadrature: integral over (0,T] diverges for beta <= 1");
    if (m > 60) throw std::invalid_argument("chain_over_t_quadrature: m > 60 unsupported");

    const WeightChain eff(m, chain.R, Tail::power(p));

    // Region A: x in [x_B, T] with x_B = R e^{-vB}. Substituting x = T e^{-v}
    // turns chain(x)/x dx into chain(T e^{-v}) dv, bounded and smooth.
    const double vB = 25.0;
    const double xB = chain.R * std::exp(-vB);
    double valueA = 0.0, errA = 0.0;
    double v_hi = 0.0;
    if (T > xB) {
        v_hi = std::log(T / xB);
        QuadResult ra = adaptive_quadrature([&](double v) { return eval_chain(eff, T * std::exp(-v)); },
                                            0.0, v_hi, rel_tol * 0.25);
        valueA = ra.value;
        errA = ra.error;
    }

    // Region B: x in (0, min(T, x_B)].  Iterated-log coordinates: with
    // v_0 = -ln(x/R), v_{j+1} = ln v_j, the integration variable is
    // w = v_{m-1} and the integrand telescopes to
    //     P(w) = exp(-sum_j eps_j) * g_m^{-p},   g_m = 1 + w + eps_{m-1},
    // where eps_0 = 0 and eps_j = log1p((1+eps_{j-1})/v_{j-1}).  P decays like
    // (1+w)^{-p}, so the sub-double-precision tail of x is reachable.
    auto cascade = [&](double w) -> double {
        // reciprocals 1/v_j for j = 0..m-2, descending from the deepest level
        double recip[64];
        double v = w; // v_{m-1}
        for (int j = m - 2; j >= 0; --j) {
            recip[j] = (v > 700.0) ? 0.0 : std::exp(-v);
            v = (v > 700.0) ? kInf : std::exp(v);
        }
        double eps = 0.0, eps_sum = 0.0;
        for (int j = 1; j <= m - 1; ++j) {
            eps = std::log1p((1.0 + eps) * recip[j - 1]);
            eps_sum += eps;
        }
        const double gm = 1.0 + w + eps;
        return std::exp(-eps_sum) * std::pow(gm, -p);
    };
    // w-coordinate of a given x (forward recursion)
    auto w_of_x = [&](double x) {
        double v = -std::log(x / chain.R);
        for (int j = 0; j < m - 1; ++j) v = std::log(v);
        return v;
    };

    const double x_top = std::min(T, xB);
    const double w_lo = w_of_x(x_top);
    double w_hi = 1e6;
    std::vector<double> knots;
    for (double w = 10.0; w < w_hi; w *= 10.0) knots.push_back(w);
    QuadResult rb = adaptive_quadrature_split(cascade, w_lo, w_hi, knots, rel_tol * 0.25);

    double value = valueA + rb.value;
    double err = errA + rb.error;

    // truncation tail: int_{w_hi}^inf P <= (1+w_hi)^{1-p}/(p-1)
    auto tail_bound = [&](double w) { return std::pow(1.0 + w, 1.0 - p) / (p - 1.0); };
    double tb = tail_bound(w_hi);
    if (tb > 0.2 * rel_tol * value) {
        double w_end = std::pow((p - 1.0) * 0.2 * rel_tol * value, -1.0 / (p - 1.0)) - 1.0;
        w_end = std::min(w_end, 1e300);
        if (w_end > w_hi) {
            std::vector<double> far;
            for (double w = w_hi * 10.0; w < w_end; w *= 10.0) far.push_back(w);
            QuadResult ext = adaptive_quadrature_split(cascade, w_hi, w_end, far, rel_tol * 0.25);
            value += ext.value;
            err += ext.error;
            w_hi = w_end;
        }
        tb = tail_bound(w_hi);
    }
    return {value, err + tb};
}

double eval_Y(int m, long k) {
    if (m < 1) throw std::invalid_argument("eval_Y: m must be >= 1");
    if (k >= 0) throw std::domain_error("eval_Y: k must be <= -1");
    double g = static_cast<double>(-k);
    for (int j = 1; j < m; ++j) g = 1.0 + std::log(g);
    return 1.0 / g;
}

GapCheck check_Y_gap(int m, long k) {
    if (m < 2) throw std::invalid_argument("check_Y_gap: m must be >= 2");
    if (k >= 0) throw std::domain_error("check_Y_gap: k must be <= -1");
    const double lhs = eval_Y(m, k) - eval_Y(m, k - 1);
    double prod = 1.0;
    for (int j = 1; j <= m - 1; ++j) prod *= eval_Y(j, k);
    const double ym = eval_Y(m, k);
    const double rhs = prod * ym * ym / std::ldexp(1.0, m + 1);
    return {lhs, rhs, lhs >= rhs};
}

bool check_L_below_Y(int m, long k, double R, int samples) {
    if (!(R > 1.0)) throw std::invalid_argument("check_L_below_Y: R must exceed 1");
    if (k >= 0) throw std::domain_error("check_L_below_Y: k must be <= -1");
    if (samples < 2) throw std::invalid_argument("check_L_below_Y: need at least 2 samples");
    const double lo = std::pow(3.0, static_cast<double>(k));
    const double hi = 3.0 * lo;
    const double top = hi * (1.0 - 1e-12); // endpoint-eps, interval is half-open
    const double ym = eval_Y(m, k);
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (top - lo) * static_cast<double>(i) / (samples - 1);
        if (!(eval_L(m, x / R) < ym)) return false;
    }
    return true;
}

double theta_domination_constant(double theta) {
    if (!(theta > 0.0)) throw std::domain_error("theta_domination_constant: theta must be > 0");
    double r = theta;
    if (theta > 1.0) {
        // theta = n1 + r with r in (0,1]; integer theta takes r = 1
        const double n1 = std::ceil(theta) - 1.0;
        r = theta - n1;
    }
    return (2.0 / r) * (2.0 / r) * std::exp(r - 2.0);
}

bool check_theta_domination(int m, double theta, const std::vector<double>& t_grid) {
    const double C = theta_domination_constant(theta);
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) throw std::domain_error("check_theta_domination: grid point outside (0,1)");
        const double lhs = std::pow(eval_L(m, t), theta);
        const double Lnext = eval_L(m + 1, t);
        if (!(lhs <= C * Lnext * Lnext)) return false;
    }
    return true;
}

BoundCheck check_L_lower_bound_at_inv_R(int m, double R) {
    if (!(R > 1.0)) throw std::invalid_argument("check_L_lower_bound_at_inv_R: R must exceed 1");
    const double value = eval_L(m, 1.0 / R);
    const double bound = 1.0 / ((m + 1) * R);
    return {value, bound, value >= bound};
}

double eval_rho_star(int m, double beta, double t) {
    if (m < 1) throw std::invalid_argument("eval_rho_star: m must be >= 1");
    if (!(t > 0.0) || !(t < 1.0)) throw std::domain_error("eval_rho_star: t must lie in (0,1)");
    // G_j = 1 - ln L_j(t) with L_0(t) = t; then rho* = beta ln G_m / ln G_{m-1}.
    double G = 1.0 - std::log(t); // G_0
    for (int j = 1; j <= m - 1; ++j) G = 1.0 + std::log(G);
    const double ln_Gm1 = std::log(G);    // ln G_{m-1}
    const double Gm = 1.0 + ln_Gm1;       // G_m
    return beta * std::log(Gm) / ln_Gm1;
}

} // namespace hardylab
