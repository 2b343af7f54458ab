#include "hardylab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hardylab {

ParametricFamily ParametricFamily::bump_mixture(int K, const Domain& omega, bool amplitude_free) {
    if (K < 1) throw std::invalid_argument("bump_mixture: K must be >= 1");
    if (omega.dim() != 1) throw std::invalid_argument("bump_mixture: 1D domains only");
    ParametricFamily f;
    f.kind = Kind::BumpMixture;
    f.K = K;
    f.length = omega.interval_length();
    f.amplitude_free = amplitude_free;
    for (int i = 0; i < K; ++i) {
        f.lo.push_back(0.05 * f.length); // center
        f.hi.push_back(0.95 * f.length);
        f.lo.push_back(0.02 * f.length); // width
        f.hi.push_back(0.45 * f.length);
        if (amplitude_free) {
            f.lo.push_back(0.2);
            f.hi.push_back(5.0);
        }
    }
    return f;
}

ParametricFamily ParametricFamily::spline_profile(int interior_knots, const Domain& omega) {
    if (interior_knots < 1) throw std::invalid_argument("spline_profile: need >= 1 interior knot");
    if (omega.dim() != 1) throw std::invalid_argument("spline_profile: 1D domains only");
    ParametricFamily f;
    f.kind = Kind::SplineProfile;
    f.K = interior_knots;
    f.length = omega.interval_length();
    f.lo.assign(interior_knots, -1.0);
    f.hi.assign(interior_knots, 1.0);
    return f;
}

TestFunction ParametricFamily::make(const std::vector<double>& params) const {
    if (static_cast<int>(params.size()) != n_params())
        throw std::invalid_argument("ParametricFamily::make: wrong parameter count");
    if (kind == Kind::BumpMixture) {
        std::vector<double> centers, radii, amps;
        const int stride = amplitude_free ? 3 : 2;
        for (int i = 0; i < K; ++i) {
            const double c = params[i * stride];
            double w = params[i * stride + 1];
            // keep the support strictly inside (0, length)
            w = std::min(w, 0.999 * std::min(c, length - c));
            centers.push_back(c);
            radii.push_back(std::max(w, 1e-6 * length));
            amps.push_back(amplitude_free ? params[i * stride + 2] : 1.0);
        }
        return TestFunction::bump_mixture(centers, radii, amps);
    }
    // spline through 0, interior knots, 0 on [0.05L, 0.95L]
    std::vector<double> values;
    values.push_back(0.0);
    for (double v : params) values.push_back(v);
    values.push_back(0.0);
    return TestFunction::spline_linear(0.05 * length, 0.95 * length, values);
}

double ExtremalObjective::eval(const TestFunction& u, bool tight) const {
    try {
        const double tv = tv_seminorm(u, omega);
        if (!(tv > 0.0)) return 0.0;
        if (kind == Kind::Main) {
            HardyCase c(u, omega, WeightChain(m, R, Tail::square()));
            c.centered = true;
            c.rel_tol = tight ? 1e-7 : 1e-6;
            return weighted_lhs(c) / (std::ldexp(1.0, m) * tv);
        }
        HardyCase c(u, omega, WeightChain(m, R, Tail::square()));
        c.centered = false;
        c.s_exp = s;
        c.rel_tol = tight ? 1e-7 : 1e-6;
        const double lhs = weighted_lhs(c);
        const double J = gagliardo_1d(u, 0.0, omega.interval_length(), s, tight ? 1e-7 : 1e-6).value;
        const double l1 = l1_norm(u, omega);
        const double denom = std::ldexp(1.0, m) * ((1.0 - s) * J + l1);
        return denom > 0.0 ? lhs / denom : 0.0;
    } catch (const DivergenceSignal&) {
        return 0.0;
    } catch (const EstimatorError&) {
        return 0.0;
    }
}

nlohmann::json ExtremalResult::to_json() const {
    nlohmann::json j;
    j["best_params"] = best_params;
    j["best_ratio"] = best_ratio;
    j["evaluations"] = evaluations;
    j["seed"] = seed;
    j["restart_dispersion"] = restart_dispersion;
    j["restart_best"] = restart_best;
    j["trace_length"] = best_trace.size();
    return j;
}

namespace {

struct RestartOutcome {
    std::vector<double> params;
    double value = 0.0;
    long evals = 0;
    std::vector<double> trace;
    bool any_nonzero = false;
};

RestartOutcome run_restart(const ParametricFamily& fam, const ExtremalObjective& obj, long budget,
                           std::uint64_t sub_seed) {
    const int n = fam.n_params();
    RestartOutcome out;
    std::mt19937_64 rng(sub_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto clip = [&](std::vector<double>& p) {
        for (int i = 0; i < n; ++i) p[i] = std::clamp(p[i], fam.lo[i], fam.hi[i]);
    };
    auto f = [&](const std::vector<double>& p) {
        ++out.evals;
        const double v = obj.eval(fam.make(p));
        if (v != 0.0) out.any_nonzero = true;
        return v;
    };
    auto note_best = [&](double v, const std::vector<double>& p) {
        if (out.trace.empty() || v > out.value) {
            out.value = v;
            out.params = p;
        }
        out.trace.push_back(out.value); // best-so-far, non-decreasing
    };

    if (n == 0) {
        const double v = f({});
        note_best(v, {});
        return out;
    }

    // initial simplex: random vertex plus axis steps of a quarter range
    std::vector<std::vector<double>> simplex;
    std::vector<double> fx;
    {
        std::vector<double> p0(n);
        for (int i = 0; i < n; ++i) p0[i] = fam.lo[i] + (fam.hi[i] - fam.lo[i]) * unif(rng);
        simplex.push_back(p0);
        for (int i = 0; i < n; ++i) {
            std::vector<double> p = p0;
            p[i] += 0.25 * (fam.hi[i] - fam.lo[i]) * (p[i] > 0.5 * (fam.lo[i] + fam.hi[i]) ? -1.0 : 1.0);
            clip(p);
            simplex.push_back(p);
        }
        for (auto& p : simplex) {
            const double v = f(p);
            fx.push_back(v);
            note_best(v, p);
        }
    }

    // Nelder-Mead on -f (maximization), standard coefficients
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    while (out.evals < budget) {
        std::vector<size_t> ord(simplex.size());
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return fx[a] > fx[b]; });
        const size_t best = ord.front(), worst = ord.back(), second_worst = ord[ord.size() - 2];

        std::vector<double> centroid(n, 0.0);
        for (size_t k = 0; k < simplex.size(); ++k) {
            if (k == worst) continue;
            for (int i = 0; i < n; ++i) centroid[i] += simplex[k][i];
        }
        for (int i = 0; i < n; ++i) centroid[i] /= static_cast<double>(simplex.size() - 1);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (int i = 0; i < n; ++i) p[i] = centroid[i] + t * (centroid[i] - simplex[worst][i]);
            clip(p);
            return p;
        };

        std::vector<double> pr = blend(alpha);
        const double fr = f(pr);
        note_best(fr, pr);
        if (fr > fx[best]) {
            std::vector<double> pe = blend(gamma);
            const double fe = f(pe);
            note_best(fe, pe);
            if (fe > fr) {
                simplex[worst] = pe;
                fx[worst] = fe;
            } else {
                simplex[worst] = pr;
                fx[worst] = fr;
            }
        } else if (fr > fx[second_worst]) {
            simplex[worst] = pr;
            fx[worst] = fr;
        } else {
            std::vector<double> pc = blend(-rho);
            const double fc = f(pc);
            note_best(fc, pc);
            if (fc > fx[worst]) {
                simplex[worst] = pc;
                fx[worst] = fc;
            } else {
                for (size_t k = 0; k < simplex.size(); ++k) {
                    if (k == best) continue;
                    for (int i = 0; i < n; ++i)
                        simplex[k][i] = simplex[best][i] + sigma * (simplex[k][i] - simplex[best][i]);
                    fx[k] = f(simplex[k]);
                    note_best(fx[k], simplex[k]);
                }
            }
        }
        if (out.evals >= budget) break;
    }

    // deterministic coordinate polish of the incumbent
    std::vector<double> p = out.params;
    double fp = out.value;
    double step = 0.05;
    long polish = 0;
    while (step > 1e-10 && polish < 800) {
        bool improved = false;
        for (int i = 0; i < n; ++i) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> q = p;
                q[i] += dir * step * (fam.hi[i] - fam.lo[i]);
                clip(q);
                if (q[i] == p[i]) continue;
                const double fq = f(q);
                ++polish;
                note_best(fq, q);
                if (fq > fp) {
                    p = q;
                    fp = fq;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    out.params = p;
    out.value = fp;
    return out;
}

} // namespace

ExtremalResult maximize_ratio(const ParametricFamily& family, const ExtremalObjective& objective,
                              long budget_per_restart, int restarts, std::uint64_t seed) {
    if (budget_per_restart < 100) throw std::invalid_argument("maximize_ratio: budget must be >= 100 per restart");
    if (restarts < 3) throw std::invalid_argument("maximize_ratio: need >= 3 restarts");

    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(restarts);
    bool any_nonzero = false;
    for (int r = 0; r < restarts; ++r) {
        const std::uint64_t sub = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r + 1);
        outcomes.push_back(run_restart(family, objective, budget_per_restart, sub));
        any_nonzero = any_nonzero || outcomes.back().any_nonzero;
    }
    if (!any_nonzero) throw EstimatorError("maximize_ratio: degenerate family (all sampled ratios are 0)");

    ExtremalResult res;
    res.seed = seed;
    int winner = 0;
    for (int r = 0; r < restarts; ++r) {
        res.evaluations += outcomes[r].evals;
        // tight re-evaluation of each restart incumbent
        const double tight = objective.eval(family.make(outcomes[r].params), /*tight=*/true);
        res.restart_best.push_back(tight);
        if (tight > res.restart_best[winner]) winner = r;
    }
    res.best_params = outcomes[winner].params;
    res.best_ratio = res.restart_best[winner];
    res.best_trace = outcomes[winner].trace;

    const double mean = std::accumulate(res.restart_best.begin(), res.restart_best.end(), 0.0) / restarts;
    double var = 0.0;
    for (double v : res.restart_best) var += (v - mean) * (v - mean);
    var /= restarts;
    res.restart_dispersion = (mean > 0.0) ? std::sqrt(var) / mean : 0.0;
    return res;
}

std::vector<GrowthRow> constant_growth_profile(const ParametricFamily& family, ExtremalObjective objective,
                                               int m_lo, int m_hi, long budget_per_restart, int restarts,
                                               std::uint64_t seed) {
    std::vector<GrowthRow> rows;
    for (int m = m_lo; m <= m_hi; ++m) {
        objective.m = m;
        ExtremalResult r = maximize_ratio(family, objective, budget_per_restart, restarts, seed);
        rows.push_back({m, r.best_ratio, r.best_ratio / std::ldexp(1.0, m)});
    }
    return rows;
}

} // namespace hardylab
