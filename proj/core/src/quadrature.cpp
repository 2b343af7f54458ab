#include "hardylab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace hardylab {

namespace {

// Kronrod-15 abscissae/weights on [-1,1] plus embedded Gauss-7 weights.
constexpr int kKronrodHalf = 8;
constexpr double kNodes[kKronrodHalf] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813,
};
constexpr double kWeightK[kKronrodHalf] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529,
};
// Gauss-7 weights, nonzero at the even Kronrod nodes.
constexpr double kWeightG[kKronrodHalf] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0,
};

struct Panel {
    double a, b, value, error;
};

} // namespace

QuadResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    {
        const double y = f(c);
        k15 += kWeightK[0] * y;
        g7 += kWeightG[0] * y;
    }
    for (int i = 1; i < kKronrodHalf; ++i) {
        const double dx = h * kNodes[i];
        const double y = f(c + dx) + f(c - dx);
        k15 += kWeightK[i] * y;
        g7 += kWeightG[i] * y;
    }
    k15 *= h;
    g7 *= h;
    double err = 200.0 * std::fabs(k15 - g7);
    err = err * std::sqrt(err);
    // guard: error never reported below roundoff level of the panel
    err = std::max(err, 1e-16 * std::fabs(k15));
    return {k15, err};
}

QuadResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                               double rel_tol, double abs_tol, int max_panels) {
    return adaptive_quadrature_split(f, a, b, {}, rel_tol, abs_tol, max_panels);
}

QuadResult adaptive_quadrature_split(const std::function<double(double)>& f, double a, double b,
                                     const std::vector<double>& breakpoints, double rel_tol,
                                     double abs_tol, int max_panels) {
    if (!(b > a)) return {0.0, 0.0};
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Panel> panels;
    panels.reserve(64);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        QuadResult r = gauss_kronrod_15(f, edges[i], edges[i + 1]);
        panels.push_back({edges[i], edges[i + 1], r.value, r.error});
    }

    auto totals = [&panels]() {
        double v = 0.0, e = 0.0;
        for (const Panel& p : panels) {
            v += p.value;
            e += p.error;
        }
        return QuadResult{v, e};
    };

    while (static_cast<int>(panels.size()) < max_panels) {
        QuadResult t = totals();
        if (t.error <= std::max(rel_tol * std::fabs(t.value), abs_tol)) return t;
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) break; // interval at roundoff width
        QuadResult left = gauss_kronrod_15(f, p.a, mid);
        QuadResult right = gauss_kronrod_15(f, mid, p.b);
        panels[worst] = {p.a, mid, left.value, left.error};
        panels.push_back({mid, p.b, right.value, right.error});
    }
    QuadResult t = totals();
    if (t.error > std::max(10.0 * rel_tol * std::fabs(t.value), abs_tol) &&
        t.error > 1e-12 * std::fabs(t.value)) {
        throw QuadratureError("adaptive quadrature did not converge to requested tolerance");
    }
    return t;
}

double gauss_legendre_16(const std::function<double(double)>& f, double a, double b) {
    static constexpr double x[8] = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
    };
    static constexpr double w[8] = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
    };
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += w[i] * (f(c + h * x[i]) + f(c - h * x[i]));
    return s * h;
}

} // namespace hardylab
