#include "hardylab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

double seg_distance(const Point& p, const Point& a, const Point& b) {
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    const double wx = p[0] - a[0], wy = p[1] - a[1];
    const double vv = vx * vx + vy * vy;
    double t = (vv > 0.0) ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::hypot(dx, dy);
}

bool segments_intersect_interior(const Point& a, const Point& b, const Point& c, const Point& d) {
    auto cross = [](double ox, double oy, double ax, double ay, double bx, double by) {
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
    };
    const double d1 = cross(c[0], c[1], d[0], d[1], a[0], a[1]);
    const double d2 = cross(c[0], c[1], d[0], d[1], b[0], b[1]);
    const double d3 = cross(a[0], a[1], b[0], b[1], c[0], c[1]);
    const double d4 = cross(a[0], a[1], b[0], b[1], d[0], d[1]);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

} // namespace

double GraphFn::operator()(double xp) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Slope: return a * xp;
        case Kind::Abs: return a * std::fabs(xp);
        case Kind::Sine: return a * std::sin(omega * xp);
    }
    return 0.0;
}

double GraphFn::lipschitz() const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Slope: return std::fabs(a);
        case Kind::Abs: return std::fabs(a);
        case Kind::Sine: return std::fabs(a * omega);
    }
    return 0.0;
}

Domain Domain::interval(double D) {
    if (!(D > 0.0)) throw std::invalid_argument("Domain::interval: D must be > 0");
    Domain d;
    d.kind_ = Kind::Interval;
    d.dim_ = 1;
    d.D_ = D;
    return d;
}

Domain Domain::axis_box(int d, int n, double h) {
    if (d != 1 && d != 2) throw std::invalid_argument("Domain::axis_box: d must be 1 or 2");
    if (n < 1) throw std::invalid_argument("Domain::axis_box: n must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("Domain::axis_box: h must be > 0");
    Domain dom;
    dom.kind_ = Kind::AxisBox;
    dom.dim_ = d;
    dom.n_ = n;
    dom.h_ = h;
    return dom;
}

Domain Domain::graph(GraphFn gamma, double M, double x_lo, double x_hi, double y_hi) {
    if (!(x_hi > x_lo)) throw std::invalid_argument("Domain::graph: empty x range");
    // sampled Lipschitz verification
    const int N = 512;
    for (int i = 0; i + 1 < N; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (N - 1.0);
        const double y = x_lo + (x_hi - x_lo) * (i + 1) / (N - 1.0);
        if (std::fabs(gamma(x) - gamma(y)) > M * std::fabs(x - y) * (1.0 + 1e-9))
            throw std::invalid_argument("Domain::graph: sampled Lipschitz constant exceeds M");
    }
    Domain d;
    d.kind_ = Kind::Graph;
    d.dim_ = 2;
    d.gamma_ = gamma;
    d.M_ = M;
    d.x_lo_ = x_lo;
    d.x_hi_ = x_hi;
    d.y_hi_ = y_hi;
    return d;
}

Domain Domain::polygon(std::vector<Point> v) {
    if (v.size() < 3) throw std::invalid_argument("Domain::polygon: need >= 3 vertices");
    double area2 = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        area2 += p[0] * q[1] - q[0] * p[1];
    }
    if (!(area2 > 0.0)) throw std::invalid_argument("Domain::polygon: vertices must be counterclockwise");
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) {
            if (i == j || (i + 1) % v.size() == j || (j + 1) % v.size() == i) continue;
            if (segments_intersect_interior(v[i], v[(i + 1) % v.size()], v[j], v[(j + 1) % v.size()]))
                throw std::invalid_argument("Domain::polygon: polygon is not simple");
        }
    Domain d;
    d.kind_ = Kind::Polygon;
    d.dim_ = 2;
    d.vertices_ = std::move(v);
    return d;
}

double Domain::measure() const {
    switch (kind_) {
        case Kind::Interval: return 2.0 * D_;
        case Kind::AxisBox: return (dim_ == 1) ? h_ : (2.0 * n_) * h_;
        case Kind::Polygon: {
            double area2 = 0.0;
            for (size_t i = 0; i < vertices_.size(); ++i) {
                const Point& p = vertices_[i];
                const Point& q = vertices_[(i + 1) % vertices_.size()];
                area2 += p[0] * q[1] - q[0] * p[1];
            }
            return 0.5 * area2;
        }
        case Kind::Graph: {
            double area = 0.0;
            const int cells = 64;
            for (int i = 0; i < cells; ++i) {
                const double a = x_lo_ + (x_hi_ - x_lo_) * i / cells;
                const double b = x_lo_ + (x_hi_ - x_lo_) * (i + 1) / cells;
                area += gauss_legendre_16([&](double x) { return y_hi_ - gamma_(x); }, a, b);
            }
            return area;
        }
    }
    return 0.0;
}

bool Domain::contains(const Point& x) const {
    switch (kind_) {
        case Kind::Interval: return x[0] > 0.0 && x[0] < 2.0 * D_;
        case Kind::AxisBox:
            if (dim_ == 1) return x[0] > 0.0 && x[0] < h_;
            return x[0] > -n_ && x[0] < n_ && x[1] > 0.0 && x[1] < h_;
        case Kind::Graph:
            return x[0] > x_lo_ && x[0] < x_hi_ && x[1] > gamma_(x[0]) && x[1] < y_hi_;
        case Kind::Polygon: {
            bool inside = false;
            const size_t n = vertices_.size();
            for (size_t i = 0, j = n - 1; i < n; j = i++) {
                const Point& pi = vertices_[i];
                const Point& pj = vertices_[j];
                if ((pi[1] > x[1]) != (pj[1] > x[1]) &&
                    x[0] < (pj[0] - pi[0]) * (x[1] - pi[1]) / (pj[1] - pi[1]) + pi[0])
                    inside = !inside;
            }
            return inside;
        }
    }
    return false;
}

double Domain::distance_to_boundary(double x) const {
    return distance_to_boundary(Point{x, 0.0});
}

double Domain::distance_to_boundary(const Point& x) const {
    switch (kind_) {
        case Kind::Interval: {
            if (x[0] < 0.0 || x[0] > 2.0 * D_) throw std::domain_error("distance_to_boundary: point outside domain");
            return std::min(x[0], 2.0 * D_ - x[0]);
        }
        case Kind::AxisBox: {
            if (dim_ == 1) {
                if (x[0] < 0.0 || x[0] > h_) throw std::domain_error("distance_to_boundary: point outside domain");
                return std::min(x[0], h_ - x[0]);
            }
            if (x[0] < -n_ || x[0] > n_ || x[1] < 0.0 || x[1] > h_)
                throw std::domain_error("distance_to_boundary: point outside domain");
            return std::min(std::min(x[0] + n_, n_ - x[0]), std::min(x[1], h_ - x[1]));
        }
        case Kind::Polygon: {
            if (!contains(x)) {
                // allow boundary points themselves
                double dmin = 1e300;
                for (size_t i = 0; i < vertices_.size(); ++i)
                    dmin = std::min(dmin, seg_distance(x, vertices_[i], vertices_[(i + 1) % vertices_.size()]));
                if (dmin > 1e-12) throw std::domain_error("distance_to_boundary: point outside domain");
                return 0.0;
            }
            double dmin = 1e300;
            for (size_t i = 0; i < vertices_.size(); ++i)
                dmin = std::min(dmin, seg_distance(x, vertices_[i], vertices_[(i + 1) % vertices_.size()]));
            return dmin;
        }
        case Kind::Graph: {
            const double vert = x[1] - gamma_(x[0]);
            if (!(vert > 0.0)) throw std::domain_error("distance_to_boundary: point not above graph");
            // the minimizer of dist(x, (xi, gamma(xi))) lies within |xi - x'| <= vert
            double lo = x[0] - vert, hi = x[0] + vert;
            auto dist = [&](double xi) {
                const double dx = x[0] - xi;
                const double dy = x[1] - gamma_(xi);
                return std::sqrt(dx * dx + dy * dy);
            };
            const int N = 1024;
            double best = vert, best_xi = x[0];
            for (int i = 0; i <= N; ++i) {
                const double xi = lo + (hi - lo) * i / N;
                const double d = dist(xi);
                if (d < best) {
                    best = d;
                    best_xi = xi;
                }
            }
            double cell = (hi - lo) / N;
            // bracket zoom around the best sample until the window is negligible
            for (int iter = 0; iter < 60 && cell > 1e-15 * (1.0 + std::fabs(best_xi)); ++iter) {
                const double a = best_xi - cell, b = best_xi + cell;
                const int K = 24;
                for (int i = 0; i <= K; ++i) {
                    const double xi = a + (b - a) * i / K;
                    const double d = dist(xi);
                    if (d < best) {
                        best = d;
                        best_xi = xi;
                    }
                }
                cell = (b - a) / K;
            }
            return best;
        }
    }
    return 0.0;
}

double Domain::max_inradius() const {
    switch (kind_) {
        case Kind::Interval: return D_;
        case Kind::AxisBox: return (dim_ == 1) ? 0.5 * h_ : std::min(static_cast<double>(n_), 0.5 * h_);
        case Kind::Polygon: {
            // sampled estimate; exact value is not needed, only an upper scale
            double best = 0.0;
            double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
            for (const Point& p : vertices_) {
                xlo = std::min(xlo, p[0]);
                xhi = std::max(xhi, p[0]);
                ylo = std::min(ylo, p[1]);
                yhi = std::max(yhi, p[1]);
            }
            const int N = 64;
            for (int i = 1; i < N; ++i)
                for (int j = 1; j < N; ++j) {
                    Point p{xlo + (xhi - xlo) * i / N, ylo + (yhi - ylo) * j / N};
                    if (contains(p)) best = std::max(best, distance_to_boundary(p));
                }
            return best;
        }
        case Kind::Graph: {
            double best = 0.0;
            const int N = 48;
            for (int i = 1; i < N; ++i)
                for (int j = 1; j < N; ++j) {
                    Point p{x_lo_ + (x_hi_ - x_lo_) * i / N, y_hi_ * j / static_cast<double>(N)};
                    if (contains(p)) best = std::max(best, distance_to_boundary(p));
                }
            return best;
        }
    }
    return 0.0;
}

double Domain::interval_length() const {
    if (kind_ == Kind::Interval) return 2.0 * D_;
    if (kind_ == Kind::AxisBox && dim_ == 1) return h_;
    throw std::logic_error("interval_length: not a 1D domain");
}

nlohmann::json Domain::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Interval:
            j["variant"] = "interval";
            j["D"] = D_;
            break;
        case Kind::AxisBox:
            j["variant"] = "axis_box";
            j["d"] = dim_;
            j["n"] = n_;
            j["h"] = h_;
            break;
        case Kind::Graph: {
            j["variant"] = "graph";
            j["kind"] = static_cast<int>(gamma_.kind);
            j["a"] = gamma_.a;
            j["omega"] = gamma_.omega;
            j["M"] = M_;
            j["x_lo"] = x_lo_;
            j["x_hi"] = x_hi_;
            j["y_hi"] = y_hi_;
            nlohmann::json poly = nlohmann::json::array();
            const int N = 64;
            for (int i = 0; i <= N; ++i) {
                const double x = x_lo_ + (x_hi_ - x_lo_) * i / N;
                poly.push_back({x, gamma_(x)});
            }
            j["polyline"] = poly;
            break;
        }
        case Kind::Polygon: {
            j["variant"] = "polygon";
            nlohmann::json verts = nlohmann::json::array();
            for (const Point& p : vertices_) verts.push_back({p[0], p[1]});
            j["vertices"] = verts;
            break;
        }
    }
    return j;
}

Domain Domain::from_json(const nlohmann::json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "interval") return interval(j.at("D").get<double>());
    if (variant == "axis_box")
        return axis_box(j.at("d").get<int>(), static_cast<int>(j.at("n").get<double>()), j.at("h").get<double>());
    if (variant == "graph") {
        GraphFn g;
        g.kind = static_cast<GraphFn::Kind>(j.at("kind").get<int>());
        g.a = j.at("a").get<double>();
        g.omega = j.at("omega").get<double>();
        return graph(g, j.at("M").get<double>(), j.at("x_lo").get<double>(), j.at("x_hi").get<double>(),
                     j.at("y_hi").get<double>());
    }
    if (variant == "polygon") {
        std::vector<Point> v;
        for (const auto& p : j.at("vertices")) v.push_back({p[0].get<double>(), p[1].get<double>()});
        return polygon(std::move(v));
    }
    throw std::invalid_argument("Domain::from_json: unknown variant " + variant);
}

std::vector<DyadicLayer> dyadic_layers(int n, int d, long ell) {
    if (n < 1) throw std::invalid_argument("dyadic_layers: n must be >= 1");
    if (d != 1 && d != 2) throw std::invalid_argument("dyadic_layers: d must be 1 or 2");
    if (ell > -1) throw std::invalid_argument("dyadic_layers: ell must be <= -1");
    std::vector<DyadicLayer> layers;
    for (long k = ell; k <= -1; ++k) {
        DyadicLayer layer;
        layer.k = k;
        layer.y0 = std::pow(3.0, static_cast<double>(k));
        layer.y1 = 3.0 * layer.y0;
        const double side = 2.0 * layer.y0;
        if (d == 1) {
            layer.cubes.push_back({{layer.y0, 0.0}, {layer.y1, 0.0}});
        } else {
            const double count_f = std::pow(3.0, static_cast<double>(-k)) * n;
            if (count_f > 1e7) throw std::invalid_argument("dyadic_layers: layer has too many cubes");
            const long count = std::lround(count_f);
            layer.cubes.reserve(count);
            for (long i = 0; i < count; ++i) {
                const double x0 = -static_cast<double>(n) + side * static_cast<double>(i);
                layer.cubes.push_back({{x0, layer.y0}, {x0 + side, layer.y1}});
            }
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

std::size_t cube_above(const DyadicLayer& layer_k, std::size_t i, const DyadicLayer& layer_k1) {
    if (layer_k1.k != layer_k.k + 1) throw std::invalid_argument("cube_above: layers are not adjacent");
    if (i >= layer_k.cubes.size()) throw std::out_of_range("cube_above: cube index");
    const double cx = layer_k.cubes[i].center()[0];
    const double side_up = layer_k1.cubes[0].hi[0] - layer_k1.cubes[0].lo[0];
    const double origin = layer_k1.cubes[0].lo[0];
    const auto j = static_cast<std::size_t>(std::floor((cx - origin) / side_up));
    return std::min(j, layer_k1.cubes.size() - 1);
}

Point graph_flatten(const GraphFn& gamma, const Point& x) {
    return {x[0], x[1] - gamma(x[0])};
}

Point graph_unflatten(const GraphFn& gamma, const Point& xi) {
    return {xi[0], xi[1] + gamma(xi[0])};
}

DeltaEquivalence delta_equivalence_check(const Domain& dom, int sample_count, std::uint64_t seed) {
    if (dom.kind() != Domain::Kind::Graph)
        throw std::invalid_argument("delta_equivalence_check: needs a graph domain");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto [xlo, xhi] = dom.graph_x_range();
    double c1 = 1e300, c2 = 0.0;
    int accepted = 0;
    while (accepted < sample_count) {
        // stay away from the lateral clip edges so only the graph boundary matters
        const double margin = 0.25 * (xhi - xlo);
        const double xp = xlo + margin + (xhi - xlo - 2.0 * margin) * unif(rng);
        const double g = dom.graph_fn()(xp);
        const double yd = g + (0.5 - 1e-3) * unif(rng) + 1e-3; // xi_d in (1e-3, ~0.5)
        Point p{xp, yd};
        if (!dom.contains(p)) continue;
        const double xi_d = yd - g;
        const double delta = dom.distance_to_boundary(p);
        const double ratio = delta / xi_d;
        c1 = std::min(c1, ratio);
        c2 = std::max(c2, ratio);
        ++accepted;
    }
    return {c1, c2};
}

} // namespace hardylab
