#include "hardylab/functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

// standard C-infinity profile with peak 1 and support |r| < 1
double bump_profile(double r) {
    const double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    return std::exp(-r2 / (1.0 - r2));
}

double bump_profile_deriv(double r) {
    const double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    const double q = 1.0 - r2;
    return bump_profile(r) * (-2.0 * r / (q * q));
}

// clamped cubic drop 1 -> 0 over tau in [0,1]
double smoothstep_down(double tau) {
    if (tau <= 0.0) return 1.0;
    if (tau >= 1.0) return 0.0;
    return 1.0 - tau * tau * (3.0 - 2.0 * tau);
}

double smoothstep_down_deriv(double tau) {
    if (tau <= 0.0 || tau >= 1.0) return 0.0;
    return -6.0 * tau * (1.0 - tau);
}

// axis-aligned rectangle hull usable for quadrature, when the domain is one
std::optional<Region> rect_of(const Domain& omega) {
    switch (omega.kind()) {
        case Domain::Kind::Interval: return Region::interval(0.0, omega.interval_length());
        case Domain::Kind::AxisBox:
            if (omega.dim() == 1) return Region::interval(0.0, omega.box_height());
            return Region::box(-omega.box_halfwidth(), omega.box_halfwidth(), 0.0, omega.box_height());
        case Domain::Kind::Polygon: {
            const auto& v = omega.vertices();
            if (v.size() == 4) {
                double xlo = std::min({v[0][0], v[1][0], v[2][0], v[3][0]});
                double xhi = std::max({v[0][0], v[1][0], v[2][0], v[3][0]});
                double ylo = std::min({v[0][1], v[1][1], v[2][1], v[3][1]});
                double yhi = std::max({v[0][1], v[1][1], v[2][1], v[3][1]});
                for (const Point& p : v)
                    if ((p[0] != xlo && p[0] != xhi) || (p[1] != ylo && p[1] != yhi)) return std::nullopt;
                return Region::box(xlo, xhi, ylo, yhi);
            }
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

} // namespace

TestFunction TestFunction::linear() {
    TestFunction u;
    u.kind_ = Kind::Linear;
    u.dim_ = 1;
    return u;
}

TestFunction TestFunction::constant(double c, int dim) {
    TestFunction u;
    u.kind_ = Kind::Constant;
    u.dim_ = dim;
    u.c_ = c;
    u.known_tv_ = 0.0;
    return u;
}

TestFunction TestFunction::step(std::vector<double> breaks, std::vector<double> values) {
    if (breaks.size() != values.size() + 1 || values.empty())
        throw std::invalid_argument("TestFunction::step: need breaks.size() == values.size()+1");
    if (!std::is_sorted(breaks.begin(), breaks.end()))
        throw std::invalid_argument("TestFunction::step: breaks must be sorted");
    TestFunction u;
    u.kind_ = Kind::Step;
    u.dim_ = 1;
    u.breaks_ = std::move(breaks);
    u.values_ = std::move(values);
    double tv = 0.0;
    for (size_t i = 1; i < u.values_.size(); ++i) tv += std::fabs(u.values_[i] - u.values_[i - 1]);
    u.known_tv_ = tv;
    return u;
}

TestFunction TestFunction::smooth_bump(double center, double radius, double amplitude) {
    return bump_mixture({center}, {radius}, {amplitude});
}

TestFunction TestFunction::bump_mixture(std::vector<double> centers, std::vector<double> radii,
                                        std::vector<double> amplitudes) {
    if (centers.size() != radii.size() || centers.size() != amplitudes.size() || centers.empty())
        throw std::invalid_argument("TestFunction::bump_mixture: size mismatch");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("TestFunction::bump_mixture: radius must be > 0");
    TestFunction u;
    u.kind_ = Kind::BumpMixture;
    u.dim_ = 1;
    u.centers_ = std::move(centers);
    u.radii_ = std::move(radii);
    u.amps_ = std::move(amplitudes);
    if (u.centers_.size() == 1) u.known_tv_ = 2.0 * std::fabs(u.amps_[0]);
    return u;
}

TestFunction TestFunction::spline_linear(double a, double b, std::vector<double> knot_values) {
    if (knot_values.size() < 2) throw std::invalid_argument("TestFunction::spline_linear: need >= 2 knots");
    if (!(b > a)) throw std::invalid_argument("TestFunction::spline_linear: empty interval");
    TestFunction u;
    u.kind_ = Kind::SplineLinear;
    u.dim_ = 1;
    u.breaks_.resize(knot_values.size());
    for (size_t i = 0; i < knot_values.size(); ++i)
        u.breaks_[i] = a + (b - a) * static_cast<double>(i) / (knot_values.size() - 1);
    u.values_ = std::move(knot_values);
    double tv = 0.0;
    for (size_t i = 1; i < u.values_.size(); ++i) tv += std::fabs(u.values_[i] - u.values_[i - 1]);
    u.known_tv_ = tv;
    return u;
}

TestFunction TestFunction::boundary_plateau(const Domain& omega, double c, double eps, double band) {
    if (c == 0.0) throw std::invalid_argument("TestFunction::boundary_plateau: c must be nonzero");
    if (!(eps > 0.0) || !(band > 0.0)) throw std::invalid_argument("TestFunction::boundary_plateau: eps, band > 0");
    TestFunction u;
    u.kind_ = Kind::BoundaryPlateau;
    u.dim_ = omega.dim();
    u.c_ = c;
    u.eps_ = eps;
    u.band_ = band;
    u.plateau_domain_ = std::make_shared<Domain>(omega);
    if (omega.dim() == 1 && eps + band < omega.max_inradius())
        u.known_tv_ = 2.0 * std::fabs(c); // one drop per endpoint
    return u;
}

TestFunction TestFunction::tensor(TestFunction profile) {
    if (profile.dim() != 1) throw std::invalid_argument("TestFunction::tensor: profile must be 1D");
    TestFunction u;
    u.kind_ = Kind::Tensor;
    u.dim_ = 2;
    u.grid_ = 512;
    u.inner_ = std::make_shared<TestFunction>(std::move(profile));
    return u;
}

TestFunction TestFunction::coordinate() {
    TestFunction u;
    u.kind_ = Kind::Coordinate;
    u.dim_ = 2;
    u.grid_ = 512;
    return u;
}

TestFunction TestFunction::with_grid(int g) const {
    if (g < 8) throw std::invalid_argument("TestFunction::with_grid: grid too small");
    TestFunction u = *this;
    u.grid_ = g;
    return u;
}

double TestFunction::value(double x) const {
    switch (kind_) {
        case Kind::Linear: return x;
        case Kind::Constant: return c_;
        case Kind::Step: {
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            if (it == breaks_.begin()) return values_.front();
            size_t i = static_cast<size_t>(it - breaks_.begin()) - 1;
            return values_[std::min(i, values_.size() - 1)];
        }
        case Kind::BumpMixture: {
            double s = 0.0;
            for (size_t i = 0; i < centers_.size(); ++i)
                s += amps_[i] * bump_profile((x - centers_[i]) / radii_[i]);
            return s;
        }
        case Kind::SplineLinear: {
            if (x <= breaks_.front()) return values_.front();
            if (x >= breaks_.back()) return values_.back();
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            size_t i = static_cast<size_t>(it - breaks_.begin());
            const double t = (x - breaks_[i - 1]) / (breaks_[i] - breaks_[i - 1]);
            return values_[i - 1] + t * (values_[i] - values_[i - 1]);
        }
        case Kind::BoundaryPlateau: {
            const double d = plateau_domain_->distance_to_boundary(x);
            return c_ * smoothstep_down((d - eps_) / band_);
        }
        default: throw std::logic_error("TestFunction::value(double): function is not 1D");
    }
}

double TestFunction::value(const Point& p) const {
    if (dim_ == 1) return value(p[0]);
    switch (kind_) {
        case Kind::Constant: return c_;
        case Kind::Tensor: return inner_->value(p[0]);
        case Kind::Coordinate: return p[0];
        case Kind::BoundaryPlateau: {
            const double d = plateau_domain_->distance_to_boundary(p);
            return c_ * smoothstep_down((d - eps_) / band_);
        }
        default: throw std::logic_error("TestFunction::value(Point): unsupported 2D kind");
    }
}

double TestFunction::derivative(double x) const {
    switch (kind_) {
        case Kind::Linear: return 1.0;
        case Kind::Constant: return 0.0;
        case Kind::Step: return 0.0;
        case Kind::BumpMixture: {
            double s = 0.0;
            for (size_t i = 0; i < centers_.size(); ++i)
                s += amps_[i] * bump_profile_deriv((x - centers_[i]) / radii_[i]) / radii_[i];
            return s;
        }
        case Kind::SplineLinear: {
            if (x <= breaks_.front() || x >= breaks_.back()) return 0.0;
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            size_t i = static_cast<size_t>(it - breaks_.begin());
            return (values_[i] - values_[i - 1]) / (breaks_[i] - breaks_[i - 1]);
        }
        case Kind::BoundaryPlateau: {
            const double L = plateau_domain_->interval_length();
            const double d = std::min(x, L - x);
            const double sgn = (x < 0.5 * L) ? 1.0 : -1.0;
            return c_ * smoothstep_down_deriv((d - eps_) / band_) * sgn / band_;
        }
        default: throw std::logic_error("TestFunction::derivative: function is not 1D");
    }
}

std::vector<double> TestFunction::breakpoints() const {
    switch (kind_) {
        case Kind::Step:
        case Kind::SplineLinear: return breaks_;
        case Kind::BumpMixture: {
            std::vector<double> b;
            for (size_t i = 0; i < centers_.size(); ++i) {
                b.push_back(centers_[i] - radii_[i]);
                b.push_back(centers_[i]);
                b.push_back(centers_[i] + radii_[i]);
            }
            std::sort(b.begin(), b.end());
            return b;
        }
        case Kind::BoundaryPlateau: {
            const double L = plateau_domain_->interval_length();
            return {eps_, eps_ + band_, 0.5 * L, L - eps_ - band_, L - eps_};
        }
        default: return {};
    }
}

std::vector<std::pair<double, double>> TestFunction::jumps() const {
    std::vector<std::pair<double, double>> j;
    if (kind_ == Kind::Step)
        for (size_t i = 1; i < values_.size(); ++i)
            j.emplace_back(breaks_[i], std::fabs(values_[i] - values_[i - 1]));
    return j;
}

const TestFunction& TestFunction::profile() const {
    if (kind_ != Kind::Tensor) throw std::logic_error("TestFunction::profile: not a tensor function");
    return *inner_;
}

std::string TestFunction::label() const {
    char buf[160];
    switch (kind_) {
        case Kind::Linear: return "linear";
        case Kind::Constant:
            std::snprintf(buf, sizeof buf, "const(%.6g)", c_);
            return buf;
        case Kind::Step:
            std::snprintf(buf, sizeof buf, "step(k=%zu)", values_.size());
            return buf;
        case Kind::BumpMixture:
            if (centers_.size() == 1) {
                std::snprintf(buf, sizeof buf, "bump(c=%.6g,r=%.6g,a=%.6g)", centers_[0], radii_[0], amps_[0]);
                return buf;
            }
            std::snprintf(buf, sizeof buf, "bumpmix(K=%zu)", centers_.size());
            return buf;
        case Kind::SplineLinear:
            std::snprintf(buf, sizeof buf, "spline(k=%zu)", values_.size());
            return buf;
        case Kind::BoundaryPlateau:
            std::snprintf(buf, sizeof buf, "plateau(c=%.6g,eps=%.6g,band=%.6g)", c_, eps_, band_);
            return buf;
        case Kind::Tensor: return "tensor[" + inner_->label() + "]";
        case Kind::Coordinate: return "coordinate";
    }
    return "?";
}

nlohmann::json TestFunction::to_json() const {
    nlohmann::json j;
    j["kind"] = label();
    j["dim"] = dim_;
    j["grid"] = grid_;
    if (known_tv_) j["known_tv"] = *known_tv_;
    if (known_l1_) j["known_l1"] = *known_l1_;
    switch (kind_) {
        case Kind::Step:
        case Kind::SplineLinear:
            j["breaks"] = breaks_;
            j["values"] = values_;
            break;
        case Kind::BumpMixture:
            j["centers"] = centers_;
            j["radii"] = radii_;
            j["amplitudes"] = amps_;
            break;
        case Kind::BoundaryPlateau:
            j["c"] = c_;
            j["eps"] = eps_;
            j["band"] = band_;
            break;
        case Kind::Constant: j["c"] = c_; break;
        case Kind::Tensor: j["profile"] = inner_->to_json(); break;
        default: break;
    }
    return j;
}

double average(const TestFunction& u, const Region& E) {
    if (!(E.measure() > 0.0)) throw std::invalid_argument("average: region has zero measure");
    if (E.dim != u.dim()) throw std::invalid_argument("average: region/function dimension mismatch");
    if (E.dim == 1) {
        QuadResult r = adaptive_quadrature_split([&](double x) { return u.value(x); }, E.lo[0], E.hi[0],
                                                 u.breakpoints(), 1e-10, 1e-14);
        return r.value / E.measure();
    }
    // separable 2D kinds first
    switch (u.kind()) {
        case TestFunction::Kind::Constant: return u.value(Point{0, 0});
        case TestFunction::Kind::Coordinate: return 0.5 * (E.lo[0] + E.hi[0]);
        case TestFunction::Kind::Tensor: {
            Region ex = Region::interval(E.lo[0], E.hi[0]);
            return average(u.profile(), ex);
        }
        default: {
            // tensor Simpson fallback at the function's grid resolution
            int N = std::min(u.grid(), 513);
            if (N % 2 == 0) ++N;
            const double hx = (E.hi[0] - E.lo[0]) / (N - 1);
            const double hy = (E.hi[1] - E.lo[1]) / (N - 1);
            auto w1 = [N](int i) { return (i == 0 || i == N - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
            double s = 0.0;
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < N; ++k)
                    s += w1(i) * w1(k) * u.value(Point{E.lo[0] + i * hx, E.lo[1] + k * hy});
            s *= hx * hy / 9.0;
            return s / E.measure();
        }
    }
}

double tv_seminorm(const TestFunction& u, const Domain& omega) {
    if (u.known_tv()) return *u.known_tv();
    auto rect = rect_of(omega);
    if (!rect) throw std::invalid_argument("tv_seminorm: unsupported domain");
    if (u.dim() == 1) {
        QuadResult r = adaptive_quadrature_split([&](double x) { return std::fabs(u.derivative(x)); },
                                                 rect->lo[0], rect->hi[0], u.breakpoints(), 1e-9, 1e-13);
        double tv = r.value;
        for (const auto& [loc, h] : u.jumps())
            if (loc > rect->lo[0] && loc < rect->hi[0]) tv += h;
        return tv;
    }
    switch (u.kind()) {
        case TestFunction::Kind::Tensor: {
            // profile TV over the x-range, times the box height
            const TestFunction& p = u.profile();
            QuadResult r = adaptive_quadrature_split([&](double x) { return std::fabs(p.derivative(x)); },
                                                     rect->lo[0], rect->hi[0], p.breakpoints(), 1e-9, 1e-13);
            double tv = r.value;
            for (const auto& [loc, h] : p.jumps())
                if (loc > rect->lo[0] && loc < rect->hi[0]) tv += h;
            return tv * (rect->hi[1] - rect->lo[1]);
        }
        case TestFunction::Kind::Coordinate: return omega.measure();
        default: {
            // centered differences on the sampling grid
            const int N = std::min(u.grid(), 512);
            const double hx = (rect->hi[0] - rect->lo[0]) / N;
            const double hy = (rect->hi[1] - rect->lo[1]) / N;
            double tv = 0.0;
            for (int i = 1; i < N; ++i)
                for (int k = 1; k < N; ++k) {
                    const double x = rect->lo[0] + (i + 0.5) * hx;
                    const double y = rect->lo[1] + (k + 0.5) * hy;
                    const double gx = (u.value(Point{x + hx, y}) - u.value(Point{x - hx, y})) / (2 * hx);
                    const double gy = (u.value(Point{x, y + hy}) - u.value(Point{x, y - hy})) / (2 * hy);
                    tv += std::hypot(gx, gy) * hx * hy;
                }
            return tv;
        }
    }
}

double l1_norm(const TestFunction& u, const Domain& omega) {
    if (u.known_l1()) return *u.known_l1();
    auto rect = rect_of(omega);
    if (!rect) throw std::invalid_argument("l1_norm: unsupported domain");
    if (u.dim() == 1) {
        QuadResult r = adaptive_quadrature_split([&](double x) { return std::fabs(u.value(x)); }, rect->lo[0],
                                                 rect->hi[0], u.breakpoints(), 1e-10, 1e-14);
        return r.value;
    }
    switch (u.kind()) {
        case TestFunction::Kind::Constant: return std::fabs(u.value(Point{0, 0})) * omega.measure();
        case TestFunction::Kind::Tensor: {
            QuadResult r = adaptive_quadrature_split([&](double x) { return std::fabs(u.profile().value(x)); },
                                                     rect->lo[0], rect->hi[0], u.profile().breakpoints(), 1e-10,
                                                     1e-14);
            return r.value * (rect->hi[1] - rect->lo[1]);
        }
        case TestFunction::Kind::Coordinate: {
            QuadResult r = adaptive_quadrature_split([](double x) { return std::fabs(x); }, rect->lo[0],
                                                     rect->hi[0], {0.0}, 1e-12, 1e-14);
            return r.value * (rect->hi[1] - rect->lo[1]);
        }
        default: {
            const int N = std::min(u.grid(), 512);
            const double hx = (rect->hi[0] - rect->lo[0]) / N;
            const double hy = (rect->hi[1] - rect->lo[1]) / N;
            double s = 0.0;
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < N; ++k)
                    s += std::fabs(u.value(Point{rect->lo[0] + (i + 0.5) * hx, rect->lo[1] + (k + 0.5) * hy}));
            return s * hx * hy;
        }
    }
}

void write_grid_csv(const TestFunction& u, const Domain& omega, const std::string& path) {
    auto rect = rect_of(omega);
    if (!rect) throw std::invalid_argument("write_grid_csv: unsupported domain");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path);
    char buf[128];
    if (u.dim() == 1) {
        out << "x,value\n";
        const int N = u.grid();
        for (int i = 0; i <= N; ++i) {
            const double x = rect->lo[0] + (rect->hi[0] - rect->lo[0]) * i / N;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, u.value(x));
            out << buf;
        }
    } else {
        out << "x,y,value\n";
        const int N = std::min(u.grid(), 256);
        for (int i = 0; i <= N; ++i)
            for (int k = 0; k <= N; ++k) {
                const double x = rect->lo[0] + (rect->hi[0] - rect->lo[0]) * i / N;
                const double y = rect->lo[1] + (rect->hi[1] - rect->lo[1]) * k / N;
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, y, u.value(Point{x, y}));
                out << buf;
            }
    }
}

} // namespace hardylab
