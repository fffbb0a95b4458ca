#include "kwos/geometry.hpp"

#include "kwos/random_stream.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace kwos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(const Point& p, int dim) {
    if (p.dim() != dim) {
        throw GeometryError("dimension mismatch: point " + to_string(p) + " has dimension " +
                            std::to_string(p.dim()) + ", region has dimension " +
                            std::to_string(dim));
    }
}

double cross(double ax, double ay, double bx, double by) noexcept { return ax * by - ay * bx; }

// Closest point on segment [a, b] to p, as the parameter t in [0, 1].
double segment_parameter(const Point& a, const Point& b, const Point& p) noexcept {
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    const double len2 = ex * ex + ey * ey;
    const double t = ((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / len2;
    return std::clamp(t, 0.0, 1.0);
}

double segment_distance(const Point& a, const Point& b, const Point& p) noexcept {
    const double t = segment_parameter(a, b, p);
    const double dx = a[0] + t * (b[0] - a[0]) - p[0];
    const double dy = a[1] + t * (b[1] - a[1]) - p[1];
    return std::hypot(dx, dy);
}

double signed_distance_impl(const Interval& s, const Point& p) {
    require_dim(p, 1);
    return std::max(s.a - p[0], p[0] - s.b);
}

double signed_distance_impl(const Ball& s, const Point& p) {
    require_dim(p, s.center.dim());
    return distance(p, s.center) - s.radius;
}

double signed_distance_impl(const ConvexPolygon& s, const Point& p) {
    require_dim(p, 2);
    const auto& v = s.vertices;
    const std::size_t n = v.size();
    bool inside = true;
    double dmin = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        if (cross(b[0] - a[0], b[1] - a[1], p[0] - a[0], p[1] - a[1]) <= 0.0) inside = false;
        dmin = std::min(dmin, segment_distance(a, b, p));
    }
    return inside ? -dmin : dmin;
}

Point project_impl(const Interval& s, const Point& p) {
    require_dim(p, 1);
    return std::abs(p[0] - s.a) <= std::abs(p[0] - s.b) ? Point{s.a} : Point{s.b};
}

Point project_impl(const Ball& s, const Point& p) {
    require_dim(p, s.center.dim());
    Point d = p - s.center;
    const double r = d.norm();
    if (r == 0.0) {
        Point e = Point::zero(p.dim());
        e[0] = s.radius;
        return s.center + e;
    }
    return s.center + d * (s.radius / r);
}

Point project_impl(const ConvexPolygon& s, const Point& p) {
    require_dim(p, 2);
    const auto& v = s.vertices;
    const std::size_t n = v.size();
    double best = kInf;
    Point foot;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const double t = segment_parameter(a, b, p);
        Point q{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
        const double d = distance(q, p);
        if (d < best) {
            best = d;
            foot = q;
        }
    }
    return foot;
}

}  // namespace

// ---------------------------------------------------------------------------
// Point

Point::Point(std::initializer_list<double> coords) : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) {
    if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDim)) {
        throw GeometryError("point dimension must be 1, 2 or 3, got " + std::to_string(coords.size()));
    }
    for (double x : coords) {
        if (!std::isfinite(x)) throw GeometryError("point coordinates must be finite");
    }
    std::copy(coords.begin(), coords.end(), c_.begin());
    dim_ = static_cast<int>(coords.size());
}

Point Point::zero(int dim) {
    if (dim < 1 || dim > kMaxDim) throw GeometryError("point dimension must be 1, 2 or 3");
    Point p;
    p.dim_ = dim;
    return p;
}

double Point::norm() const noexcept {
    switch (dim_) {
    case 1: return std::abs(c_[0]);
    case 2: return std::hypot(c_[0], c_[1]);
    default: return std::hypot(c_[0], c_[1], c_[2]);
    }
}

double Point::dot(const Point& o) const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += (*this)[i] * o[i];
    return s;
}

Point& Point::operator+=(const Point& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
}

Point& Point::operator-=(const Point& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
}

Point& Point::operator*=(double s) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
}

bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

double distance(const Point& a, const Point& b) noexcept { return (a - b).norm(); }

std::string to_string(const Point& p) {
    std::string s = "(";
    char buf[32];
    for (int i = 0; i < p.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", p[i]);
        if (i) s += ", ";
        s += buf;
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Regions

Region make_interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw GeometryError("interval requires finite a < b");
    }
    return Interval{a, b};
}

Region make_ball(Point center, double radius) {
    if (center.dim() < 1) throw GeometryError("ball center has no dimension");
    if (!std::isfinite(radius) || !(radius > 0.0)) throw GeometryError("ball radius must be positive");
    return Ball{center, radius};
}

Region make_polygon(std::vector<Point> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (const auto& v : vertices) {
        if (v.dim() != 2) throw GeometryError("polygon vertices must be 2D");
    }
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % n];
        const Point& c = vertices[(i + 2) % n];
        const double ux = b[0] - a[0], uy = b[1] - a[1];
        const double wx = c[0] - b[0], wy = c[1] - b[1];
        const double z = cross(ux, uy, wx, wy);
        if (!(z > 0.0)) {
            throw GeometryError("polygon must be strictly convex and counter-clockwise (turn at vertex " +
                                std::to_string((i + 1) % n) + ")");
        }
        turning += std::atan2(z, ux * wx + uy * wy);
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
        throw GeometryError("polygon winds more than once");
    }
    return ConvexPolygon{std::move(vertices)};
}

Region make_rectangle(double x0, double y0, double x1, double y1) {
    return make_polygon({Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}});
}

int dimension(const Region& region) noexcept {
    struct V {
        int operator()(const Interval&) const { return 1; }
        int operator()(const Ball& b) const { return b.center.dim(); }
        int operator()(const ConvexPolygon&) const { return 2; }
    };
    return std::visit(V{}, region);
}

double diameter(const Region& region) noexcept {
    struct V {
        double operator()(const Interval& s) const { return s.b - s.a; }
        double operator()(const Ball& b) const { return 2.0 * b.radius; }
        double operator()(const ConvexPolygon& s) const {
            double d = 0.0;
            for (const auto& p : s.vertices)
                for (const auto& q : s.vertices) d = std::max(d, distance(p, q));
            return d;
        }
    };
    return std::visit(V{}, region);
}

std::pair<Point, Point> bounding_box(const Region& region) {
    struct V {
        std::pair<Point, Point> operator()(const Interval& s) const { return {Point{s.a}, Point{s.b}}; }
        std::pair<Point, Point> operator()(const Ball& b) const {
            Point lo = b.center, hi = b.center;
            for (int i = 0; i < lo.dim(); ++i) {
                lo[i] -= b.radius;
                hi[i] += b.radius;
            }
            return {lo, hi};
        }
        std::pair<Point, Point> operator()(const ConvexPolygon& s) const {
            Point lo = s.vertices.front(), hi = lo;
            for (const auto& v : s.vertices) {
                for (int i = 0; i < 2; ++i) {
                    lo[i] = std::min(lo[i], v[i]);
                    hi[i] = std::max(hi[i], v[i]);
                }
            }
            return {lo, hi};
        }
    };
    return std::visit(V{}, region);
}

std::string describe(const Region& region) {
    struct V {
        std::string operator()(const Interval& s) const {
            return "interval" + to_string(Point{s.a, s.b});
        }
        std::string operator()(const Ball& b) const {
            return "ball(center=" + to_string(b.center) + ", radius=" + std::to_string(b.radius) + ")";
        }
        std::string operator()(const ConvexPolygon& s) const {
            std::string out = "polygon[";
            for (std::size_t i = 0; i < s.vertices.size(); ++i) {
                if (i) out += ", ";
                out += to_string(s.vertices[i]);
            }
            return out + "]";
        }
    };
    return std::visit(V{}, region);
}

double signed_distance(const Region& region, const Point& p) {
    return std::visit([&](const auto& s) { return signed_distance_impl(s, p); }, region);
}

bool contains(const Region& region, const Point& p) { return signed_distance(region, p) < 0.0; }

bool closure_contains(const Region& region, const Point& p, double tol) {
    return signed_distance(region, p) <= tol;
}

double distance_to_boundary(const Region& region, const Point& p) {
    const double sd = signed_distance(region, p);
    if (!(sd < 0.0)) throw GeometryError("point " + to_string(p) + " is not interior to " + describe(region));
    return -sd;
}

Point project_to_boundary(const Region& region, const Point& p) {
    return std::visit([&](const auto& s) { return project_impl(s, p); }, region);
}

Point sample_sphere(const Point& center, double radius, RandomStream& rng) {
    if (!(radius > 0.0)) throw GeometryError("sphere radius must be positive");
    Point y = center;
    switch (center.dim()) {
    case 1:
        y[0] += rng.uniform() < 0.5 ? -radius : radius;
        break;
    case 2: {
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        y[0] += radius * std::cos(theta);
        y[1] += radius * std::sin(theta);
        break;
    }
    case 3: {
        // Archimedes: the axial coordinate of a uniform sphere point is uniform.
        const double z = 2.0 * rng.uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        y[0] += radius * s * std::cos(phi);
        y[1] += radius * s * std::sin(phi);
        y[2] += radius * z;
        break;
    }
    default:
        throw GeometryError("sphere sampling needs dimension 1, 2 or 3");
    }
    return y;
}

// ---------------------------------------------------------------------------
// PiecewiseDomain

PiecewiseDomain::PiecewiseDomain(Region outer, std::vector<Cell> cells)
    : outer_(std::move(outer)), cells_(std::move(cells)) {
    dim_ = kwos::dimension(outer_);
    diam_ = kwos::diameter(outer_);
    tol_ = 1e-12 * diam_;
    if (cells_.empty()) throw GeometryError("domain needs at least one cell");
    for (std::size_t m = 0; m < cells_.size(); ++m) {
        const Cell& c = cells_[m];
        if (kwos::dimension(c.region) != dim_) {
            throw GeometryError("cell " + std::to_string(m) + " dimension differs from the outer region");
        }
        if (!std::isfinite(c.lambda) || c.lambda < 0.0) {
            throw GeometryError("cell " + std::to_string(m) + " has a negative or non-finite lambda");
        }
    }

    // A boundary piece of a cell is an interface unless it lies on the outer
    // boundary. For a convex outer region a segment whose ends and midpoint
    // are on the boundary lies entirely on it.
    const double on_tol = 1e-9 * diam_;
    auto on_outer = [&](const Point& p) { return std::abs(signed_distance(outer_, p)) <= on_tol; };
    interface_pieces_.reserve(cells_.size());
    for (const Cell& c : cells_) {
        std::vector<bool> flags;
        if (const auto* s = std::get_if<Interval>(&c.region)) {
            flags = {!on_outer(Point{s->a}), !on_outer(Point{s->b})};
        } else if (const auto* b = std::get_if<Ball>(&c.region)) {
            bool all_on = true;
            for (int i = 0; i < dim_; ++i) {
                for (double sign : {-1.0, 1.0}) {
                    Point q = b->center;
                    q[i] += sign * b->radius;
                    all_on = all_on && on_outer(q);
                }
            }
            flags = {!all_on};
        } else {
            const auto& v = std::get<ConvexPolygon>(c.region).vertices;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Point& a = v[i];
                const Point& e = v[(i + 1) % v.size()];
                const Point mid = (a + e) * 0.5;
                flags.push_back(!(on_outer(a) && on_outer(e) && on_outer(mid)));
            }
        }
        interface_pieces_.push_back(std::move(flags));
    }
}

std::size_t PiecewiseDomain::subdomain_index(const Point& p) const {
    for (std::size_t m = 0; m < cells_.size(); ++m) {
        if (closure_contains(cells_[m].region, p, tol_)) return m;
    }
    throw GeometryError("point " + to_string(p) + " lies outside every cell");
}

double PiecewiseDomain::potential(const Point& p) const {
    if (!closure_contains(outer_, p, tol_)) return 0.0;
    return cells_[subdomain_index(p)].lambda;
}

double PiecewiseDomain::interface_distance(std::size_t m, const Point& p) const {
    const Region& r = cells_.at(m).region;
    const auto& flags = interface_pieces_[m];
    double d = kInf;
    if (const auto* s = std::get_if<Interval>(&r)) {
        if (flags[0]) d = std::min(d, std::abs(p[0] - s->a));
        if (flags[1]) d = std::min(d, std::abs(p[0] - s->b));
    } else if (const auto* b = std::get_if<Ball>(&r)) {
        if (flags[0]) d = std::abs(distance(p, b->center) - b->radius);
    } else {
        const auto& v = std::get<ConvexPolygon>(r).vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (flags[i]) d = std::min(d, segment_distance(v[i], v[(i + 1) % v.size()], p));
        }
    }
    return d;
}

double PiecewiseDomain::cell_boundary_distance(std::size_t m, const Point& p) const {
    return std::abs(signed_distance(cells_.at(m).region, p));
}

std::vector<std::string> PiecewiseDomain::validate_partition(std::size_t samples, std::uint64_t seed) const {
    std::vector<std::string> issues;
    RandomStream rng(seed, 0);
    const auto [lo, hi] = bounding_box(outer_);
    bool overlap_seen = false;
    bool gap_seen = false;
    for (std::size_t k = 0; k < samples && !(overlap_seen && gap_seen); ++k) {
        Point p = lo;
        for (int i = 0; i < dim_; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
        if (!contains(outer_, p)) continue;
        std::vector<std::size_t> interior;
        bool covered = false;
        for (std::size_t m = 0; m < cells_.size(); ++m) {
            const double sd = signed_distance(cells_[m].region, p);
            if (sd < 0.0) interior.push_back(m);
            if (sd <= tol_) covered = true;
        }
        if (interior.size() > 1 && !overlap_seen) {
            overlap_seen = true;
            issues.push_back("overlapping cells: cells " + std::to_string(interior[0]) + " and " +
                             std::to_string(interior[1]) + " both contain " + to_string(p));
        }
        if (!covered && !gap_seen) {
            gap_seen = true;
            issues.push_back("incomplete partition: point " + to_string(p) + " of the outer domain lies in no cell");
        }
    }
    return issues;
}

}  // namespace kwos
