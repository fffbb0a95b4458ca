#pragma once

// Regions, piecewise-constant potentials and the geometric queries used by
// the walkers: membership, distance to the boundary, boundary projection and
// uniform sampling on spheres. Dimensions 1 to 3.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kwos {

class RandomStream;

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point in R^n, n in {1,2,3}.
class Point {
public:
    static constexpr int kMaxDim = 3;

    Point() = default;
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<const double> coords);

    [[nodiscard]] static Point zero(int dim);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::span<const double> coords() const noexcept {
        return {c_.data(), static_cast<std::size_t>(dim_)};
    }

    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] double dot(const Point& o) const noexcept;

    Point& operator+=(const Point& o) noexcept;
    Point& operator-=(const Point& o) noexcept;
    Point& operator*=(double s) noexcept;

    friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
    friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
    friend Point operator*(Point a, double s) noexcept { return a *= s; }
    friend Point operator*(double s, Point a) noexcept { return a *= s; }
    friend bool operator==(const Point& a, const Point& b) noexcept;

private:
    std::array<double, kMaxDim> c_{};
    int dim_ = 0;
};

[[nodiscard]] double distance(const Point& a, const Point& b) noexcept;
[[nodiscard]] std::string to_string(const Point& p);

struct Interval {
    double a;
    double b;
};

struct Ball {
    Point center;
    double radius;
};

/// Strictly convex polygon, vertices in counter-clockwise order.
struct ConvexPolygon {
    std::vector<Point> vertices;
};

using Region = std::variant<Interval, Ball, ConvexPolygon>;

// Validating constructors; all throw GeometryError on a broken invariant.
[[nodiscard]] Region make_interval(double a, double b);
[[nodiscard]] Region make_ball(Point center, double radius);
[[nodiscard]] Region make_polygon(std::vector<Point> vertices);
[[nodiscard]] Region make_rectangle(double x0, double y0, double x1, double y1);

[[nodiscard]] int dimension(const Region& region) noexcept;
[[nodiscard]] double diameter(const Region& region) noexcept;
/// Axis-aligned bounding box as (lo, hi).
[[nodiscard]] std::pair<Point, Point> bounding_box(const Region& region);
[[nodiscard]] std::string describe(const Region& region);

/// Negative inside, zero on the boundary, positive outside. Its magnitude is
/// the Euclidean distance to the boundary.
[[nodiscard]] double signed_distance(const Region& region, const Point& p);

/// True iff p lies in the open interior.
[[nodiscard]] bool contains(const Region& region, const Point& p);

/// True iff p lies in the closure, up to `tol` outside.
[[nodiscard]] bool closure_contains(const Region& region, const Point& p, double tol = 0.0);

/// Distance from an interior point to the boundary. Throws if p is not interior.
[[nodiscard]] double distance_to_boundary(const Region& region, const Point& p);

/// Nearest boundary point; ties go to the first edge in storage order.
/// Also defined for exterior points of convex regions.
[[nodiscard]] Point project_to_boundary(const Region& region, const Point& p);

/// Uniform point on the sphere of the given radius; in 1D center +/- radius.
[[nodiscard]] Point sample_sphere(const Point& center, double radius, RandomStream& rng);

struct Cell {
    Region region;
    double lambda;
};

/// Outer domain D with disjoint subdomains D_m carrying killing rates lambda_m,
/// i.e. the potential q = sum_m lambda_m 1_{D_m}.
class PiecewiseDomain {
public:
    PiecewiseDomain(Region outer, std::vector<Cell> cells);

    [[nodiscard]] int dimension() const noexcept { return dim_; }
    [[nodiscard]] const Region& outer() const noexcept { return outer_; }
    [[nodiscard]] const std::vector<Cell>& cells() const noexcept { return cells_; }
    [[nodiscard]] const Cell& cell(std::size_t m) const { return cells_.at(m); }
    [[nodiscard]] double diameter() const noexcept { return diam_; }

    /// Index (0-based) of the lowest-numbered cell whose closure holds p.
    /// Throws GeometryError when no closure holds p.
    [[nodiscard]] std::size_t subdomain_index(const Point& p) const;

    /// q(p). Zero outside the outer closure.
    [[nodiscard]] double potential(const Point& p) const;

    /// Distance from p to the part of the boundary of cell m that is not on
    /// the outer boundary; +inf if the cell has no interior interface.
    [[nodiscard]] double interface_distance(std::size_t m, const Point& p) const;

    /// Distance from p to the full boundary of cell m (outer parts included).
    [[nodiscard]] double cell_boundary_distance(std::size_t m, const Point& p) const;

    /// Tolerance used for closure and on-boundary tests.
    [[nodiscard]] double tolerance() const noexcept { return tol_; }

    /// Statistical partition check by rejection sampling in the bounding box
    /// of the outer region. Returns one message per violated property.
    [[nodiscard]] std::vector<std::string> validate_partition(std::size_t samples = 10000,
                                                              std::uint64_t seed = 0x5eed) const;

private:
    Region outer_;
    std::vector<Cell> cells_;
    // Per cell: for polygons one flag per edge, for intervals two (a, b), for
    // balls one. True means the piece is an interior interface.
    std::vector<std::vector<bool>> interface_pieces_;
    int dim_ = 0;
    double diam_ = 0.0;
    double tol_ = 0.0;
};

}  // namespace kwos
