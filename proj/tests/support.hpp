#pragma once

#include "kwos/geometry.hpp"
#include "kwos/random_stream.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace kwos::test {

// chi2.ppf(0.999, 15) from scipy: 16-bin uniformity test at significance 0.001.
inline constexpr double kChi2Crit16Bins = 37.69729821835383;

inline double chi_square_uniform(std::span<const int> counts) {
    double total = 0.0;
    for (int c : counts) total += c;
    const double expected = total / static_cast<double>(counts.size());
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    return chi2;
}

// Angle of a 2D point about `center`, binned into `bins` equal sectors.
inline int angular_bin(const Point& p, const Point& center, int bins) {
    double a = std::atan2(p[1] - center[1], p[0] - center[0]);
    if (a < 0) a += 2.0 * std::numbers::pi;
    int b = static_cast<int>(a / (2.0 * std::numbers::pi) * bins);
    return b >= bins ? bins - 1 : b;
}

// Uniform samples on the boundary of an outer region (by arc length).
inline std::vector<Point> sample_boundary(const Region& region, std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    std::vector<Point> out;
    if (const auto* s = std::get_if<Interval>(&region)) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(Point{i % 2 ? s->b : s->a});
    } else if (const auto* b = std::get_if<Ball>(&region)) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(sample_sphere(b->center, b->radius, rng));
    } else {
        const auto& v = std::get<ConvexPolygon>(region).vertices;
        double perimeter = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) perimeter += distance(v[i], v[(i + 1) % v.size()]);
        for (std::size_t k = 0; k < n; ++k) {
            double s = rng.uniform() * perimeter;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Point& a = v[i];
                const Point& e = v[(i + 1) % v.size()];
                const double len = distance(a, e);
                if (s <= len || i + 1 == v.size()) {
                    const double t = std::min(1.0, s / len);
                    out.push_back(a + (e - a) * t);
                    break;
                }
                s -= len;
            }
        }
    }
    return out;
}

inline PiecewiseDomain unit_disk(double lambda) {
    return PiecewiseDomain(make_ball(Point{0.0, 0.0}, 1.0), {{make_ball(Point{0.0, 0.0}, 1.0), lambda}});
}

inline PiecewiseDomain example1_domain() {
    return PiecewiseDomain(make_interval(0.0, 3.5), {{make_interval(0.0, 1.0), 0.0},
                                                     {make_interval(1.0, 2.0), 2.0},
                                                     {make_interval(2.0, 3.5), 0.0}});
}

inline PiecewiseDomain example3_domain(double lambda2 = 2.0) {
    return PiecewiseDomain(make_rectangle(0.0, 0.0, 1.5, 1.5),
                           {{make_polygon({Point{0.0, 0.0}, Point{1.5, 0.0}, Point{1.5, 1.5}}), 0.0},
                            {make_polygon({Point{0.0, 0.0}, Point{1.5, 1.5}, Point{0.0, 1.5}}), lambda2}});
}

}  // namespace kwos::test
