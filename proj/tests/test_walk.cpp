#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kwos/kernels.hpp"
#include "kwos/random_stream.hpp"
#include "kwos/walk.hpp"
#include "support.hpp"

#include <array>
#include <cmath>

using namespace kwos;

namespace {

const double kPsi2 = 1.0 / std::cyl_bessel_i(0.0, 2.0);  // psi(2) in 2D

double binomial_sigma(double p, int n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

TEST_CASE("default parameters") {
    const PiecewiseDomain dom = test::example1_domain();
    const SolverParams p = SolverParams::defaults_for(dom);
    CHECK(p.eps_boundary == doctest::Approx(3.5e-3));
    CHECK(p.eps_interface == doctest::Approx(3.5e-2));
    CHECK(p.dt == doctest::Approx(3.5e-3 * 3.5e-3));
    CHECK(p.max_steps == 1'000'000);
    CHECK(std::sqrt(p.dt) < p.eps_interface);
    SolverParams bad = p;
    bad.dt = 0.0;
    CHECK_THROWS((void)bad.validate());
}

TEST_CASE("kwos: first sphere jump from the disk center survives with probability psi") {
    const PiecewiseDomain dom = test::unit_disk(2.0);
    const SolverParams params = SolverParams::defaults_for(dom);
    constexpr int K = 20000;
    int first_jump_survivors = 0;
    for (int k = 0; k < K; ++k) {
        RandomStream rng(11, static_cast<std::uint64_t>(k));
        const WalkOutcome w = kwos_trajectory(dom, Point{0.0, 0.0}, params, rng);
        REQUIRE(w.steps == 1);  // one jump reaches the circle
        first_jump_survivors += w.status == WalkStatus::Absorbed;
    }
    CHECK(std::abs(first_jump_survivors / double(K) - kPsi2) < 3 * binomial_sigma(kPsi2, K));
}

TEST_CASE("kwos with zero rates is classical walk on spheres") {
    const PiecewiseDomain dom = test::unit_disk(0.0);
    const SolverParams params = SolverParams::defaults_for(dom);
    std::array<int, 16> bins{};
    const Point center{0.0, 0.0};
    for (int k = 0; k < 20000; ++k) {
        RandomStream rng(12, static_cast<std::uint64_t>(k));
        const WalkOutcome w = kwos_trajectory(dom, Point{0.0, 0.0}, params, rng);
        REQUIRE(w.status == WalkStatus::Absorbed);
        ++bins[static_cast<std::size_t>(test::angular_bin(*w.exit_point, center, 16))];
    }
    CHECK(test::chi_square_uniform(bins) < test::kChi2Crit16Bins);

    // Mixed layout with the killing switched off: never killed.
    const PiecewiseDomain ex3 = test::example3_domain(0.0);
    const SolverParams p3 = SolverParams::defaults_for(ex3);
    for (int k = 0; k < 300; ++k) {
        RandomStream rng(13, static_cast<std::uint64_t>(k));
        CHECK(kwos_trajectory(ex3, Point{0.6, 0.7}, p3, rng).status == WalkStatus::Absorbed);
    }
}

TEST_CASE("kwos absorbs within eps_boundary of the outer boundary") {
    const PiecewiseDomain dom = test::example3_domain();
    const SolverParams params = SolverParams::defaults_for(dom);
    int absorbed = 0;
    for (int k = 0; k < 500; ++k) {
        RandomStream rng(14, static_cast<std::uint64_t>(k));
        const WalkOutcome w = kwos_trajectory(dom, Point{0.4, 1.1}, params, rng);
        CHECK(w.steps < params.max_steps);
        if (w.status == WalkStatus::Absorbed) {
            ++absorbed;
            CHECK(std::abs(signed_distance(dom.outer(), *w.exit_point)) <= params.eps_boundary + 1e-12);
            CHECK(w.weight == 1.0);
        } else {
            CHECK_FALSE(w.exit_point.has_value());
        }
    }
    CHECK(absorbed > 0);
}

TEST_CASE("kwos errors") {
    const PiecewiseDomain dom(make_rectangle(0, 0, 1, 1), {{make_rectangle(0, 0, 1, 1), 1.0}});
    SolverParams params = SolverParams::defaults_for(dom);
    params.max_steps = 1;
    RandomStream rng(15, 0);
    CHECK_THROWS_AS((void)kwos_trajectory(dom, Point{0.5, 0.5}, params, rng), WalkError);
    params.max_steps = 1000;
    CHECK_THROWS_AS((void)kwos_trajectory(dom, Point{1.5, 0.5}, params, rng), WalkError);
    CHECK_THROWS_AS((void)kwos_trajectory(dom, Point{1.0, 0.5}, params, rng), WalkError);
    CHECK_THROWS_AS((void)kwos_trajectory(dom, Point{0.5}, params, rng), WalkError);
}

TEST_CASE("kwos killing is monotone in the rate under common random numbers") {
    const std::array<double, 4> rates = {0.5, 1.0, 2.0, 4.0};
    for (int k = 0; k < 2000; ++k) {
        bool survived_prev = true;
        for (double lambda : rates) {
            const PiecewiseDomain dom = test::example3_domain(lambda);
            RandomStream rng(16, static_cast<std::uint64_t>(k));
            const WalkOutcome w = kwos_trajectory(dom, Point{0.5, 0.9}, SolverParams::defaults_for(dom), rng);
            const bool survived = w.status == WalkStatus::Absorbed;
            CHECK((survived_prev || !survived));
            survived_prev = survived;
        }
    }
}

TEST_CASE("kwos path recording") {
    const PiecewiseDomain dom = test::example3_domain();
    const SolverParams params = SolverParams::defaults_for(dom);
    RandomStream rng(17, 3);
    const WalkOutcome w = kwos_trajectory(dom, Point{0.5, 1.0}, params, rng, true);
    REQUIRE(!w.path.empty());
    CHECK(w.path.front().position == Point{0.5, 1.0});
    const StepMode last = w.path.back().mode;
    CHECK((last == StepMode::Absorb || last == StepMode::Kill));
    CHECK(static_cast<std::int64_t>(w.path.size()) == w.steps + 1);
    for (std::size_t i = 0; i + 1 < w.path.size(); ++i) {
        const PathNode& n = w.path[i];
        CHECK((n.mode == StepMode::Sphere || n.mode == StepMode::Fine));
        if (n.mode == StepMode::Sphere) {
            CHECK(dom.cell_boundary_distance(static_cast<std::size_t>(n.cell), n.position) > 0.0);
        }
    }
    RandomStream again(17, 3);
    CHECK(kwos_trajectory(dom, Point{0.5, 1.0}, params, again).steps == w.steps);
}

TEST_CASE("gr_kwos first gambler's-ruin move") {
    const PiecewiseDomain dom = test::example1_domain();
    const SolverParams params = SolverParams::defaults_for(dom);
    constexpr int K = 20000;
    int left = 0, right = 0;
    for (int k = 0; k < K; ++k) {
        RandomStream a(18, static_cast<std::uint64_t>(k));
        const WalkOutcome w = gr_kwos_trajectory(dom, Point{0.5}, params, a);
        left += w.status == WalkStatus::Absorbed && w.steps == 1 && (*w.exit_point)[0] == 0.0;
        RandomStream b(19, static_cast<std::uint64_t>(k));
        const WalkOutcome v = gr_kwos_trajectory(dom, Point{3.0}, params, b);
        right += v.status == WalkStatus::Absorbed && v.steps == 1 && (*v.exit_point)[0] == 3.5;
    }
    CHECK(std::abs(left / double(K) - 0.5) < 3 * binomial_sigma(0.5, K));
    CHECK(std::abs(right / double(K) - 2.0 / 3.0) < 3 * binomial_sigma(2.0 / 3.0, K));
}

TEST_CASE("gr_kwos reproduces the linear harmonic solution") {
    const PiecewiseDomain dom(make_interval(-1.0, 2.0), {{make_interval(-1.0, 0.5), 0.0},
                                                         {make_interval(0.5, 2.0), 0.0}});
    const SolverParams params = SolverParams::defaults_for(dom);
    const double ua = 3.0, ub = -1.0;
    constexpr int K = 20000;
    for (double x : {-0.7, -0.2, 0.5, 1.1, 1.8}) {
        double sum = 0.0, sum2 = 0.0;
        for (int k = 0; k < K; ++k) {
            RandomStream rng(20, static_cast<std::uint64_t>(k));
            const WalkOutcome w = gr_kwos_trajectory(dom, Point{x}, params, rng);
            REQUIRE(w.status == WalkStatus::Absorbed);
            const double f = (*w.exit_point)[0] < 0.5 ? ua : ub;
            sum += f;
            sum2 += f * f;
        }
        const double mean = sum / K;
        const double se = std::sqrt((sum2 / K - mean * mean) / (K - 1));
        const double exact = ((2.0 - x) * ua + (x + 1.0) * ub) / 3.0;
        CHECK(std::abs(mean - exact) < 3 * se);
    }
}

TEST_CASE("gr_kwos input checks") {
    RandomStream rng(21, 0);
    const PiecewiseDomain disk = test::unit_disk(1.0);
    CHECK_THROWS_AS((void)gr_kwos_trajectory(disk, Point{0.0, 0.0}, SolverParams::defaults_for(disk), rng), WalkError);
    const PiecewiseDomain gap(make_interval(0, 3), {{make_interval(0, 1), 0.0}, {make_interval(1.5, 3), 0.0}});
    CHECK_THROWS_AS((void)gr_kwos_trajectory(gap, Point{0.5}, SolverParams::defaults_for(gap), rng), WalkError);
}

TEST_CASE("naive walker weights") {
    const PiecewiseDomain zero = test::unit_disk(0.0);
    for (int k = 0; k < 50; ++k) {
        RandomStream rng(22, static_cast<std::uint64_t>(k));
        const WalkOutcome w = naive_trajectory(zero, Point{0.1, 0.2}, 1e-3, 1'000'000, rng);
        CHECK(w.weight == 1.0);
        CHECK(w.status == WalkStatus::Absorbed);
        CHECK(std::abs(signed_distance(zero.outer(), *w.exit_point)) < 1e-12);
    }

    const PiecewiseDomain ex1 = test::example1_domain();
    const std::vector<Point> path = {Point{1.2}, Point{1.25}, Point{1.3}, Point{0.9}};
    CHECK(discount_weight(ex1, path, 0.01) == doctest::Approx(std::exp(-0.06)).epsilon(1e-15));
    CHECK(discount_weight(ex1, path, 0.01) == doctest::Approx(0.9417645335842487).epsilon(1e-14));

    RandomStream rng(23, 0);
    CHECK_THROWS_AS((void)naive_trajectory(zero, Point{0.0, 0.0}, 1e-4, 3, rng), WalkError);
    CHECK_THROWS_AS((void)naive_trajectory(zero, Point{0.0, 0.0}, 0.0, 3, rng), WalkError);
}

TEST_CASE("naive walker matches the ball closed form") {
    // The time-stepped walker overshoots the boundary, which biases the
    // weight low by O(sqrt(dt)); that bias is budgeted on top of 3 sigma.
    const PiecewiseDomain dom = test::unit_disk(2.0);
    constexpr double dt = 1e-4;
    constexpr int K = 4000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < K; ++k) {
        RandomStream rng(24, static_cast<std::uint64_t>(k));
        const double w = naive_trajectory(dom, Point{0.0, 0.0}, dt, 1'000'000, rng).weight;
        sum += w;
        sum2 += w * w;
    }
    const double mean = sum / K;
    const double se = std::sqrt((sum2 / K - mean * mean) / (K - 1));
    MESSAGE("naive mean " << mean << " +- " << se << " vs psi(2) " << kPsi2);
    CHECK(mean < kPsi2 + 3 * se);
    CHECK(mean > kPsi2 - 3 * se - std::sqrt(dt));
}
