#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kwos/kernels.hpp"
#include "kwos/oracle1d.hpp"

#include <algorithm>
#include <cmath>

using namespace kwos;

namespace {

// Six-digit reference fits for the one-dimensional example, one per cell.
double published_example1(double t) {
    if (t <= 1.0) return 1.0 - 0.572084 * t;
    if (t <= 2.0) return 0.00960025 * std::exp(-2.0 * t) * (274.757 + std::exp(4.0 * t));
    return -1.33091 + 0.951688 * t;
}

Piecewise1DSolution example1() { return solve_1d({0.0, 1.0, 2.0, 3.5}, {0.0, 2.0, 0.0}, 1.0, 2.0); }

}  // namespace

TEST_CASE("single linear cell") {
    const auto sol = solve_1d({0.0, 3.5}, {0.0}, 1.0, 2.0);
    REQUIRE(sol.cells.size() == 1);
    CHECK(sol.cells[0].linear());
    CHECK(eval_1d(sol, 1.75) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(sol.cells[0].value(2.0) == doctest::Approx(sol.cells[0].A + sol.cells[0].B * 2.0));
}

TEST_CASE("symmetric hyperbolic cell") {
    const auto sol = solve_1d({-1.0, 1.0}, {2.0}, 1.0, 1.0);
    CHECK(eval_1d(sol, 0.0) == doctest::Approx(1.0 / std::cosh(2.0)).epsilon(1e-13));
    CHECK(eval_1d(sol, 0.0) == doctest::Approx(0.2658022288340797).epsilon(1e-12));
    for (double x : {-0.9, -0.3, 0.4, 0.8}) {
        CHECK(eval_1d(sol, x) == doctest::Approx(std::cosh(2.0 * x) / std::cosh(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("example 1 values") {
    const auto sol = example1();
    // Frozen from an independent 40-digit mpmath solve of the matching system.
    CHECK(eval_1d(sol, 0.5) == doctest::Approx(0.71395786013687764).epsilon(1e-12));
    CHECK(eval_1d(sol, 1.5) == doctest::Approx(0.32415139708787996).epsilon(1e-12));
    CHECK(eval_1d(sol, 3.0) == doctest::Approx(1.5241559223051576).epsilon(1e-12));
    for (double x : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        CHECK(std::abs(eval_1d(sol, x) - published_example1(x)) <= 1e-4);
    }
    CHECK(std::abs(eval_1d(sol, 0.0) - 1.0) <= 1e-12);
    CHECK(std::abs(eval_1d(sol, 3.5) - 2.0) <= 1e-12);
    CHECK(cell_of(sol, 1.0) == 0);
    CHECK(cell_of(sol, 2.0) == 1);
    CHECK_THROWS_AS((void)eval_1d(sol, 3.6), OracleError);
    CHECK_THROWS_AS((void)eval_1d(sol, -0.1), OracleError);
}

TEST_CASE("ODE residual and C1 matching") {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> problems = {
        {{0.0, 1.0, 2.0, 3.5}, {0.0, 2.0, 0.0}},
        {{-2.0, -0.5, 0.25, 1.0, 4.0}, {3.0, 0.0, 10.0, 0.5}},
        {{0.0, 0.1, 0.2}, {50.0, 1.0}},
    };
    for (const auto& [bp, lam] : problems) {
        const auto sol = solve_1d(bp, lam, 0.7, 1.9);
        for (const auto& c : sol.cells) {
            for (int i = 1; i <= 200; ++i) {
                const double x = c.x_lo + (c.x_hi - c.x_lo) * i / 201.0;
                const double u = c.value(x);
                CHECK(std::abs(0.5 * c.second_derivative(x) - c.lambda * u) <= 1e-8 * (1.0 + std::abs(u)));
            }
        }
        for (std::size_t i = 0; i + 1 < sol.cells.size(); ++i) {
            const auto& l = sol.cells[i];
            const auto& r = sol.cells[i + 1];
            const double x = l.x_hi;
            const double scale = 1.0 + std::abs(l.value(x));
            CHECK(std::abs(l.value(x) - r.value(x)) <= 1e-9 * scale);
            CHECK(std::abs(l.derivative(x) - r.derivative(x)) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("maximum principle for nonnegative data") {
    const auto sol = solve_1d({0.0, 0.5, 1.5, 2.0, 4.0}, {5.0, 0.0, 20.0, 1.0}, 0.0, 3.0);
    double lo = 1e300;
    for (int i = 0; i < 1000; ++i) lo = std::min(lo, eval_1d(sol, 4.0 * i / 999.0));
    CHECK(lo >= 0.0);
}

TEST_CASE("agrees with the interval Laplace transform") {
    for (double lambda : {0.1, 1.0, 2.0, 8.0}) {
        const auto sol = solve_1d({-0.7, 1.3}, {lambda}, 1.0, 1.0);
        for (double x : {-0.5, 0.3, 1.0}) {
            CHECK(eval_1d(sol, x) == doctest::Approx(interval_laplace(x, -0.7, 1.3, lambda)).epsilon(1e-12));
        }
    }
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS((void)solve_1d({0.0}, {}, 1.0, 1.0), OracleError);
    CHECK_THROWS_AS((void)solve_1d({0.0, 1.0}, {0.0, 1.0}, 1.0, 1.0), OracleError);
    CHECK_THROWS_AS((void)solve_1d({0.0, 1.0, 1.0}, {0.0, 1.0}, 1.0, 1.0), OracleError);
    CHECK_THROWS_AS((void)solve_1d({0.0, 1.0}, {-1.0}, 1.0, 1.0), OracleError);
    CHECK_THROWS_AS((void)solve_1d({0.0, 10.0}, {1000.0}, 1.0, 1.0), OracleError);  // kappa*width > 300
}
