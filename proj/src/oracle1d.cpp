#include "kwos/oracle1d.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace kwos {

double SolutionCell::value(double x) const noexcept {
    if (linear()) return A + B * x;
    return A * std::cosh(kappa * x) + B * std::sinh(kappa * x);
}

double SolutionCell::derivative(double x) const noexcept {
    if (linear()) return B;
    return kappa * (A * std::sinh(kappa * x) + B * std::cosh(kappa * x));
}

double SolutionCell::second_derivative(double x) const noexcept {
    if (linear()) return 0.0;
    return kappa * kappa * value(x);
}

namespace {

// Basis functions and their derivatives for one cell.
struct Basis {
    double f0, f1, d0, d1;
};

Basis basis(double kappa, double x) {
    if (kappa == 0.0) return {1.0, x, 0.0, 1.0};
    const double c = std::cosh(kappa * x), s = std::sinh(kappa * x);
    return {c, s, kappa * s, kappa * c};
}

}  // namespace

Piecewise1DSolution solve_1d(const std::vector<double>& breakpoints, const std::vector<double>& lambdas,
                             double u_left, double u_right) {
    const std::size_t M = breakpoints.size();
    if (M < 2) throw OracleError("need at least two breakpoints");
    if (lambdas.size() != M - 1) throw OracleError("need exactly one lambda per cell");
    for (std::size_t i = 0; i + 1 < M; ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1])) throw OracleError("breakpoints must be strictly increasing");
    }
    if (!std::isfinite(u_left) || !std::isfinite(u_right)) throw OracleError("boundary values must be finite");

    Piecewise1DSolution sol;
    sol.breakpoints = breakpoints;
    for (std::size_t i = 0; i + 1 < M; ++i) {
        const double lambda = lambdas[i];
        if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw OracleError("lambda must be finite and >= 0");
        const double kappa = std::sqrt(2.0 * lambda);
        const double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (kappa * (hi - lo) > 300.0) {
            throw OracleError("cell " + std::to_string(i) + " too stiff: kappa * width exceeds 300");
        }
        if (kappa * std::max(std::abs(lo), std::abs(hi)) > 700.0) {
            throw OracleError("cell " + std::to_string(i) + " overflows the global cosh/sinh basis");
        }
        sol.cells.push_back({lo, hi, lambda, kappa, 0.0, 0.0});
    }

    const Eigen::Index n = static_cast<Eigen::Index>(2 * (M - 1));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

    Basis b = basis(sol.cells.front().kappa, breakpoints.front());
    A(0, 0) = b.f0;
    A(0, 1) = b.f1;
    rhs(0) = u_left;

    b = basis(sol.cells.back().kappa, breakpoints.back());
    A(1, n - 2) = b.f0;
    A(1, n - 1) = b.f1;
    rhs(1) = u_right;

    for (std::size_t i = 1; i + 1 < M; ++i) {
        const double x = breakpoints[i];
        const Basis l = basis(sol.cells[i - 1].kappa, x);
        const Basis r = basis(sol.cells[i].kappa, x);
        const Eigen::Index row = static_cast<Eigen::Index>(2 * i);
        const Eigen::Index cl = static_cast<Eigen::Index>(2 * (i - 1));
        const Eigen::Index cr = cl + 2;
        A(row, cl) = l.f0;
        A(row, cl + 1) = l.f1;
        A(row, cr) = -r.f0;
        A(row, cr + 1) = -r.f1;
        A(row + 1, cl) = l.d0;
        A(row + 1, cl + 1) = l.d1;
        A(row + 1, cr) = -r.d0;
        A(row + 1, cr + 1) = -r.d1;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw OracleError("matching system is singular");
    const Eigen::VectorXd coef = lu.solve(rhs);
    for (std::size_t i = 0; i + 1 < M; ++i) {
        sol.cells[i].A = coef(static_cast<Eigen::Index>(2 * i));
        sol.cells[i].B = coef(static_cast<Eigen::Index>(2 * i + 1));
    }
    return sol;
}

std::size_t cell_of(const Piecewise1DSolution& sol, double x) {
    if (!(x >= sol.breakpoints.front() && x <= sol.breakpoints.back())) {
        throw OracleError("x = " + std::to_string(x) + " outside the solution range");
    }
    for (std::size_t i = 0; i < sol.cells.size(); ++i) {
        if (x <= sol.cells[i].x_hi) return i;
    }
    return sol.cells.size() - 1;
}

double eval_1d(const Piecewise1DSolution& sol, double x) { return sol.cells[cell_of(sol, x)].value(x); }

}  // namespace kwos
