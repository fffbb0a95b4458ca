#pragma once

// Exact solution of 1/2 u'' = lambda(x) u on [x_1, x_M] with piecewise-constant
// lambda >= 0, Dirichlet values at both ends and C^1 matching at the interior
// breakpoints. Cells with lambda = 0 are lines A + B x; cells with lambda > 0
// are A cosh(kx) + B sinh(kx) with k = sqrt(2 lambda), in global coordinates.

#include <stdexcept>
#include <vector>

namespace kwos {

class OracleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SolutionCell {
    double x_lo;
    double x_hi;
    double lambda;
    double kappa;  // sqrt(2 lambda); 0 for linear cells
    double A;
    double B;

    [[nodiscard]] bool linear() const noexcept { return kappa == 0.0; }
    [[nodiscard]] double value(double x) const noexcept;
    [[nodiscard]] double derivative(double x) const noexcept;
    [[nodiscard]] double second_derivative(double x) const noexcept;
};

struct Piecewise1DSolution {
    std::vector<double> breakpoints;
    std::vector<SolutionCell> cells;
};

/// Throws OracleError on malformed input, on kappa * width > 300 or on a
/// singular matching system.
[[nodiscard]] Piecewise1DSolution solve_1d(const std::vector<double>& breakpoints,
                                           const std::vector<double>& lambdas, double u_left, double u_right);

/// Evaluates the cell containing x; a breakpoint belongs to its left cell.
[[nodiscard]] double eval_1d(const Piecewise1DSolution& sol, double x);

/// Index of the cell eval_1d would use for x.
[[nodiscard]] std::size_t cell_of(const Piecewise1DSolution& sol, double x);

}  // namespace kwos
