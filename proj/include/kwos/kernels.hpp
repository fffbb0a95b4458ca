#pragma once

// Survival kernels for killed Brownian motion: the modified Bessel function
// I_nu, the ball survival probability psi and the 1D interval Laplace
// transform of the exit time. Everything is evaluated in log space so large
// arguments neither overflow nor lose the ratio.

#include <stdexcept>

namespace kwos {

class KernelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Killing rate, ball radius and ambient dimension for one sphere jump.
struct SurvivalQuery {
    double lambda;
    double radius;
    int dimension;
};

/// log of the normalized series S_nu(x) = sum_m Gamma(nu+1) (x^2/4)^m / (m! Gamma(m+nu+1)),
/// so that I_nu(x) = (x/2)^nu S_nu(x) / Gamma(nu+1). Summation stops once the
/// next term drops below 1e-16 of the partial sum (at most 500 terms); past
/// the cap the large-argument form log I_nu(x) ~ x - log(2 pi x)/2 is used.
[[nodiscard]] double log_bessel_series(double nu, double x);

/// Modified Bessel function of the first kind, nu >= -1/2, x >= 0.
[[nodiscard]] double bessel_i(double nu, double x);

/// Same, returned as log I_nu(x).
[[nodiscard]] double log_bessel_i(double nu, double x);

/// psi(mu) = mu^nu / (2^nu Gamma(nu+1) I_nu(mu)), nu = n/2 - 1: the Laplace
/// transform of the exit time of n-dimensional Brownian motion from a unit
/// ball started at its center. psi(0) = 1; returns 0 once log psi < -700.
[[nodiscard]] double psi(double mu, int dimension);

/// psi(sqrt(2 lambda) radius); values below 1e-300 are flushed to 0.
[[nodiscard]] double survival_probability(const SurvivalQuery& q);

/// E^x[exp(-lambda T)] for the exit time T of 1D Brownian motion from (a, b):
/// cosh((b+a-2x) sqrt(lambda/2)) / cosh((b-a) sqrt(lambda/2)).
[[nodiscard]] double interval_laplace(double x, double a, double b, double lambda);

}  // namespace kwos
