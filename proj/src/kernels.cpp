#include "kwos/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace kwos {

namespace {

constexpr int kMaxTerms = 500;
constexpr double kRelTol = 1e-16;
constexpr double kLogUnderflow = -700.0;

void check_order(double nu) {
    if (!(nu >= -0.5) || !std::isfinite(nu)) throw KernelError("Bessel order must be >= -1/2");
}

int nu_times_two(int dimension) {
    if (dimension < 1 || dimension > 3) {
        throw KernelError("unsupported dimension " + std::to_string(dimension) + " (expected 1, 2 or 3)");
    }
    return dimension - 2;
}

// log cosh(z) without overflow.
double log_cosh(double z) noexcept {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

double log_bessel_series(double nu, double x) {
    check_order(nu);
    if (!(x >= 0.0)) throw KernelError("Bessel argument must be >= 0");
    if (x == 0.0) return 0.0;

    // Terms t_m with t_0 = 1 and t_m / t_{m-1} = (x^2/4) / (m (m + nu)).
    // Accumulated as scale * sum with log_scale tracking the largest term.
    const double log_q = 2.0 * std::log(0.5 * x);
    double log_term = 0.0;
    double log_scale = 0.0;
    double sum = 1.0;
    for (int m = 1; m <= kMaxTerms; ++m) {
        log_term += log_q - std::log(static_cast<double>(m)) - std::log(m + nu);
        if (log_term > log_scale) {
            sum = sum * std::exp(log_scale - log_term) + 1.0;
            log_scale = log_term;
        } else {
            const double t = std::exp(log_term - log_scale);
            sum += t;
            if (t < kRelTol * sum) return log_scale + std::log(sum);
        }
    }
    // Series did not settle within the cap: large-argument asymptotic.
    const double log_i = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
    return log_i - nu * std::log(0.5 * x) + std::lgamma(nu + 1.0);
}

double log_bessel_i(double nu, double x) {
    const double log_s = log_bessel_series(nu, x);
    if (x == 0.0) {
        if (nu == 0.0) return 0.0;
        return nu > 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }
    return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + log_s;
}

double bessel_i(double nu, double x) { return std::exp(log_bessel_i(nu, x)); }

double psi(double mu, int dimension) {
    const double nu = 0.5 * nu_times_two(dimension);
    if (!(mu >= 0.0)) throw KernelError("psi requires mu >= 0");
    if (mu == 0.0) return 1.0;
    // mu^nu / (2^nu Gamma(nu+1) I_nu(mu)) reduces to 1 / S_nu(mu).
    const double log_psi = -log_bessel_series(nu, mu);
    if (log_psi < kLogUnderflow) return 0.0;
    return std::exp(log_psi);
}

double survival_probability(const SurvivalQuery& q) {
    if (!(q.lambda >= 0.0) || !std::isfinite(q.lambda)) throw KernelError("lambda must be finite and >= 0");
    if (!(q.radius > 0.0) || !std::isfinite(q.radius)) throw KernelError("radius must be finite and > 0");
    const double p = psi(std::sqrt(2.0 * q.lambda) * q.radius, q.dimension);
    return p < 1e-300 ? 0.0 : p;
}

double interval_laplace(double x, double a, double b, double lambda) {
    if (!(a < b)) throw KernelError("interval_laplace requires a < b");
    if (!(lambda >= 0.0)) throw KernelError("interval_laplace requires lambda >= 0");
    if (!(x >= a && x <= b)) throw KernelError("interval_laplace requires a <= x <= b");
    if (x == a || x == b || lambda == 0.0) return 1.0;
    const double k = std::sqrt(0.5 * lambda);
    return std::exp(log_cosh((b + a - 2.0 * x) * k) - log_cosh((b - a) * k));
}

}  // namespace kwos
