#pragma once

// Monte Carlo estimator u_K(x) = (1/K) sum over surviving particles of f(exit).
// Particle k of a point uses RandomStream(point_seed, k), so results depend
// only on the inputs, never on the number of workers.

#include "kwos/expr.hpp"
#include "kwos/geometry.hpp"
#include "kwos/random_stream.hpp"
#include "kwos/walk.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace kwos {

enum class Method { Kwos, GrKwos, Naive };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
/// Accepts "kwos", "gr_kwos", "naive"; throws std::invalid_argument otherwise.
[[nodiscard]] Method parse_method(std::string_view name);

class EstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t k_total = 0;
    std::int64_t k_survived = 0;
    std::int64_t k_killed = 0;
    Method method = Method::Kwos;

    friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// Per-particle contribution and fate, in particle order.
struct ParticleSummands {
    std::vector<double> values;
    std::vector<unsigned char> killed;
    std::vector<std::int64_t> steps;
};

/// workers = 0 picks std::thread::hardware_concurrency().
[[nodiscard]] ParticleSummands simulate_particles(const PiecewiseDomain& domain, const BoundaryFunction& f,
                                                  const Point& start, const SolverParams& params,
                                                  std::int64_t K, std::uint64_t seed, Method method,
                                                  unsigned workers = 0);

/// Mean and standard error of the summands (zeros included for killed
/// particles) with a fixed pairwise reduction order.
[[nodiscard]] Estimate summarize(const ParticleSummands& s, Method method);

[[nodiscard]] Estimate estimate_point(const PiecewiseDomain& domain, const BoundaryFunction& f, const Point& start,
                                      const SolverParams& params, std::int64_t K, std::uint64_t seed,
                                      Method method, unsigned workers = 0);

/// Point i is estimated with seed derive_seed(master_seed, i).
[[nodiscard]] std::vector<std::pair<Point, Estimate>> estimate_grid(const PiecewiseDomain& domain,
                                                                    const BoundaryFunction& f,
                                                                    std::span<const Point> points,
                                                                    const SolverParams& params, std::int64_t K,
                                                                    std::uint64_t master_seed, Method method,
                                                                    unsigned workers = 0);

/// Pairwise sum with a fixed split order.
[[nodiscard]] double pairwise_sum(std::span<const double> xs) noexcept;

}  // namespace kwos
