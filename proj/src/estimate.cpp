#include "kwos/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace kwos {

std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::Kwos: return "kwos";
    case Method::GrKwos: return "gr_kwos";
    case Method::Naive: return "naive";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "kwos") return Method::Kwos;
    if (name == "gr_kwos") return Method::GrKwos;
    if (name == "naive") return Method::Naive;
    throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected kwos, gr_kwos or naive)");
}

double pairwise_sum(std::span<const double> xs) noexcept {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

ParticleSummands simulate_particles(const PiecewiseDomain& domain, const BoundaryFunction& f, const Point& start,
                                    const SolverParams& params, std::int64_t K, std::uint64_t seed, Method method,
                                    unsigned workers) {
    if (K <= 0) throw EstimateError("K must be positive");
    if (method == Method::GrKwos) require_consecutive_intervals(domain);
    if (!contains(domain.outer(), start)) throw WalkError("start point " + to_string(start) + " is not interior");

    const auto n = static_cast<std::size_t>(K);
    ParticleSummands out;
    out.values.assign(n, 0.0);
    out.killed.assign(n, 0);
    out.steps.assign(n, 0);

    auto run_one = [&](std::size_t k) {
        RandomStream rng(seed, k);
        WalkOutcome w;
        switch (method) {
        case Method::Kwos: w = kwos_trajectory(domain, start, params, rng); break;
        case Method::GrKwos: w = gr_kwos_trajectory(domain, start, params, rng); break;
        case Method::Naive: w = naive_trajectory(domain, start, params.dt, params.max_steps, rng); break;
        }
        out.steps[k] = w.steps;
        if (w.status == WalkStatus::Killed) {
            out.killed[k] = 1;
        } else {
            out.values[k] = w.weight * f(*w.exit_point);
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    // Chunks are claimed dynamically; the first failure by particle index is
    // rethrown so the reported error is independent of scheduling.
    constexpr std::size_t kChunk = 256;
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= n) return;
            const std::size_t end = std::min(n, begin + kChunk);
            for (std::size_t k = begin; k < end; ++k) {
                try {
                    run_one(k);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (k < error_index) {
                        error_index = k;
                        error = std::current_exception();
                    }
                    break;
                }
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return out;
}

Estimate summarize(const ParticleSummands& s, Method method) {
    Estimate e;
    e.method = method;
    e.k_total = static_cast<std::int64_t>(s.values.size());
    for (unsigned char k : s.killed) e.k_killed += k;
    e.k_survived = e.k_total - e.k_killed;
    if (s.values.empty()) return e;

    const double n = static_cast<double>(s.values.size());
    e.mean = pairwise_sum(s.values) / n;
    if (s.values.size() > 1) {
        std::vector<double> sq(s.values.size());
        std::transform(s.values.begin(), s.values.end(), sq.begin(), [&](double v) { return (v - e.mean) * (v - e.mean); });
        e.std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
    }
    return e;
}

Estimate estimate_point(const PiecewiseDomain& domain, const BoundaryFunction& f, const Point& start,
                        const SolverParams& params, std::int64_t K, std::uint64_t seed, Method method,
                        unsigned workers) {
    return summarize(simulate_particles(domain, f, start, params, K, seed, method, workers), method);
}

std::vector<std::pair<Point, Estimate>> estimate_grid(const PiecewiseDomain& domain, const BoundaryFunction& f,
                                                      std::span<const Point> points, const SolverParams& params,
                                                      std::int64_t K, std::uint64_t master_seed, Method method,
                                                      unsigned workers) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != domain.dimension() || !contains(domain.outer(), points[i])) {
            throw EstimateError("evaluation point #" + std::to_string(i) + " " + to_string(points[i]) +
                                " is not interior to the domain");
        }
    }
    std::vector<std::pair<Point, Estimate>> results;
    results.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            results.emplace_back(points[i], estimate_point(domain, f, points[i], params, K,
                                                           derive_seed(master_seed, i), method, workers));
        } catch (const std::exception& ex) {
            throw EstimateError("evaluation point #" + std::to_string(i) + " " + to_string(points[i]) + ": " +
                                ex.what());
        }
    }
    return results;
}

}  // namespace kwos
