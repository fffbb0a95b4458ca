#pragma once

// Single-particle simulators for 1/2 Delta u - q u = 0 with Dirichlet data:
//
//   kwos_trajectory     walk on spheres with exponential killing; sphere jumps
//                       survive with probability psi(sqrt(2 lambda) r), a fine
//                       Euler mesh is used within eps_interface of interfaces
//   gr_kwos_trajectory  1D hybrid: exact gambler's-ruin exits through
//                       lambda = 0 cells, killing walk elsewhere
//   naive_trajectory    Euler path with the discount exp(-sum q dt)
//
// All randomness comes from the caller's RandomStream. Every step draws its
// kill uniform even when lambda = 0, so runs that differ only in the rates
// stay on identical paths (common random numbers).

#include "kwos/geometry.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace kwos {

class WalkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverParams {
    double eps_boundary;   // absorption shell at the outer boundary
    double eps_interface;  // fine-mesh shell at subdomain interfaces
    double dt;             // fine time step
    std::int64_t max_steps;

    /// eps_boundary = 1e-3 diam, eps_interface = 1e-2 diam,
    /// dt = (eps_interface/10)^2, max_steps = 1e6.
    [[nodiscard]] static SolverParams defaults_for(const PiecewiseDomain& domain);

    /// Throws std::invalid_argument if a field is non-positive or non-finite.
    void validate() const;
};

enum class WalkStatus { Killed, Absorbed };

enum class StepMode { Sphere, Fine, Absorb, Kill };

[[nodiscard]] std::string_view to_string(StepMode mode) noexcept;

/// One row of a recorded trajectory: the position, its cell (-1 if none) and
/// the action taken from it. The final node is Absorb or Kill.
struct PathNode {
    Point position;
    int cell;
    StepMode mode;
};

struct WalkOutcome {
    WalkStatus status = WalkStatus::Killed;
    std::optional<Point> exit_point;  // set iff Absorbed
    double weight = 1.0;
    std::int64_t steps = 0;
    std::vector<PathNode> path;  // empty unless recording was requested
};

[[nodiscard]] WalkOutcome kwos_trajectory(const PiecewiseDomain& domain, const Point& start,
                                          const SolverParams& params, RandomStream& rng,
                                          bool record_path = false);

/// Requires a 1D domain whose cells tile the outer interval.
[[nodiscard]] WalkOutcome gr_kwos_trajectory(const PiecewiseDomain& domain, const Point& start,
                                             const SolverParams& params, RandomStream& rng,
                                             bool record_path = false);

[[nodiscard]] WalkOutcome naive_trajectory(const PiecewiseDomain& domain, const Point& start, double dt,
                                           std::int64_t max_steps, RandomStream& rng,
                                           bool record_path = false);

/// exp(-sum_j q(path[j]) dt) over every point of `path` except the last: the
/// left-endpoint Riemann sum of the occupation-time discount.
[[nodiscard]] double discount_weight(const PiecewiseDomain& domain, const std::vector<Point>& path, double dt);

/// Throws WalkError unless the cells of a 1D domain are consecutive intervals
/// that tile the outer interval.
void require_consecutive_intervals(const PiecewiseDomain& domain);

}  // namespace kwos
