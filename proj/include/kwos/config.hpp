#pragma once

// JSON problem description: domain, boundary data, method, solver knobs,
// evaluation points, particle count and seed.

#include "kwos/estimate.hpp"
#include "kwos/expr.hpp"
#include "kwos/geometry.hpp"
#include "kwos/walk.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kwos {

/// Validation failure; carries every problem found, not just the first.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> issues);
    [[nodiscard]] const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

struct ProblemConfig {
    PiecewiseDomain domain;
    BoundaryFunction boundary_f;
    Method method;
    SolverParams params;
    std::vector<Point> eval_points;
    std::int64_t K;
    std::uint64_t seed;
};

[[nodiscard]] ProblemConfig parse_config(const std::string& json_text);
[[nodiscard]] ProblemConfig load_config(const std::string& path);

/// "0.5" or "0.2,0.1" to a Point.
[[nodiscard]] Point parse_point(const std::string& text);

}  // namespace kwos
