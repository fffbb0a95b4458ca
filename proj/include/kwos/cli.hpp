#pragma once

// Subcommand bodies of the `kwos` tool. Each returns the process exit status:
// 0 on success, 1 on a validation error, 2 on a runtime error. Messages go
// to `err`. An empty or "-" output path means `out`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace kwos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

struct SolveOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> K;
    unsigned workers = 0;
};

struct TrajectoryOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::string> start;  // defaults to the first eval point
    std::optional<std::uint64_t> seed;
};

struct PsiTableOptions {
    int dimension = 2;
    double mu_min = 0.0;
    double mu_max = 10.0;
    int steps = 100;
    std::string out_path;
};

struct Oracle1DOptions {
    std::optional<std::string> config_path;
    std::string breakpoints;  // "0,1,2,3.5"
    std::string lambdas;      // "0,2,0"
    double u_left = 0.0;
    double u_right = 0.0;
    int points = 101;
    std::string out_path;
};

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int run_trajectory(const TrajectoryOptions& opts, std::ostream& out, std::ostream& err);
int run_psi_table(const PsiTableOptions& opts, std::ostream& out, std::ostream& err);
int run_oracle1d(const Oracle1DOptions& opts, std::ostream& out, std::ostream& err);

/// %.17g formatting used in every CSV.
[[nodiscard]] std::string format_number(double v);

}  // namespace kwos::cli
