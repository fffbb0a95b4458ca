// kwos: batch front-end for the killing walk-on-spheres solver.
//
//   kwos solve      --config example1.json --out u.csv [--seed N] [--k N] [--threads N]
//   kwos trajectory --config example2.json --start 0.5,1.0 --out path.csv [--seed N]
//   kwos psi-table  --dim 2 --mu-min 0 --mu-max 10 --steps 100 [--out psi.csv]
//   kwos oracle1d   --breakpoints 0,1,2,3.5 --lambdas 0,2,0 --left 1 --right 2 [--points 101]

#include "kwos/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    namespace cli = kwos::cli;
    CLI::App app{"Monte Carlo solver for 1/2 Laplace(u) - q u = 0 with piecewise-constant q >= 0"};
    app.require_subcommand(1);

    cli::SolveOptions solve;
    std::uint64_t solve_seed = 0;
    std::int64_t solve_k = 0;
    auto* sc_solve = app.add_subcommand("solve", "estimate u on the config's evaluation points, CSV output");
    sc_solve->add_option("--config", solve.config_path, "problem config (JSON)")->required();
    sc_solve->add_option("--out", solve.out_path, "output CSV (default stdout)");
    auto* solve_seed_opt = sc_solve->add_option("--seed", solve_seed, "override the config seed");
    auto* solve_k_opt = sc_solve->add_option("--k", solve_k, "override the particle count K");
    sc_solve->add_option("--threads", solve.workers, "worker threads (0 = all cores)");

    cli::TrajectoryOptions traj;
    std::uint64_t traj_seed = 0;
    std::string traj_start;
    auto* sc_traj = app.add_subcommand("trajectory", "dump one particle path as CSV");
    sc_traj->add_option("--config", traj.config_path, "problem config (JSON)")->required();
    sc_traj->add_option("--out", traj.out_path, "output CSV (default stdout)");
    auto* traj_start_opt = sc_traj->add_option("--start", traj_start, "start point x[,y[,z]]");
    auto* traj_seed_opt = sc_traj->add_option("--seed", traj_seed, "override the config seed");

    cli::PsiTableOptions psi;
    auto* sc_psi = app.add_subcommand("psi-table", "tabulate the ball survival function psi");
    sc_psi->add_option("--dim,-n", psi.dimension, "dimension (1, 2 or 3)");
    sc_psi->add_option("--mu-min", psi.mu_min, "first mu");
    sc_psi->add_option("--mu-max", psi.mu_max, "last mu");
    sc_psi->add_option("--steps", psi.steps, "number of intervals (rows - 1)");
    sc_psi->add_option("--out", psi.out_path, "output CSV (default stdout)");

    cli::Oracle1DOptions oracle;
    std::string oracle_config;
    auto* sc_oracle = app.add_subcommand("oracle1d", "exact piecewise solution of the 1D problem");
    auto* oracle_cfg_opt = sc_oracle->add_option("--config", oracle_config, "1D problem config (JSON)");
    auto* bp_opt = sc_oracle->add_option("--breakpoints", oracle.breakpoints, "x_1,...,x_M");
    sc_oracle->add_option("--lambdas", oracle.lambdas, "lambda per cell");
    sc_oracle->add_option("--left", oracle.u_left, "u(x_1)");
    sc_oracle->add_option("--right", oracle.u_right, "u(x_M)");
    sc_oracle->add_option("--points", oracle.points, "grid points for the CSV");
    sc_oracle->add_option("--out", oracle.out_path, "grid CSV (default stdout, after the table)");
    oracle_cfg_opt->excludes(bp_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitValidation;
    }

    if (*sc_solve) {
        if (*solve_seed_opt) solve.seed = solve_seed;
        if (*solve_k_opt) solve.K = solve_k;
        return cli::run_solve(solve, std::cout, std::cerr);
    }
    if (*sc_traj) {
        if (*traj_seed_opt) traj.seed = traj_seed;
        if (*traj_start_opt) traj.start = traj_start;
        return cli::run_trajectory(traj, std::cout, std::cerr);
    }
    if (*sc_psi) return cli::run_psi_table(psi, std::cout, std::cerr);
    if (*oracle_cfg_opt) oracle.config_path = oracle_config;
    if (!*oracle_cfg_opt && oracle.breakpoints.empty()) {
        std::cerr << "error: oracle1d needs --config or --breakpoints/--lambdas\n";
        return cli::kExitValidation;
    }
    return cli::run_oracle1d(oracle, std::cout, std::cerr);
}
