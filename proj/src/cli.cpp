#include "kwos/cli.hpp"

#include "kwos/config.hpp"
#include "kwos/estimate.hpp"
#include "kwos/kernels.hpp"
#include "kwos/oracle1d.hpp"
#include "kwos/random_stream.hpp"
#include "kwos/walk.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kwos::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* const kAxes[] = {"x", "y", "z"};

// Writes the buffered text to the path, or to `out` for "" and "-".
int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return kExitOk;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
        err << "error: cannot write '" << path << "'\n";
        return kExitRuntime;
    }
    return kExitOk;
}

void report(std::ostream& err, const std::exception& e) {
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
        err << "invalid configuration:\n";
        for (const auto& issue : ce->issues()) err << "  - " << issue << '\n';
    } else {
        err << "error: " << e.what() << '\n';
    }
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    return v;
}

}  // namespace

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
    std::optional<ProblemConfig> cfg;
    try {
        cfg.emplace(load_config(opts.config_path));
        if (opts.seed) cfg->seed = *opts.seed;
        if (opts.K) {
            if (*opts.K < 1) throw std::invalid_argument("--k must be >= 1");
            cfg->K = *opts.K;
        }
    } catch (const std::exception& e) {
        report(err, e);
        return kExitValidation;
    }

    std::ostringstream csv;
    try {
        const auto results = estimate_grid(cfg->domain, cfg->boundary_f, cfg->eval_points, cfg->params, cfg->K,
                                           cfg->seed, cfg->method, opts.workers);
        const int dim = cfg->domain.dimension();
        for (int i = 0; i < dim; ++i) csv << kAxes[i] << ',';
        csv << "estimate,stderr,k_survived,k_total\n";
        for (const auto& [p, e] : results) {
            for (int i = 0; i < dim; ++i) csv << format_number(p[i]) << ',';
            csv << format_number(e.mean) << ',' << format_number(e.std_error) << ',' << e.k_survived << ','
                << e.k_total << '\n';
        }
    } catch (const std::exception& e) {
        report(err, e);
        return kExitRuntime;
    }
    return emit(csv.str(), opts.out_path, out, err);
}

int run_trajectory(const TrajectoryOptions& opts, std::ostream& out, std::ostream& err) {
    std::optional<ProblemConfig> cfg;
    Point start;
    try {
        cfg.emplace(load_config(opts.config_path));
        if (opts.seed) cfg->seed = *opts.seed;
        start = opts.start ? parse_point(*opts.start) : cfg->eval_points.front();
        if (start.dim() != cfg->domain.dimension() || !contains(cfg->domain.outer(), start)) {
            throw std::invalid_argument("start point " + to_string(start) + " is not interior to the outer domain");
        }
    } catch (const std::exception& e) {
        report(err, e);
        return kExitValidation;
    }

    std::ostringstream csv;
    try {
        RandomStream rng(cfg->seed, 0);
        WalkOutcome w;
        switch (cfg->method) {
        case Method::Kwos: w = kwos_trajectory(cfg->domain, start, cfg->params, rng, true); break;
        case Method::GrKwos: w = gr_kwos_trajectory(cfg->domain, start, cfg->params, rng, true); break;
        case Method::Naive:
            w = naive_trajectory(cfg->domain, start, cfg->params.dt, cfg->params.max_steps, rng, true);
            break;
        }
        const int dim = cfg->domain.dimension();
        csv << "step";
        for (int i = 0; i < dim; ++i) csv << ',' << kAxes[i];
        csv << ",cell_index,mode\n";
        for (std::size_t s = 0; s < w.path.size(); ++s) {
            const PathNode& node = w.path[s];
            csv << s;
            for (int i = 0; i < dim; ++i) csv << ',' << format_number(node.position[i]);
            csv << ',' << node.cell << ',' << to_string(node.mode) << '\n';
        }
    } catch (const std::exception& e) {
        report(err, e);
        return kExitRuntime;
    }
    return emit(csv.str(), opts.out_path, out, err);
}

int run_psi_table(const PsiTableOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.dimension < 1 || opts.dimension > 3) {
        err << "error: dimension must be 1, 2 or 3\n";
        return kExitValidation;
    }
    if (!(opts.mu_min >= 0.0) || !(opts.mu_max > opts.mu_min) || opts.steps < 1) {
        err << "error: bad range: need 0 <= mu-min < mu-max and steps >= 1\n";
        return kExitValidation;
    }
    std::ostringstream csv;
    csv << "mu,psi\n";
    try {
        for (int i = 0; i <= opts.steps; ++i) {
            const double mu = opts.mu_min + (opts.mu_max - opts.mu_min) * i / opts.steps;
            csv << format_number(mu) << ',' << format_number(psi(mu, opts.dimension)) << '\n';
        }
    } catch (const std::exception& e) {
        report(err, e);
        return kExitRuntime;
    }
    return emit(csv.str(), opts.out_path, out, err);
}

int run_oracle1d(const Oracle1DOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<double> breakpoints, lambdas;
    double u_left = opts.u_left, u_right = opts.u_right;
    try {
        if (opts.config_path) {
            const ProblemConfig cfg = load_config(*opts.config_path);
            if (cfg.domain.dimension() != 1) throw std::invalid_argument("oracle1d needs a 1D configuration");
            require_consecutive_intervals(cfg.domain);
            std::vector<Cell> cells = cfg.domain.cells();
            std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
                return std::get<Interval>(a.region).a < std::get<Interval>(b.region).a;
            });
            for (const Cell& c : cells) {
                breakpoints.push_back(std::get<Interval>(c.region).a);
                lambdas.push_back(c.lambda);
            }
            breakpoints.push_back(std::get<Interval>(cells.back().region).b);
            u_left = cfg.boundary_f(Point{breakpoints.front()});
            u_right = cfg.boundary_f(Point{breakpoints.back()});
        } else {
            breakpoints = parse_list(opts.breakpoints);
            lambdas = parse_list(opts.lambdas);
        }
        if (opts.points < 2) throw std::invalid_argument("--points must be >= 2");
    } catch (const std::exception& e) {
        report(err, e);
        return kExitValidation;
    }

    Piecewise1DSolution sol;
    try {
        sol = solve_1d(breakpoints, lambdas, u_left, u_right);
    } catch (const OracleError& e) {
        report(err, e);
        return kExitValidation;
    }

    std::ostringstream table;
    table << "cell,x_lo,x_hi,kind,kappa,A,B\n";
    for (std::size_t i = 0; i < sol.cells.size(); ++i) {
        const SolutionCell& c = sol.cells[i];
        table << i << ',' << format_number(c.x_lo) << ',' << format_number(c.x_hi) << ','
              << (c.linear() ? "linear" : "hyperbolic") << ',' << format_number(c.kappa) << ','
              << format_number(c.A) << ',' << format_number(c.B) << '\n';
    }
    std::ostringstream csv;
    csv << "x,u\n";
    const double a = breakpoints.front(), b = breakpoints.back();
    for (int i = 0; i < opts.points; ++i) {
        const double x = i + 1 == opts.points ? b : a + (b - a) * i / (opts.points - 1);
        csv << format_number(x) << ',' << format_number(eval_1d(sol, x)) << '\n';
    }

    if (opts.out_path.empty() || opts.out_path == "-") {
        return emit(table.str() + "\n" + csv.str(), "", out, err);
    }
    out << table.str();
    return emit(csv.str(), opts.out_path, out, err);
}

}  // namespace kwos::cli
