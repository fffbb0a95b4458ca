#include "kwos/walk.hpp"

#include "kwos/kernels.hpp"
#include "kwos/random_stream.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace kwos {

SolverParams SolverParams::defaults_for(const PiecewiseDomain& domain) {
    const double diam = domain.diameter();
    const double eps_interface = 1e-2 * diam;
    return {1e-3 * diam, eps_interface, (eps_interface / 10.0) * (eps_interface / 10.0), 1'000'000};
}

void SolverParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(eps_boundary)) throw std::invalid_argument("eps_boundary must be positive");
    if (!positive(eps_interface)) throw std::invalid_argument("eps_interface must be positive");
    if (!positive(dt)) throw std::invalid_argument("dt must be positive");
    if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

std::string_view to_string(StepMode mode) noexcept {
    switch (mode) {
    case StepMode::Sphere: return "sphere";
    case StepMode::Fine: return "fine";
    case StepMode::Absorb: return "absorb";
    case StepMode::Kill: return "kill";
    }
    return "?";
}

namespace {

int cell_or_none(const PiecewiseDomain& domain, const Point& p) {
    for (std::size_t m = 0; m < domain.cells().size(); ++m) {
        if (closure_contains(domain.cell(m).region, p, 1e-9 * domain.diameter())) return static_cast<int>(m);
    }
    return -1;
}

class Walker {
public:
    Walker(const PiecewiseDomain& domain, const Point& start, const SolverParams& params, RandomStream& rng,
           bool record)
        : domain_(domain), params_(params), rng_(rng), record_(record), w_(start),
          sqrt_dt_(std::sqrt(params.dt)) {
        params.validate();
        if (start.dim() != domain.dimension()) throw WalkError("start point dimension differs from the domain");
        if (!contains(domain.outer(), start)) throw WalkError("start point " + to_string(start) + " is not interior");
        fine_survival_.reserve(domain.cells().size());
        for (const Cell& c : domain.cells()) fine_survival_.push_back(std::exp(-c.lambda * params.dt));
    }

    // Absorb when within eps_boundary of the outer boundary, or outside it
    // after a fine step.
    bool try_absorb() {
        if (signed_distance(domain_.outer(), w_) > -params_.eps_boundary) {
            const Point exit = project_to_boundary(domain_.outer(), w_);
            push(exit, StepMode::Absorb);
            out_.status = WalkStatus::Absorbed;
            out_.exit_point = exit;
            return true;
        }
        return false;
    }

    void check_budget() const {
        if (out_.steps >= params_.max_steps) {
            throw WalkError("walk exceeded max_steps = " + std::to_string(params_.max_steps) + " at " +
                            to_string(w_));
        }
    }

    // One killing-walk step from w. Returns true when the particle was killed.
    bool kwos_step() {
        const std::size_t m = domain_.subdomain_index(w_);
        const double lambda = domain_.cell(m).lambda;
        if (domain_.interface_distance(m, w_) < params_.eps_interface) {
            push(w_, StepMode::Fine, static_cast<int>(m));
            for (int i = 0; i < w_.dim(); ++i) w_[i] += sqrt_dt_ * rng_.normal();
            ++out_.steps;
            return kill_if(rng_.uniform(), fine_survival_[m]);
        }
        const double r = domain_.cell_boundary_distance(m, w_);
        push(w_, StepMode::Sphere, static_cast<int>(m));
        w_ = sample_sphere(w_, r, rng_);
        ++out_.steps;
        const double p = lambda == 0.0 ? 1.0 : survival_probability({lambda, r, w_.dim()});
        return kill_if(rng_.uniform(), p);
    }

    // Exact exit from a lambda = 0 interval cell (lo, hi) with lo < w < hi.
    void ruin_step(std::size_t m, double lo, double hi) {
        push(w_, StepMode::Sphere, static_cast<int>(m));
        const double x = w_[0];
        w_[0] = rng_.uniform() < (hi - x) / (hi - lo) ? lo : hi;
        ++out_.steps;
    }

    const Point& position() const noexcept { return w_; }
    WalkOutcome finish() { return std::move(out_); }

private:
    bool kill_if(double u, double survival) {
        if (u < survival) return false;
        push(w_, StepMode::Kill);
        out_.status = WalkStatus::Killed;
        return true;
    }

    void push(const Point& p, StepMode mode, int cell = -2) {
        if (!record_) return;
        out_.path.push_back({p, cell == -2 ? cell_or_none(domain_, p) : cell, mode});
    }

    const PiecewiseDomain& domain_;
    const SolverParams& params_;
    RandomStream& rng_;
    bool record_;
    Point w_;
    double sqrt_dt_;
    std::vector<double> fine_survival_;
    WalkOutcome out_;
};

}  // namespace

WalkOutcome kwos_trajectory(const PiecewiseDomain& domain, const Point& start, const SolverParams& params,
                            RandomStream& rng, bool record_path) {
    Walker walker(domain, start, params, rng, record_path);
    for (;;) {
        if (walker.try_absorb()) break;
        walker.check_budget();
        if (walker.kwos_step()) break;
    }
    return walker.finish();
}

void require_consecutive_intervals(const PiecewiseDomain& domain) {
    if (domain.dimension() != 1) throw WalkError("gambler's-ruin walk requires a 1D domain");
    const auto* outer = std::get_if<Interval>(&domain.outer());
    if (!outer) throw WalkError("gambler's-ruin walk requires an interval outer domain");
    std::vector<Interval> cells;
    for (const Cell& c : domain.cells()) {
        const auto* s = std::get_if<Interval>(&c.region);
        if (!s) throw WalkError("gambler's-ruin walk requires interval cells");
        cells.push_back(*s);
    }
    std::sort(cells.begin(), cells.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    const double tol = 1e-12 * domain.diameter();
    bool ok = std::abs(cells.front().a - outer->a) <= tol && std::abs(cells.back().b - outer->b) <= tol;
    for (std::size_t i = 0; ok && i + 1 < cells.size(); ++i) ok = std::abs(cells[i].b - cells[i + 1].a) <= tol;
    if (!ok) throw WalkError("cells must be consecutive intervals tiling the outer interval");
}

WalkOutcome gr_kwos_trajectory(const PiecewiseDomain& domain, const Point& start, const SolverParams& params,
                               RandomStream& rng, bool record_path) {
    require_consecutive_intervals(domain);
    Walker walker(domain, start, params, rng, record_path);
    for (;;) {
        if (walker.try_absorb()) break;
        walker.check_budget();
        const double x = walker.position()[0];
        const std::size_t m = domain.subdomain_index(walker.position());
        const Cell& cell = domain.cell(m);
        const auto& iv = std::get<Interval>(cell.region);
        if (cell.lambda == 0.0 && iv.a < x && x < iv.b) {
            walker.ruin_step(m, iv.a, iv.b);
        } else if (walker.kwos_step()) {
            break;
        }
    }
    return walker.finish();
}

double discount_weight(const PiecewiseDomain& domain, const std::vector<Point>& path, double dt) {
    double exponent = 0.0;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) exponent += domain.potential(path[j]) * dt;
    return std::exp(-exponent);
}

WalkOutcome naive_trajectory(const PiecewiseDomain& domain, const Point& start, double dt, std::int64_t max_steps,
                             RandomStream& rng, bool record_path) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw WalkError("dt must be positive");
    if (max_steps <= 0) throw WalkError("max_steps must be positive");
    if (start.dim() != domain.dimension()) throw WalkError("start point dimension differs from the domain");
    if (!contains(domain.outer(), start)) throw WalkError("start point " + to_string(start) + " is not interior");

    const double sqrt_dt = std::sqrt(dt);
    WalkOutcome out;
    Point w = start;
    double exponent = 0.0;
    for (;;) {
        if (out.steps >= max_steps) {
            throw WalkError("walk exceeded max_steps = " + std::to_string(max_steps) + " at " + to_string(w));
        }
        const std::size_t m = domain.subdomain_index(w);
        if (record_path) out.path.push_back({w, static_cast<int>(m), StepMode::Fine});
        Point next = w;
        for (int i = 0; i < next.dim(); ++i) next[i] += sqrt_dt * rng.normal();
        ++out.steps;
        exponent += domain.cell(m).lambda * dt;
        if (!contains(domain.outer(), next)) break;
        w = next;
    }
    const Point exit = project_to_boundary(domain.outer(), w);
    if (record_path) out.path.push_back({exit, cell_or_none(domain, exit), StepMode::Absorb});
    out.status = WalkStatus::Absorbed;
    out.exit_point = exit;
    out.weight = std::exp(-exponent);
    return out;
}

}  // namespace kwos
