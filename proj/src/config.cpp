#include "kwos/config.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace kwos {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& i : items) {
        if (!s.empty()) s += "; ";
        s += i;
    }
    return s;
}

Point point_from_json(const json& j) {
    if (j.is_number()) return Point{j.get<double>()};
    if (!j.is_array()) throw std::invalid_argument("a point must be a number or an array of numbers");
    std::vector<double> c;
    for (const auto& v : j) c.push_back(v.get<double>());
    return Point(std::span<const double>(c));
}

Region region_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "interval") return make_interval(j.at("a").get<double>(), j.at("b").get<double>());
    if (type == "ball") return make_ball(point_from_json(j.at("center")), j.at("radius").get<double>());
    if (type == "polygon") {
        std::vector<Point> v;
        for (const auto& p : j.at("vertices")) v.push_back(point_from_json(p));
        return make_polygon(std::move(v));
    }
    throw std::invalid_argument("unknown region type '" + type + "'");
}

std::vector<Point> eval_points_from_json(const json& j) {
    std::vector<Point> pts;
    if (j.is_array()) {
        for (const auto& p : j) pts.push_back(point_from_json(p));
        return pts;
    }
    const json& g = j.contains("grid") ? j.at("grid") : j;
    const Point lo = point_from_json(g.at("min"));
    const Point hi = point_from_json(g.at("max"));
    std::vector<int> counts = g.at("counts").get<std::vector<int>>();
    if (lo.dim() != hi.dim() || static_cast<int>(counts.size()) != lo.dim()) {
        throw std::invalid_argument("grid min, max and counts must have the same length");
    }
    std::size_t total = 1;
    for (int c : counts) {
        if (c < 1) throw std::invalid_argument("grid counts must be >= 1");
        total *= static_cast<std::size_t>(c);
    }
    // First axis varies fastest.
    for (std::size_t flat = 0; flat < total; ++flat) {
        Point p = lo;
        std::size_t rest = flat;
        for (int i = 0; i < lo.dim(); ++i) {
            const int c = counts[static_cast<std::size_t>(i)];
            const auto idx = static_cast<double>(rest % static_cast<std::size_t>(c));
            rest /= static_cast<std::size_t>(c);
            p[i] = c == 1 ? lo[i] : lo[i] + (hi[i] - lo[i]) * idx / (c - 1);
        }
        pts.push_back(p);
    }
    return pts;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::invalid_argument("invalid configuration: " + join(issues)), issues_(std::move(issues)) {}

Point parse_point(const std::string& text) {
    std::vector<double> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed point '" + text + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw std::invalid_argument("malformed point '" + text + "'");
        }
        c.push_back(v);
    }
    return Point(std::span<const double>(c));
}

ProblemConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!j.is_object()) throw ConfigError({"configuration must be a JSON object"});

    std::vector<std::string> issues;
    auto attempt = [&](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            issues.push_back(std::string(what) + ": " + e.what());
        }
    };

    int dimension = 0;
    attempt("dimension", [&] {
        dimension = j.at("dimension").get<int>();
        if (dimension < 1 || dimension > 3) throw std::invalid_argument("must be 1, 2 or 3");
    });

    std::optional<Region> outer;
    attempt("outer", [&] { outer = region_from_json(j.at("outer")); });

    std::vector<Cell> cells;
    attempt("cells", [&] {
        const json& jc = j.at("cells");
        if (!jc.is_array() || jc.empty()) throw std::invalid_argument("must be a non-empty array");
        for (std::size_t m = 0; m < jc.size(); ++m) {
            attempt(("cell " + std::to_string(m)).c_str(), [&] {
                const double lambda = jc[m].at("lambda").get<double>();
                if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
                cells.push_back({region_from_json(jc[m].at("region")), lambda});
            });
        }
    });

    std::optional<PiecewiseDomain> domain;
    if (outer && dimension && issues.empty()) {
        attempt("domain", [&] {
            if (kwos::dimension(*outer) != dimension) throw std::invalid_argument("outer region dimension differs from 'dimension'");
            domain.emplace(*outer, cells);
        });
        if (domain) {
            for (auto& msg : domain->validate_partition()) issues.push_back("cells: " + msg);
        }
    }

    std::optional<BoundaryFunction> f;
    attempt("boundary_f", [&] {
        f = BoundaryFunction::parse(j.at("boundary_f").get<std::string>());
        if (dimension && f->variables_needed() > dimension) {
            throw std::invalid_argument("uses a variable not available in dimension " + std::to_string(dimension));
        }
    });

    Method method = Method::Kwos;
    attempt("method", [&] {
        method = parse_method(j.value("method", std::string("kwos")));
        if (method == Method::GrKwos && dimension != 1) {
            throw std::invalid_argument("gr_kwos requires a 1D domain, got dimension " + std::to_string(dimension));
        }
        if (method == Method::GrKwos && domain) require_consecutive_intervals(*domain);
    });

    SolverParams params{};
    if (domain) {
        attempt("params", [&] {
            params = SolverParams::defaults_for(*domain);
            if (j.contains("params")) {
                const json& p = j.at("params");
                params.eps_boundary = p.value("eps_boundary", params.eps_boundary);
                params.eps_interface = p.value("eps_interface", params.eps_interface);
                params.dt = p.value("dt", params.dt);
                params.max_steps = p.value("max_steps", params.max_steps);
            }
            params.validate();
        });
    }

    std::vector<Point> points;
    attempt("eval_points", [&] {
        points = eval_points_from_json(j.at("eval_points"));
        if (points.empty()) throw std::invalid_argument("no evaluation points");
    });
    if (domain) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].dim() != dimension || !contains(domain->outer(), points[i])) {
                issues.push_back("eval_points: point #" + std::to_string(i) + " " + to_string(points[i]) +
                                 " is not interior to the outer domain");
            }
        }
    }

    std::int64_t K = 0;
    attempt("K", [&] {
        K = j.at("K").get<std::int64_t>();
        if (K < 1) throw std::invalid_argument("must be >= 1");
    });

    std::uint64_t seed = 0;
    attempt("seed", [&] {
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned()) throw std::invalid_argument("must be an unsigned 64-bit integer");
            seed = j.at("seed").get<std::uint64_t>();
        }
    });

    if (!issues.empty() || !domain || !f) {
        if (issues.empty()) issues.push_back("incomplete configuration");
        throw ConfigError(std::move(issues));
    }
    return ProblemConfig{std::move(*domain), std::move(*f), method, params, std::move(points), K, seed};
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace kwos
