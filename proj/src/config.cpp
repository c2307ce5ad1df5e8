#include "svgp/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace svgp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, int line) {
    const std::string t = trim(text);
    const char* begin = t.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ConfigError("expected a number, got '" + t + "'", line);
    }
    return v;
}

long parse_long(const std::string& text, int line) {
    const std::string t = trim(text);
    const char* begin = t.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ConfigError("expected an integer, got '" + t + "'", line);
    }
    return v;
}

std::vector<double> parse_list(const std::string& text, int line) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, line));
    if (out.empty()) throw ConfigError("expected a comma-separated list", line);
    return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void expect_count(const std::vector<double>& v, std::size_t n, const std::string& key, int line) {
    if (v.size() != n) {
        throw ConfigError(key + " expects " + std::to_string(n) + " values, got " +
                              std::to_string(v.size()),
                          line);
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_list(const Eigen::VectorXd& v) {
    std::string out;
    for (int i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

struct Seen {
    bool start = false, goal = false, dof = false, num_support = false, dt = false, kind = false;
};

}  // namespace

PlanRequest load_plan_request(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file '" + path + "'", 0);

    PlanRequest req;
    req.model.spheres.clear();
    Seen seen;

    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(file, raw)) {
        ++line;
        std::string text = raw;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
        text = trim(text);
        if (text.empty()) continue;

        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError("malformed section header", line);
            section = trim(text.substr(1, text.size() - 2));
            if (section != "state" && section != "prior" && section != "world" &&
                section != "robot" && section != "obstacle" && section != "planner") {
                throw ConfigError("unknown section [" + section + "]", line);
            }
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (section.empty()) throw ConfigError("key '" + key + "' outside any section", line);

        if (section == "state") {
            if (key == "dof") {
                req.spec.dof = static_cast<int>(parse_long(value, line));
                seen.dof = true;
            } else if (key == "num_support") {
                req.spec.num_support = static_cast<int>(parse_long(value, line));
                seen.num_support = true;
            } else if (key == "dt") {
                req.spec.dt = parse_double(value, line);
                seen.dt = true;
            } else if (key == "start") {
                req.start = to_vector(parse_list(value, line));
                seen.start = true;
            } else {
                throw ConfigError("unknown key '" + key + "' in [state]", line);
            }
        } else if (section == "prior") {
            if (key == "q_c") {
                req.prior.q_c = parse_double(value, line);
            } else if (key == "sigma_start") {
                req.prior.sigma_start = parse_double(value, line);
            } else if (key == "sigma_goal") {
                req.prior.sigma_goal = parse_double(value, line);
            } else if (key == "goal") {
                req.prior.goal_pos = to_vector(parse_list(value, line));
                seen.goal = true;
            } else {
                throw ConfigError("unknown key '" + key + "' in [prior]", line);
            }
        } else if (section == "world") {
            if (key == "circle") {
                const auto v = parse_list(value, line);
                expect_count(v, 3, "circle", line);
                req.world.obstacles.push_back(Circle{{v[0], v[1]}, v[2]});
            } else if (key == "box") {
                const auto v = parse_list(value, line);
                expect_count(v, 4, "box", line);
                req.world.obstacles.push_back(Box{{v[0], v[1]}, {v[2], v[3]}});
            } else if (key == "bounds") {
                const auto v = parse_list(value, line);
                expect_count(v, 4, "bounds", line);
                req.world.bounds = Box{{v[0], v[1]}, {v[2], v[3]}};
            } else {
                throw ConfigError("unknown key '" + key + "' in [world]", line);
            }
        } else if (section == "robot") {
            if (key == "kind") {
                if (value == "point") {
                    req.model.kind = RobotModel::Kind::point;
                } else if (value == "planar_arm") {
                    req.model.kind = RobotModel::Kind::planar_arm;
                } else {
                    throw ConfigError("kind must be 'point' or 'planar_arm'", line);
                }
                seen.kind = true;
            } else if (key == "link_lengths") {
                const auto v = parse_list(value, line);
                req.model.link_lengths.assign(v.begin(), v.end());
            } else if (key == "sphere") {
                const auto v = parse_list(value, line);
                expect_count(v, 3, "sphere", line);
                req.model.spheres.push_back(
                    CollisionSphere{static_cast<int>(v[0]), v[1], v[2]});
            } else {
                throw ConfigError("unknown key '" + key + "' in [robot]", line);
            }
        } else if (section == "obstacle") {
            if (key == "eps") {
                req.obstacle.eps = parse_double(value, line);
            } else if (key == "sigma_obs") {
                req.obstacle.sigma_obs = parse_double(value, line);
            } else {
                throw ConfigError("unknown key '" + key + "' in [obstacle]", line);
            }
        } else {  // planner
            if (key == "lambda") {
                req.config.lambda = parse_double(value, line);
            } else if (key == "step_size") {
                req.config.step_size = parse_double(value, line);
            } else if (key == "max_iters") {
                req.config.max_iters = static_cast<int>(parse_long(value, line));
            } else if (key == "update_tol") {
                req.config.update_tol = parse_double(value, line);
            } else if (key == "bandwidth") {
                if (value == "median") {
                    req.config.bandwidth = BandwidthMode::median();
                } else {
                    req.config.bandwidth = BandwidthMode::fixed(parse_double(value, line));
                }
            } else if (key == "seed") {
                req.config.seed = static_cast<std::uint64_t>(parse_long(value, line));
            } else if (key == "particles") {
                req.config.num_particles = static_cast<int>(parse_long(value, line));
            } else if (key == "threads") {
                req.config.threads = static_cast<int>(parse_long(value, line));
            } else if (key == "init") {
                const auto comma = value.find(',');
                const std::string mode =
                    trim(comma == std::string::npos ? value : value.substr(0, comma));
                if (mode == "prior" && comma == std::string::npos) {
                    req.init_mode = InitMode::prior_sample;
                } else if (mode == "straight_line") {
                    req.init_mode = InitMode::straight_line;
                    req.init_jitter =
                        comma == std::string::npos ? 0.0 : parse_double(value.substr(comma + 1), line);
                } else {
                    throw ConfigError("init must be 'prior' or 'straight_line[, jitter]'", line);
                }
            } else {
                throw ConfigError("unknown key '" + key + "' in [planner]", line);
            }
        }
    }

    if (!seen.dof || !seen.num_support || !seen.dt || !seen.start) {
        throw ConfigError("[state] must set dof, num_support, dt, start", 0);
    }
    if (!seen.goal) throw ConfigError("[prior] must set goal", 0);
    if (!seen.kind) throw ConfigError("[robot] must set kind", 0);

    try {
        req.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what(), 0);
    }
    return req;
}

std::string render_config(const PlanRequest& req) {
    std::ostringstream out;
    out << "[state]\n";
    out << "dof = " << req.spec.dof << "\n";
    out << "num_support = " << req.spec.num_support << "\n";
    out << "dt = " << format_double(req.spec.dt) << "\n";
    out << "start = " << format_list(req.start) << "\n";

    out << "\n[prior]\n";
    out << "q_c = " << format_double(req.prior.q_c) << "\n";
    out << "sigma_start = " << format_double(req.prior.sigma_start) << "\n";
    out << "sigma_goal = " << format_double(req.prior.sigma_goal) << "\n";
    out << "goal = " << format_list(req.prior.goal_pos) << "\n";

    out << "\n[world]\n";
    for (const auto& obs : req.world.obstacles) {
        if (const auto* c = std::get_if<Circle>(&obs)) {
            out << "circle = " << format_double(c->center.x()) << ", "
                << format_double(c->center.y()) << ", " << format_double(c->radius) << "\n";
        } else {
            const auto& b = std::get<Box>(obs);
            out << "box = " << format_double(b.lo.x()) << ", " << format_double(b.lo.y()) << ", "
                << format_double(b.hi.x()) << ", " << format_double(b.hi.y()) << "\n";
        }
    }
    out << "bounds = " << format_double(req.world.bounds.lo.x()) << ", "
        << format_double(req.world.bounds.lo.y()) << ", " << format_double(req.world.bounds.hi.x())
        << ", " << format_double(req.world.bounds.hi.y()) << "\n";

    out << "\n[robot]\n";
    out << "kind = " << (req.model.kind == RobotModel::Kind::point ? "point" : "planar_arm")
        << "\n";
    if (!req.model.link_lengths.empty()) {
        out << "link_lengths = "
            << format_list(Eigen::Map<const Eigen::VectorXd>(
                   req.model.link_lengths.data(),
                   static_cast<Eigen::Index>(req.model.link_lengths.size())))
            << "\n";
    }
    for (const auto& s : req.model.spheres) {
        out << "sphere = " << s.link << ", " << format_double(s.offset) << ", "
            << format_double(s.radius) << "\n";
    }

    out << "\n[obstacle]\n";
    out << "eps = " << format_double(req.obstacle.eps) << "\n";
    out << "sigma_obs = " << format_double(req.obstacle.sigma_obs) << "\n";

    out << "\n[planner]\n";
    out << "lambda = " << format_double(req.config.lambda) << "\n";
    out << "step_size = " << format_double(req.config.step_size) << "\n";
    out << "max_iters = " << req.config.max_iters << "\n";
    out << "update_tol = " << format_double(req.config.update_tol) << "\n";
    if (req.config.bandwidth.kind == BandwidthMode::Kind::median) {
        out << "bandwidth = median\n";
    } else {
        out << "bandwidth = " << format_double(req.config.bandwidth.value) << "\n";
    }
    out << "seed = " << req.config.seed << "\n";
    out << "particles = " << req.config.num_particles << "\n";
    out << "threads = " << req.config.threads << "\n";
    if (req.init_mode == InitMode::prior_sample) {
        out << "init = prior\n";
    } else {
        out << "init = straight_line, " << format_double(req.init_jitter) << "\n";
    }
    return out.str();
}

}  // namespace svgp
