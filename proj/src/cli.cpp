#include "svgp/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "svgp/config.hpp"

namespace svgp {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);  // binary: byte-stable line endings
    if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
    return file;
}

void write_trace(const PlanResult& result, const std::filesystem::path& path) {
    auto file = open_output(path);
    file << "iter,v_hat,expected_cost,cost_variance,mean_update_norm\n";
    for (const auto& r : result.reports) {
        file << r.iter << ',' << g17(r.v_hat) << ',' << g17(r.expected_cost) << ','
             << g17(r.cost_variance) << ',' << g17(r.mean_update_norm) << '\n';
    }
}

void write_particles(const PlanRequest& req, const PlanResult& result,
                     const std::filesystem::path& dir) {
    const StateSpec& spec = req.spec;
    for (int i = 0; i < result.particles.size(); ++i) {
        auto file = open_output(dir / ("particle_" + std::to_string(i) + ".csv"));
        file << 't';
        for (int d = 0; d < spec.dof; ++d) file << ",q" << d;
        for (int d = 0; d < spec.dof; ++d) file << ",v" << d;
        file << '\n';
        const auto& traj = result.particles.particles[i];
        for (int n = 0; n < spec.num_support; ++n) {
            file << g17(n * spec.dt);
            const auto state = state_at(spec, traj, n);
            for (int k = 0; k < spec.state_dim(); ++k) file << ',' << g17(state[k]);
            file << '\n';
        }
    }
}

void write_weights(const PlanResult& result, const std::filesystem::path& path) {
    auto file = open_output(path);
    file << "particle,weight\n";
    const auto& w = result.reports.back().weights;
    for (int i = 0; i < w.size(); ++i) file << i << ',' << g17(w[i]) << '\n';
}

void write_meta(const PlanRequest& req, const PlanResult& result,
                const std::filesystem::path& path) {
    auto file = open_output(path);
    file << "# resolved configuration\n" << render_config(req);
    file << "\n# result\n";
    file << "termination = " << to_string(result.termination) << "\n";
    file << "iterations = " << result.reports.back().iter << "\n";
}

}  // namespace

void write_outputs(const PlanRequest& req, const PlanResult& result, const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_trace(result, dir / "trace.csv");
    write_particles(req, result, dir);
    write_weights(result, dir / "weights.csv");
    write_meta(req, result, dir / "meta.txt");
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Stein variational Gaussian-process motion planner"};
    app.require_subcommand(1);

    auto* plan_cmd = app.add_subcommand("plan", "optimize a trajectory distribution");
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int particles = 0;
    int max_iters = 0;
    int threads = 0;
    plan_cmd->add_option("--config", config_path, "scenario config file")->required();
    plan_cmd->add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = plan_cmd->add_option("--seed", seed, "override RNG seed");
    auto* particles_opt = plan_cmd->add_option("--particles", particles, "override particle count");
    auto* iters_opt = plan_cmd->add_option("--max-iters", max_iters, "override iteration budget");
    auto* threads_opt = plan_cmd->add_option("--threads", threads, "override worker count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    PlanRequest req;
    try {
        req = load_plan_request(config_path);
        if (seed_opt->count() > 0) req.config.seed = seed;
        if (particles_opt->count() > 0) req.config.num_particles = particles;
        if (iters_opt->count() > 0) req.config.max_iters = max_iters;
        if (threads_opt->count() > 0) req.config.threads = threads;
        req.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
        return 2;
    }

    PlanResult result;
    try {
        result = plan(req);
        write_outputs(req, result, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    const auto& last = result.reports.back();
    std::cout << "terminated: " << to_string(result.termination) << " after " << last.iter
              << " iterations in " << result.wall_seconds << " s\n";
    std::cout << "v_hat " << last.v_hat << "  E[C] " << last.expected_cost << "  Var[C] "
              << last.cost_variance << "\n";
    std::cout << "outputs written to " << out_dir << "\n";
    return 0;
}

}  // namespace svgp
