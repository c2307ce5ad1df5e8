#include "svgp/planner.hpp"

#include <chrono>
#include <random>
#include <stdexcept>
#include <utility>

#include "svgp/parallel.hpp"
#include "svgp/svgd.hpp"

namespace svgp {

void PlanRequest::validate() const {
    spec.validate();
    prior.validate(spec);
    world.validate();
    model.validate(spec.dof);
    obstacle.validate();
    config.validate();
    if (start.size() != spec.state_dim()) {
        throw std::invalid_argument("PlanRequest: start must have state_dim entries");
    }
    if (init_jitter < 0.0) throw std::invalid_argument("PlanRequest: init_jitter must be >= 0");
}

const char* to_string(Termination t) {
    return t == Termination::converged ? "converged" : "max_iters";
}

namespace {

ParticleSet initialize_particles(const PlanRequest& req, const GpPrior& prior,
                                 std::mt19937_64& rng) {
    if (req.init_mode == InitMode::prior_sample) {
        return sample_prior(prior, rng, req.config.num_particles);
    }
    const SupportTrajectory base = straight_line_init(req.spec, req.start, req.prior.goal_pos);
    std::normal_distribution<double> normal(0.0, 1.0);
    ParticleSet set;
    set.spec = req.spec;
    set.particles.assign(req.config.num_particles, base);
    if (req.init_jitter > 0.0) {
        for (auto& p : set.particles) {
            for (int k = 0; k < p.values.size(); ++k) p.values[k] += req.init_jitter * normal(rng);
        }
    }
    return set;
}

IterationReport make_report(int iter, const std::vector<ParticleWorkspace>& ws, double lambda,
                            double mean_update_norm) {
    const int np = static_cast<int>(ws.size());
    Eigen::VectorXd costs(np);
    Eigen::VectorXd log_priors(np);
    for (int i = 0; i < np; ++i) {
        costs[i] = ws[i].combined_cost;
        log_priors[i] = ws[i].log_prior;
    }

    IterationReport report;
    report.iter = iter;
    report.weights = particle_weights(costs, log_priors, lambda);
    report.v_hat = value_estimate(costs, log_priors, lambda);
    const CostStats stats = cost_statistics(costs, report.weights);
    report.expected_cost = stats.expected_cost;
    report.cost_variance = stats.cost_variance;
    report.mean_update_norm = mean_update_norm;
    return report;
}

}  // namespace

PlanResult plan(const PlanRequest& req) {
    req.validate();
    const auto t_start = std::chrono::steady_clock::now();

    const PlannerConfig& cfg = req.config;
    const GpPrior prior = build_prior(req.spec, req.prior, req.start);
    const FactorGraph fg(req.world, req.model, req.obstacle, req.spec);

    std::mt19937_64 rng(cfg.seed);
    PlanResult result;
    result.particles = initialize_particles(req, prior, rng);
    const int np = result.particles.size();

    std::vector<ParticleWorkspace> ws(np);
    auto evaluate_all = [&] {
        parallel_for(np, cfg.threads, [&](int i) {
            evaluate_particle(fg, prior, cfg.lambda, result.particles.particles[i], ws[i]);
        });
    };

    evaluate_all();
    result.reports.push_back(make_report(0, ws, cfg.lambda, 0.0));

    result.termination = Termination::max_iters;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        try {
            std::vector<const BlockTridiagonal*> hessians(np);
            for (int i = 0; i < np; ++i) hessians[i] = &ws[i].hessian;
            const Metric metric = build_metric(hessians);

            const double bandwidth = cfg.bandwidth.kind == BandwidthMode::Kind::fixed
                                         ? cfg.bandwidth.value
                                         : median_bandwidth(metric, result.particles);

            const KernelEval kernels =
                build_kernel_eval(metric, bandwidth, result.particles, cfg.threads);
            std::vector<Eigen::VectorXd> grads(np);
            for (int i = 0; i < np; ++i) grads[i] = ws[i].grad;
            const std::vector<Eigen::VectorXd> phi = svgd_direction(kernels, grads);

            const std::vector<double> norms =
                preconditioned_step(metric, phi, cfg.step_size, result.particles, cfg.threads);
            result.particles.generation = iter;

            double norm_sum = 0.0;
            for (double n : norms) norm_sum += n;
            const double mean_norm = norm_sum / np;

            evaluate_all();
            result.reports.push_back(make_report(iter, ws, cfg.lambda, mean_norm));

            if (mean_norm < cfg.update_tol) {
                result.termination = Termination::converged;
                break;
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("plan: iteration " + std::to_string(iter) + ": " + e.what());
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace svgp
