#include "svgp/factor_graph.hpp"

#include <stdexcept>
#include <utility>

namespace svgp {

FactorGraph::FactorGraph(World2D world, RobotModel model, ObstacleParams params, StateSpec spec)
    : world_(std::move(world)), model_(std::move(model)), params_(params), spec_(spec) {
    spec_.validate();
    world_.validate();
    model_.validate(spec_.dof);
    params_.validate();
    sigma_inv_ = 1.0 / (params_.sigma_obs * params_.sigma_obs);
}

ResidualEval evaluate_residual(const FactorGraph& fg, const SupportTrajectory& theta) {
    const StateSpec& spec = fg.spec();
    if (theta.values.size() != spec.trajectory_dim()) {
        throw std::invalid_argument("evaluate_residual: dimension mismatch");
    }
    const int ns = fg.model().num_spheres();

    ResidualEval eval;
    eval.h.resize(fg.residual_dim());
    eval.j_blocks.reserve(spec.num_support);
    for (int n = 0; n < spec.num_support; ++n) {
        StateResidual sr = state_obstacle_residual(fg.world(), fg.model(), fg.params(),
                                                   state_at(spec, theta, n));
        eval.h.segment(n * ns, ns) = sr.residuals;
        eval.j_blocks.push_back(std::move(sr.jacobian));
    }
    return eval;
}

namespace {

double quadratic_cost(const FactorGraph& fg, const Eigen::VectorXd& h) {
    return 0.5 * fg.sigma_inv() * h.squaredNorm();
}

// J^T Sigma^{-1} h, accumulated block row by block row.
Eigen::VectorXd weighted_jt_h(const FactorGraph& fg, const ResidualEval& eval) {
    const StateSpec& spec = fg.spec();
    const int sd = spec.state_dim();
    const int ns = fg.model().num_spheres();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(spec.trajectory_dim());
    for (int n = 0; n < spec.num_support; ++n) {
        out.segment(n * sd, sd).noalias() =
            fg.sigma_inv() * (eval.j_blocks[n].transpose() * eval.h.segment(n * ns, ns));
    }
    return out;
}

void add_weighted_jtj(const FactorGraph& fg, const ResidualEval& eval, double scale,
                      BlockTridiagonal& hessian) {
    for (int n = 0; n < fg.spec().num_support; ++n) {
        hessian.diag(n).noalias() +=
            scale * fg.sigma_inv() * (eval.j_blocks[n].transpose() * eval.j_blocks[n]);
    }
}

}  // namespace

double combined_cost(const FactorGraph& fg, const SupportTrajectory& theta) {
    return quadratic_cost(fg, evaluate_residual(fg, theta).h);
}

Eigen::VectorXd log_posterior_grad(const FactorGraph& fg, const GpPrior& prior, double lambda,
                                   const SupportTrajectory& theta) {
    const ResidualEval eval = evaluate_residual(fg, theta);
    auto [log_p, prior_grad] = log_prior_and_grad(prior, theta);
    (void)log_p;
    return prior_grad - weighted_jt_h(fg, eval) / lambda;
}

BlockTridiagonal gauss_newton_hessian(const FactorGraph& fg, const GpPrior& prior, double lambda,
                                      const SupportTrajectory& theta) {
    const ResidualEval eval = evaluate_residual(fg, theta);
    BlockTridiagonal hessian = prior.precision;
    add_weighted_jtj(fg, eval, 1.0 / lambda, hessian);
    return hessian;
}

void evaluate_particle(const FactorGraph& fg, const GpPrior& prior, double lambda,
                       const SupportTrajectory& theta, ParticleWorkspace& ws) {
    ws.residual = evaluate_residual(fg, theta);
    ws.combined_cost = quadratic_cost(fg, ws.residual.h);

    auto [log_p, prior_grad] = log_prior_and_grad(prior, theta);
    ws.log_prior = log_p;
    ws.grad = prior_grad - weighted_jt_h(fg, ws.residual) / lambda;

    ws.hessian = prior.precision;
    add_weighted_jtj(fg, ws.residual, 1.0 / lambda, ws.hessian);
}

}  // namespace svgp
