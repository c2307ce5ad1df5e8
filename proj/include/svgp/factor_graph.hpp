#ifndef SVGP_FACTOR_GRAPH_HPP
#define SVGP_FACTOR_GRAPH_HPP

#include <vector>

#include <Eigen/Core>

#include "svgp/block_tridiag.hpp"
#include "svgp/environment.hpp"
#include "svgp/gp_prior.hpp"
#include "svgp/trajectory.hpp"

namespace svgp {

/// Stacked residual h(theta) with its block-sparse Jacobian: state n's
/// residual block depends only on theta_n, so J holds exactly one
/// num_spheres x state_dim block per support state.
struct ResidualEval {
    Eigen::VectorXd h;
    std::vector<Eigen::MatrixXd> j_blocks;  // one per support state
};

/// Per-particle evaluation scratch, filled once per iteration.
struct ParticleWorkspace {
    ResidualEval residual;
    Eigen::VectorXd grad;        // gradient of log p(theta | O=1)
    BlockTridiagonal hessian;    // Gauss-Newton: K^{-1} + J^T Sigma^{-1} J / lambda
    double combined_cost = 0.0;  // C~(theta) = 1/2 h^T Sigma^{-1} h
    double log_prior = 0.0;
};

/// Obstacle likelihood over all support states. The residual of every state
/// is the vector of per-sphere hinge costs; Sigma^{-1} is block-diagonal
/// with one isotropic block (1/sigma_obs^2) I per state.
class FactorGraph {
public:
    FactorGraph(World2D world, RobotModel model, ObstacleParams params, StateSpec spec);

    const StateSpec& spec() const { return spec_; }
    const World2D& world() const { return world_; }
    const RobotModel& model() const { return model_; }
    const ObstacleParams& params() const { return params_; }

    int residual_dim() const { return spec_.num_support * model_.num_spheres(); }
    /// Per-residual weight: every diagonal entry of Sigma^{-1}.
    double sigma_inv() const { return sigma_inv_; }

private:
    World2D world_;
    RobotModel model_;
    ObstacleParams params_;
    StateSpec spec_;
    double sigma_inv_;
};

ResidualEval evaluate_residual(const FactorGraph& fg, const SupportTrajectory& theta);

/// C~(theta) = 1/2 h^T Sigma^{-1} h.
double combined_cost(const FactorGraph& fg, const SupportTrajectory& theta);

/// -K^{-1}(theta - mu) - J^T Sigma^{-1} h / lambda. The temperature lambda
/// scales the likelihood term, matching an optimality likelihood
/// exp(-C~/lambda); Sigma stays a pure geometry weight.
Eigen::VectorXd log_posterior_grad(const FactorGraph& fg, const GpPrior& prior, double lambda,
                                   const SupportTrajectory& theta);

/// H = K^{-1} + J^T Sigma^{-1} J / lambda. The likelihood part is
/// block-diagonal (obstacle factors are unary), so H keeps the prior's
/// block-tridiagonal envelope and is PSD.
BlockTridiagonal gauss_newton_hessian(const FactorGraph& fg, const GpPrior& prior, double lambda,
                                      const SupportTrajectory& theta);

/// One fused pass filling the whole workspace; shares the residual
/// evaluation across cost, gradient, and Hessian.
void evaluate_particle(const FactorGraph& fg, const GpPrior& prior, double lambda,
                       const SupportTrajectory& theta, ParticleWorkspace& ws);

}  // namespace svgp

#endif  // SVGP_FACTOR_GRAPH_HPP
