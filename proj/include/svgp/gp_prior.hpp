#ifndef SVGP_GP_PRIOR_HPP
#define SVGP_GP_PRIOR_HPP

#include <random>
#include <utility>

#include <Eigen/Core>

#include "svgp/block_tridiag.hpp"
#include "svgp/trajectory.hpp"

namespace svgp {

/// Parameters of the discrete trajectory prior: a constant-velocity
/// (white-noise-on-acceleration) Markov GP plus unary pins on the first
/// state and on the goal position.
struct PriorSpec {
    double q_c = 1.0;          // noise power-spectral density
    double sigma_start = 1e-3; // start-pin stddev, full state
    double sigma_goal = 1e-2;  // goal-pin stddev, position block of the last state
    Eigen::VectorXd goal_pos;  // dof entries

    void validate(const StateSpec& spec) const;
};

/// Discrete Gaussian trajectory prior p(theta) = N(mu, K), held in
/// precision form. K^{-1} is block-tridiagonal (block size state_dim) and
/// kept factorized for solves, sampling, and the log-determinant.
struct GpPrior {
    StateSpec spec;
    Eigen::VectorXd mu;
    BlockTridiagonal precision;   // K^{-1}
    BlockCholesky chol;           // K^{-1} = L L^T
    double log_norm_const = 0.0;  // -1/2 log det(2 pi K)
};

/// Assembles K^{-1} as the sum of lifted factor precisions:
///   - binary GP factors between adjacent states with transition
///     Phi = [[I, dt I], [0, I]] and noise Q = [[dt^3/3, dt^2/2],
///     [dt^2/2, dt]] (x) q_c I, contributing [-Phi I]^T Q^{-1} [-Phi I];
///   - a unary start factor (1/sigma_start^2) I on the full first state;
///   - a unary goal factor (1/sigma_goal^2) I on the position block of the
///     last state.
/// mu is the constant-velocity trajectory from start toward goal_pos (the
/// same construction as straight_line_init), so every factor residual
/// vanishes at mu and the assembled quadratic is centered there.
/// Throws std::runtime_error if the assembled precision is not positive
/// definite.
GpPrior build_prior(const StateSpec& spec, const PriorSpec& prior_spec,
                    const Eigen::VectorXd& start);

/// log p(theta) = log_norm_const - 1/2 (theta-mu)^T K^{-1} (theta-mu) and
/// its gradient -K^{-1}(theta-mu). Throws on non-finite input.
std::pair<double, Eigen::VectorXd> log_prior_and_grad(const GpPrior& prior,
                                                      const SupportTrajectory& theta);

/// mu + L^{-T} z for a given noise vector z; the deterministic core of
/// sample_prior.
SupportTrajectory trajectory_from_noise(const GpPrior& prior, const Eigen::VectorXd& z);

/// Draws count trajectories theta = mu + L^{-T} z, z ~ N(0, I), consuming
/// the generator one particle at a time in coordinate order.
ParticleSet sample_prior(const GpPrior& prior, std::mt19937_64& rng, int count);

}  // namespace svgp

#endif  // SVGP_GP_PRIOR_HPP
