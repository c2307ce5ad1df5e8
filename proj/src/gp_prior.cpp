#include "svgp/gp_prior.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svgp {

void PriorSpec::validate(const StateSpec& spec) const {
    if (!(q_c > 0.0)) throw std::invalid_argument("PriorSpec: q_c must be > 0");
    if (!(sigma_start > 0.0)) throw std::invalid_argument("PriorSpec: sigma_start must be > 0");
    if (!(sigma_goal > 0.0)) throw std::invalid_argument("PriorSpec: sigma_goal must be > 0");
    if (goal_pos.size() != spec.dof) {
        throw std::invalid_argument("PriorSpec: goal_pos must have dof entries");
    }
}

GpPrior build_prior(const StateSpec& spec, const PriorSpec& prior_spec,
                    const Eigen::VectorXd& start) {
    spec.validate();
    prior_spec.validate(spec);

    const int d = spec.dof;
    const int sd = spec.state_dim();
    const int nb = spec.num_support;
    const double dt = spec.dt;

    GpPrior prior;
    prior.spec = spec;
    prior.mu = straight_line_init(spec, start, prior_spec.goal_pos).values;
    prior.precision = BlockTridiagonal(nb, sd);

    // Q^{-1} for the constant-velocity transition noise, per DoF:
    //   [[12/dt^3, -6/dt^2], [-6/dt^2, 4/dt]] / q_c
    Eigen::MatrixXd q_inv = Eigen::MatrixXd::Zero(sd, sd);
    const double iq = 1.0 / prior_spec.q_c;
    for (int i = 0; i < d; ++i) {
        q_inv(i, i) = 12.0 / (dt * dt * dt) * iq;
        q_inv(i, d + i) = -6.0 / (dt * dt) * iq;
        q_inv(d + i, i) = -6.0 / (dt * dt) * iq;
        q_inv(d + i, d + i) = 4.0 / dt * iq;
    }

    Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(sd, sd);
    for (int i = 0; i < d; ++i) phi(i, d + i) = dt;

    // Binary GP factors: residual theta_{n+1} - Phi theta_n (about mu),
    // lifted contribution [-Phi I]^T Q^{-1} [-Phi I].
    const Eigen::MatrixXd phit_qinv = phi.transpose() * q_inv;
    const Eigen::MatrixXd gp_diag_prev = phit_qinv * phi;  // Phi^T Q^{-1} Phi
    const Eigen::MatrixXd gp_off = -phit_qinv;             // -Phi^T Q^{-1}
    for (int n = 0; n + 1 < nb; ++n) {
        prior.precision.diag(n) += gp_diag_prev;
        prior.precision.diag(n + 1) += q_inv;
        prior.precision.upper(n) += gp_off;
    }

    // Unary pins. Both are centered at mu: the start factor fixes the full
    // first state at mu_0, the goal factor fixes the position block of the
    // last state at goal_pos (= the last mu positions).
    prior.precision.diag(0) +=
        Eigen::MatrixXd::Identity(sd, sd) / (prior_spec.sigma_start * prior_spec.sigma_start);
    for (int i = 0; i < d; ++i) {
        prior.precision.diag(nb - 1)(i, i) += 1.0 / (prior_spec.sigma_goal * prior_spec.sigma_goal);
    }

    if (!prior.chol.compute(prior.precision)) {
        throw std::runtime_error("build_prior: assembled precision is not positive definite");
    }

    const double dim = static_cast<double>(spec.trajectory_dim());
    prior.log_norm_const = 0.5 * prior.chol.log_det() - 0.5 * dim * std::log(2.0 * std::numbers::pi);
    return prior;
}

std::pair<double, Eigen::VectorXd> log_prior_and_grad(const GpPrior& prior,
                                                      const SupportTrajectory& theta) {
    if (theta.values.size() != prior.mu.size()) {
        throw std::invalid_argument("log_prior_and_grad: dimension mismatch");
    }
    if (!theta.values.allFinite()) {
        throw std::invalid_argument("log_prior_and_grad: non-finite trajectory");
    }
    const Eigen::VectorXd dev = theta.values - prior.mu;
    Eigen::VectorXd grad = prior.precision.multiply(dev);
    const double log_p = prior.log_norm_const - 0.5 * dev.dot(grad);
    grad = -grad;
    return {log_p, std::move(grad)};
}

SupportTrajectory trajectory_from_noise(const GpPrior& prior, const Eigen::VectorXd& z) {
    if (z.size() != prior.mu.size()) {
        throw std::invalid_argument("trajectory_from_noise: dimension mismatch");
    }
    SupportTrajectory traj;
    traj.values = prior.mu + prior.chol.solve_transposed_factor(z);
    return traj;
}

ParticleSet sample_prior(const GpPrior& prior, std::mt19937_64& rng, int count) {
    if (count < 1) throw std::invalid_argument("sample_prior: count must be >= 1");
    if (!prior.chol.ok()) throw std::runtime_error("sample_prior: prior factorization unavailable");

    std::normal_distribution<double> normal(0.0, 1.0);
    ParticleSet set;
    set.spec = prior.spec;
    set.particles.reserve(count);
    Eigen::VectorXd z(prior.mu.size());
    for (int i = 0; i < count; ++i) {
        for (int k = 0; k < z.size(); ++k) z[k] = normal(rng);
        set.particles.push_back(trajectory_from_noise(prior, z));
    }
    return set;
}

}  // namespace svgp
