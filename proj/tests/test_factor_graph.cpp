#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "svgp/factor_graph.hpp"

using namespace svgp;

namespace {

struct Setup {
    StateSpec spec;
    GpPrior prior;
    FactorGraph fg;
};

Setup make_setup(bool with_obstacle = true, int num_support = 5) {
    StateSpec spec{2, num_support, 0.25};
    PriorSpec ps;
    ps.q_c = 1.0;
    ps.sigma_start = 0.05;
    ps.sigma_goal = 0.05;
    ps.goal_pos = Eigen::Vector2d(2.0, 0.0);

    World2D world;
    if (with_obstacle) world.obstacles.push_back(Circle{{1.0, 0.0}, 0.4});

    RobotModel robot;
    robot.kind = RobotModel::Kind::point;
    robot.spheres.push_back({0, 0.0, 0.05});

    ObstacleParams params{0.1, 0.2};
    GpPrior prior = build_prior(spec, ps, Eigen::Vector4d(0, 0, 0, 0));
    FactorGraph fg(world, robot, params, spec);
    return {spec, std::move(prior), std::move(fg)};
}

SupportTrajectory random_trajectory(const StateSpec& spec, std::mt19937_64& rng, double spread) {
    std::normal_distribution<double> normal(0.0, spread);
    SupportTrajectory traj;
    traj.values.resize(spec.trajectory_dim());
    for (int i = 0; i < traj.values.size(); ++i) traj.values[i] = normal(rng);
    return traj;
}

// Dense J from the block rows, for oracle paths.
Eigen::MatrixXd dense_jacobian(const FactorGraph& fg, const ResidualEval& eval) {
    const int ns = fg.model().num_spheres();
    const int sd = fg.spec().state_dim();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(fg.residual_dim(), fg.spec().trajectory_dim());
    for (int n = 0; n < fg.spec().num_support; ++n) {
        j.block(n * ns, n * sd, ns, sd) = eval.j_blocks[n];
    }
    return j;
}

bool near_any_kink(const FactorGraph& fg, const SupportTrajectory& theta, double margin = 1e-3) {
    for (int n = 0; n < fg.spec().num_support; ++n) {
        const Eigen::VectorXd state = state_at(fg.spec(), theta, n);
        const FkResult fk = forward_kinematics(fg.model(), state.head(fg.spec().dof));
        for (std::size_t k = 0; k < fk.centers.size(); ++k) {
            const double d = signed_distance(fg.world(), fk.centers[k]).distance -
                             fg.model().spheres[k].radius;
            if (std::abs(d - fg.params().eps) < margin) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("residual vanishes for a trajectory in free space") {
    Setup s = make_setup(false);
    std::mt19937_64 rng(1);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 1.0);
    const ResidualEval eval = evaluate_residual(s.fg, theta);
    CHECK(eval.h.norm() == 0.0);
    for (const auto& block : eval.j_blocks) CHECK(block.norm() == 0.0);
}

TEST_CASE("one colliding state produces exactly one nonzero residual block") {
    Setup s = make_setup(true);
    SupportTrajectory theta{straight_line_init(s.spec, Eigen::Vector4d(0, 3, 0, 0),
                                               Eigen::Vector2d(4, 3))
                                .values};
    // Move support state 2 into the obstacle at (1, 0).
    state_at(s.spec, theta, 2).head(2) = Eigen::Vector2d(1.0, 0.0);

    const ResidualEval eval = evaluate_residual(s.fg, theta);
    const int ns = s.fg.model().num_spheres();
    for (int n = 0; n < s.spec.num_support; ++n) {
        const double norm = eval.h.segment(n * ns, ns).norm();
        if (n == 2) {
            CHECK(norm > 0.0);
        } else {
            CHECK(norm == 0.0);
        }
    }
}

TEST_CASE("residual jacobian matches finite differences away from kinks") {
    Setup s = make_setup(true);
    std::mt19937_64 rng(5);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 20; ++trial) {
        SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);
        if (near_any_kink(s.fg, theta)) continue;
        const ResidualEval eval = evaluate_residual(s.fg, theta);
        const Eigen::MatrixXd fd = oracles::fd_jacobian(
            [&](const Eigen::VectorXd& x) {
                return evaluate_residual(s.fg, SupportTrajectory{x}).h;
            },
            theta.values, 1e-7);
        CHECK((dense_jacobian(s.fg, eval) - fd).norm() / std::max(1.0, fd.norm()) < 1e-4);
        ++tested;
    }
    CHECK(tested == 20);
}

TEST_CASE("combined cost: free space, single residual, dense oracle") {
    Setup s = make_setup(true);

    SUBCASE("free space costs nothing") {
        Setup free = make_setup(false);
        std::mt19937_64 rng(2);
        CHECK(combined_cost(free.fg, random_trajectory(free.spec, rng, 1.0)) == 0.0);
    }

    SUBCASE("single active residual gives r^2 / (2 sigma^2)") {
        SupportTrajectory theta{straight_line_init(s.spec, Eigen::Vector4d(0, 3, 0, 0),
                                                   Eigen::Vector2d(4, 3))
                                    .values};
        state_at(s.spec, theta, 1).head(2) = Eigen::Vector2d(1.0, 0.0);  // circle center
        const ResidualEval eval = evaluate_residual(s.fg, theta);
        const double r = eval.h.sum();  // only one nonzero entry
        const double sigma = s.fg.params().sigma_obs;
        CHECK(combined_cost(s.fg, theta) ==
              doctest::Approx(r * r / (2.0 * sigma * sigma)).epsilon(1e-14));
    }

    SUBCASE("matches the dense half-norm of Sigma^{-1/2} h") {
        std::mt19937_64 rng(3);
        const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.7);
        const ResidualEval eval = evaluate_residual(s.fg, theta);
        const Eigen::MatrixXd sigma_inv_dense =
            s.fg.sigma_inv() *
            Eigen::MatrixXd::Identity(s.fg.residual_dim(), s.fg.residual_dim());
        const double dense = 0.5 * (sigma_inv_dense.llt().matrixL().transpose() * eval.h)
                                       .squaredNorm();
        CHECK(combined_cost(s.fg, theta) == doctest::Approx(dense).epsilon(1e-10));
    }
}

TEST_CASE("log-posterior gradient is zero at the mean in free space") {
    Setup s = make_setup(false);
    const Eigen::VectorXd g =
        log_posterior_grad(s.fg, s.prior, 1.0, SupportTrajectory{s.prior.mu});
    CHECK(g.norm() == 0.0);
}

TEST_CASE("log-posterior gradient matches finite differences of log p - C/lambda") {
    Setup s = make_setup(true);
    const double lambda = 0.7;
    std::mt19937_64 rng(11);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 15; ++trial) {
        SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);
        if (near_any_kink(s.fg, theta)) continue;
        const Eigen::VectorXd g = log_posterior_grad(s.fg, s.prior, lambda, theta);
        const Eigen::VectorXd fd = oracles::fd_gradient(
            [&](const Eigen::VectorXd& x) {
                const SupportTrajectory t{x};
                return log_prior_and_grad(s.prior, t).first -
                       combined_cost(s.fg, t) / lambda;
            },
            theta.values, 1e-6);
        CHECK(oracles::rel_error(g, fd) < 1e-4);
        ++tested;
    }
    CHECK(tested == 15);
}

TEST_CASE("large lambda recovers the prior-only gradient") {
    Setup s = make_setup(true);
    SupportTrajectory theta{s.prior.mu};
    state_at(s.spec, theta, 2).head(2) = Eigen::Vector2d(1.0, 0.0);  // force h != 0
    CHECK(combined_cost(s.fg, theta) > 0.0);

    const Eigen::VectorXd g = log_posterior_grad(s.fg, s.prior, 1e12, theta);
    const Eigen::VectorXd prior_g = log_prior_and_grad(s.prior, theta).second;
    CHECK((g - prior_g).norm() < 1e-9 * std::max(1.0, prior_g.norm()));
}

TEST_CASE("gauss-newton hessian reduces to the prior precision in free space") {
    Setup s = make_setup(false);
    std::mt19937_64 rng(13);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 1.0);
    const BlockTridiagonal h = gauss_newton_hessian(s.fg, s.prior, 1.0, theta);
    CHECK((h.to_dense() - s.prior.precision.to_dense()).norm() == 0.0);
}

TEST_CASE("hessian minus prior precision is PSD") {
    Setup s = make_setup(true);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);
        const BlockTridiagonal h = gauss_newton_hessian(s.fg, s.prior, 0.5, theta);
        const Eigen::MatrixXd diff = h.to_dense() - s.prior.precision.to_dense();
        CHECK(oracles::min_eigenvalue(diff) > -1e-12);
    }
}

TEST_CASE("hessian matches the dense assembly on a small instance") {
    Setup s = make_setup(true, 3);  // N = 2
    const double lambda = 0.9;
    std::mt19937_64 rng(19);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);

    const ResidualEval eval = evaluate_residual(s.fg, theta);
    const Eigen::MatrixXd j = dense_jacobian(s.fg, eval);
    const Eigen::MatrixXd dense =
        s.prior.precision.to_dense() + j.transpose() * (s.fg.sigma_inv() * j) / lambda;
    const BlockTridiagonal h = gauss_newton_hessian(s.fg, s.prior, lambda, theta);
    CHECK((h.to_dense() - dense).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("likelihood curvature stays strictly inside the envelope") {
    // Obstacle factors are unary, so J^T Sigma^{-1} J must be block-diagonal.
    Setup s = make_setup(true);
    std::mt19937_64 rng(23);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);
    const BlockTridiagonal h = gauss_newton_hessian(s.fg, s.prior, 1.0, theta);
    for (int n = 0; n + 1 < s.spec.num_support; ++n) {
        CHECK((h.upper(n) - s.prior.precision.upper(n)).norm() == 0.0);
    }
}

TEST_CASE("gradient composes exactly from the prior and cost pieces") {
    Setup s = make_setup(true);
    const double lambda = 1.3;
    std::mt19937_64 rng(29);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);

    const Eigen::VectorXd g = log_posterior_grad(s.fg, s.prior, lambda, theta);

    const ResidualEval eval = evaluate_residual(s.fg, theta);
    const Eigen::VectorXd cost_grad =
        dense_jacobian(s.fg, eval).transpose() * (s.fg.sigma_inv() * eval.h);
    const Eigen::VectorXd composed =
        log_prior_and_grad(s.prior, theta).second - cost_grad / lambda;
    CHECK((g - composed).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scaling lambda by a power of two scales the likelihood part exactly") {
    Setup s = make_setup(true);
    std::mt19937_64 rng(31);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);

    const Eigen::VectorXd prior_g = log_prior_and_grad(s.prior, theta).second;
    const Eigen::VectorXd lik1 = log_posterior_grad(s.fg, s.prior, 1.0, theta) - prior_g;
    const Eigen::VectorXd lik4 = log_posterior_grad(s.fg, s.prior, 4.0, theta) - prior_g;
    CHECK(lik4 == lik1 / 4.0);
}

TEST_CASE("evaluate_particle agrees with the standalone operations") {
    Setup s = make_setup(true);
    const double lambda = 0.8;
    std::mt19937_64 rng(37);
    const SupportTrajectory theta = random_trajectory(s.spec, rng, 0.8);

    ParticleWorkspace ws;
    evaluate_particle(s.fg, s.prior, lambda, theta, ws);
    CHECK(ws.combined_cost == combined_cost(s.fg, theta));
    CHECK(ws.log_prior == log_prior_and_grad(s.prior, theta).first);
    CHECK((ws.grad - log_posterior_grad(s.fg, s.prior, lambda, theta)).norm() == 0.0);
    CHECK((ws.hessian.to_dense() -
           gauss_newton_hessian(s.fg, s.prior, lambda, theta).to_dense())
              .norm() == 0.0);
}
