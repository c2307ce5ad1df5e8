#include "svgp/trajectory.hpp"

#include <stdexcept>
#include <string>

namespace svgp {

void StateSpec::validate() const {
    if (dof < 1) throw std::invalid_argument("StateSpec: dof must be >= 1");
    if (num_support < 2) throw std::invalid_argument("StateSpec: num_support must be >= 2");
    if (!(dt > 0.0)) throw std::invalid_argument("StateSpec: dt must be > 0");
}

void PlannerConfig::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("PlannerConfig: lambda must be > 0");
    if (!(step_size > 0.0)) throw std::invalid_argument("PlannerConfig: step_size must be > 0");
    if (max_iters < 1) throw std::invalid_argument("PlannerConfig: max_iters must be >= 1");
    if (update_tol < 0.0) throw std::invalid_argument("PlannerConfig: update_tol must be >= 0");
    if (num_particles < 1) throw std::invalid_argument("PlannerConfig: num_particles must be >= 1");
    if (threads < 1) throw std::invalid_argument("PlannerConfig: threads must be >= 1");
    if (bandwidth.kind == BandwidthMode::Kind::fixed && !(bandwidth.value > 0.0)) {
        throw std::invalid_argument("PlannerConfig: fixed bandwidth must be > 0");
    }
}

namespace {
void check_index(const StateSpec& spec, const SupportTrajectory& traj, int n) {
    if (n < 0 || n >= spec.num_support) {
        throw std::out_of_range("state_at: index " + std::to_string(n) + " outside 0.." +
                                std::to_string(spec.num_support - 1));
    }
    if (traj.values.size() != spec.trajectory_dim()) {
        throw std::invalid_argument("state_at: trajectory length does not match spec");
    }
}
}  // namespace

Eigen::VectorBlock<const Eigen::VectorXd> state_at(const StateSpec& spec,
                                                   const SupportTrajectory& traj, int n) {
    check_index(spec, traj, n);
    return traj.values.segment(n * spec.state_dim(), spec.state_dim());
}

Eigen::VectorBlock<Eigen::VectorXd> state_at(const StateSpec& spec, SupportTrajectory& traj,
                                             int n) {
    check_index(spec, traj, n);
    return traj.values.segment(n * spec.state_dim(), spec.state_dim());
}

SupportTrajectory straight_line_init(const StateSpec& spec, const Eigen::VectorXd& start,
                                     const Eigen::VectorXd& goal_pos) {
    spec.validate();
    if (start.size() != spec.state_dim()) {
        throw std::invalid_argument("straight_line_init: start must have state_dim entries");
    }
    if (goal_pos.size() != spec.dof) {
        throw std::invalid_argument("straight_line_init: goal_pos must have dof entries");
    }

    const int d = spec.dof;
    const int n_steps = spec.num_support - 1;
    const Eigen::VectorXd start_pos = start.head(d);
    const Eigen::VectorXd secant = (goal_pos - start_pos) / (n_steps * spec.dt);

    SupportTrajectory traj;
    traj.values.resize(spec.trajectory_dim());
    for (int n = 0; n < spec.num_support; ++n) {
        const double alpha = static_cast<double>(n) / n_steps;
        auto state = traj.values.segment(n * spec.state_dim(), spec.state_dim());
        state.head(d) = (1.0 - alpha) * start_pos + alpha * goal_pos;
        state.tail(d) = secant;
    }
    return traj;
}

}  // namespace svgp
