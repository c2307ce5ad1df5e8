#ifndef SVGP_TRAJECTORY_HPP
#define SVGP_TRAJECTORY_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace svgp {

/// Dimensions of the support-state parameterization: N+1 kinematic states
/// of [position | velocity] per DoF, spaced dt seconds apart.
struct StateSpec {
    int dof = 1;
    int num_support = 2;  // N + 1
    double dt = 0.1;      // seconds

    int state_dim() const { return 2 * dof; }
    int trajectory_dim() const { return num_support * state_dim(); }

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

/// One trajectory particle: flat vector of N+1 support states, state-major,
/// each state ordered [q0..q{dof-1}, v0..v{dof-1}].
struct SupportTrajectory {
    Eigen::VectorXd values;
};

struct ParticleSet {
    StateSpec spec;
    std::vector<SupportTrajectory> particles;
    int generation = 0;

    int size() const { return static_cast<int>(particles.size()); }
};

/// Bandwidth selection for the anisotropic kernel.
struct BandwidthMode {
    enum class Kind { median, fixed };
    Kind kind = Kind::median;
    double value = 1.0;  // used when kind == fixed

    static BandwidthMode median() { return {Kind::median, 1.0}; }
    static BandwidthMode fixed(double h) { return {Kind::fixed, h}; }
};

struct PlannerConfig {
    double lambda = 1.0;       // temperature of the optimality likelihood
    double step_size = 1.0;    // epsilon
    int max_iters = 100;
    double update_tol = 1e-6;  // convergence threshold on mean update norm
    BandwidthMode bandwidth;
    std::uint64_t seed = 0;
    int num_particles = 8;
    int threads = 1;

    void validate() const;
};

/// Read-only view of support state n (length state_dim). Throws
/// std::out_of_range for n outside 0..N.
Eigen::VectorBlock<const Eigen::VectorXd> state_at(const StateSpec& spec,
                                                   const SupportTrajectory& traj, int n);
Eigen::VectorBlock<Eigen::VectorXd> state_at(const StateSpec& spec, SupportTrajectory& traj,
                                             int n);

/// Deterministic initialization: positions interpolate linearly from the
/// start positions to goal_pos; every velocity is the constant secant
/// (goal_pos - start_pos) / (N * dt). start has state_dim entries, goal_pos
/// has dof entries.
SupportTrajectory straight_line_init(const StateSpec& spec, const Eigen::VectorXd& start,
                                     const Eigen::VectorXd& goal_pos);

}  // namespace svgp

#endif  // SVGP_TRAJECTORY_HPP
