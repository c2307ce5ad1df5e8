#ifndef SVGP_PLANNER_HPP
#define SVGP_PLANNER_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "svgp/environment.hpp"
#include "svgp/factor_graph.hpp"
#include "svgp/gp_prior.hpp"
#include "svgp/trajectory.hpp"
#include "svgp/value_est.hpp"

namespace svgp {

enum class InitMode { prior_sample, straight_line };

/// Everything needed to run one planning problem.
struct PlanRequest {
    StateSpec spec;
    PriorSpec prior;
    World2D world;
    RobotModel model;
    ObstacleParams obstacle;
    PlannerConfig config;
    Eigen::VectorXd start;  // state_dim entries
    InitMode init_mode = InitMode::prior_sample;
    double init_jitter = 0.0;  // straight-line mode: stddev of added noise

    void validate() const;
};

enum class Termination { converged, max_iters };

const char* to_string(Termination t);

struct PlanResult {
    ParticleSet particles;
    std::vector<IterationReport> reports;  // iteration 0 plus one per update
    Termination termination = Termination::max_iters;
    double wall_seconds = 0.0;
};

/// Runs the particle flow:
///   per-particle {h, J, g, H}  ->  M = mean H  ->  bandwidth  ->
///   all-pairs kernel  ->  phi*  ->  solve M dtheta = phi*  ->
///   theta += eps dtheta  ->  report,
/// until the mean update norm drops below update_tol or the iteration
/// budget runs out. Deterministic for a given seed: every reduction is
/// summed in particle order regardless of the thread count. Module errors
/// are rethrown with the iteration index attached.
PlanResult plan(const PlanRequest& req);

}  // namespace svgp

#endif  // SVGP_PLANNER_HPP
