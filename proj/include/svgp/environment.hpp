#ifndef SVGP_ENVIRONMENT_HPP
#define SVGP_ENVIRONMENT_HPP

#include <variant>
#include <vector>

#include <Eigen/Core>

namespace svgp {

struct Circle {
    Eigen::Vector2d center;
    double radius;
};

/// Axis-aligned box given by min/max corners.
struct Box {
    Eigen::Vector2d lo;
    Eigen::Vector2d hi;
};

using Obstacle = std::variant<Circle, Box>;

/// Distance reported for a query against an empty obstacle set.
inline constexpr double kFreeSpaceDistance = 1e9;

struct World2D {
    std::vector<Obstacle> obstacles;
    Box bounds{{-10.0, -10.0}, {10.0, 10.0}};

    void validate() const;
};

struct SdfResult {
    double distance;           // negative inside an obstacle
    Eigen::Vector2d gradient;  // unit outward direction where defined
};

/// Signed distance to the nearest obstacle surface. The minimum is taken
/// over obstacles in order, ties keeping the lowest index. Empty worlds
/// report (kFreeSpaceDistance, 0).
SdfResult signed_distance(const World2D& world, const Eigen::Vector2d& point);

struct HingeResult {
    double cost;   // max(eps - d, 0)
    double slope;  // d cost / d d: -1 for d < eps, 0 otherwise (0 at d == eps)
};

HingeResult hinge_cost(double d, double eps);

/// A collision sphere attached to a robot link at a given arc-length offset
/// from the link's proximal joint.
struct CollisionSphere {
    int link = 0;
    double offset = 0.0;
    double radius = 0.0;
};

struct RobotModel {
    enum class Kind { point, planar_arm };
    Kind kind = Kind::point;
    std::vector<double> link_lengths;          // planar_arm only
    std::vector<CollisionSphere> spheres;

    int num_spheres() const { return static_cast<int>(spheres.size()); }
    void validate(int dof) const;
};

struct FkResult {
    std::vector<Eigen::Vector2d> centers;          // one per collision sphere
    std::vector<Eigen::Matrix2Xd> jacobians;       // 2 x dof each
};

/// Workspace positions of all collision spheres and their position
/// Jacobians. Point robots map q to (q0, q1) (or (q0, 0) for dof = 1) with
/// every sphere at that point; planar arms use standard revolute-chain FK
/// with the base at the origin.
FkResult forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

struct ObstacleParams {
    double eps = 0.1;        // safety margin, length units
    double sigma_obs = 0.1;  // obstacle-cost stddev entering Sigma

    void validate() const;
};

struct StateResidual {
    Eigen::VectorXd residuals;  // one per collision sphere, nonnegative
    Eigen::MatrixXd jacobian;   // num_spheres x state_dim; velocity columns zero
};

/// Obstacle residual of one support state [positions | velocities]:
/// residual_k = hinge(sdf(center_k) - sphere_radius_k, eps), with the
/// Jacobian chained through the SDF gradient and the FK Jacobian into the
/// position coordinates.
StateResidual state_obstacle_residual(const World2D& world, const RobotModel& model,
                                      const ObstacleParams& params,
                                      const Eigen::VectorXd& state);

}  // namespace svgp

#endif  // SVGP_ENVIRONMENT_HPP
