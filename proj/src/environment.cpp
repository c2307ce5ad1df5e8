#include "svgp/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svgp {

namespace {

SdfResult sdf_circle(const Circle& c, const Eigen::Vector2d& p) {
    const Eigen::Vector2d delta = p - c.center;
    const double rho = delta.norm();
    SdfResult r;
    r.distance = rho - c.radius;
    // Direction undefined at the exact center; report a zero gradient there.
    r.gradient = rho > 1e-12 ? Eigen::Vector2d(delta / rho) : Eigen::Vector2d::Zero();
    return r;
}

SdfResult sdf_box(const Box& b, const Eigen::Vector2d& p) {
    const Eigen::Vector2d closest = p.cwiseMax(b.lo).cwiseMin(b.hi);
    SdfResult r;
    if ((p - closest).squaredNorm() > 0.0) {
        const Eigen::Vector2d delta = p - closest;
        r.distance = delta.norm();
        r.gradient = delta / r.distance;
        return r;
    }
    // Inside: distance to the nearest face, outward normal of that face.
    const double faces[4] = {p.x() - b.lo.x(), b.hi.x() - p.x(), p.y() - b.lo.y(),
                             b.hi.y() - p.y()};
    const Eigen::Vector2d normals[4] = {{-1.0, 0.0}, {1.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}};
    int best = 0;
    for (int i = 1; i < 4; ++i) {
        if (faces[i] < faces[best]) best = i;
    }
    r.distance = -faces[best];
    r.gradient = normals[best];
    return r;
}

}  // namespace

void World2D::validate() const {
    for (const auto& obs : obstacles) {
        if (const auto* c = std::get_if<Circle>(&obs)) {
            if (!(c->radius > 0.0)) throw std::invalid_argument("World2D: circle radius must be > 0");
        } else {
            const auto& b = std::get<Box>(obs);
            if (!(b.lo.x() < b.hi.x() && b.lo.y() < b.hi.y())) {
                throw std::invalid_argument("World2D: box min corner must be < max corner per axis");
            }
        }
    }
    if (!(bounds.lo.x() < bounds.hi.x() && bounds.lo.y() < bounds.hi.y())) {
        throw std::invalid_argument("World2D: bounds min corner must be < max corner per axis");
    }
}

SdfResult signed_distance(const World2D& world, const Eigen::Vector2d& point) {
    if (!point.allFinite()) throw std::invalid_argument("signed_distance: non-finite point");
    SdfResult best{kFreeSpaceDistance, Eigen::Vector2d::Zero()};
    for (const auto& obs : world.obstacles) {
        const SdfResult r = std::holds_alternative<Circle>(obs)
                                ? sdf_circle(std::get<Circle>(obs), point)
                                : sdf_box(std::get<Box>(obs), point);
        if (r.distance < best.distance) best = r;  // strict: ties keep the lowest index
    }
    return best;
}

HingeResult hinge_cost(double d, double eps) {
    if (!std::isfinite(d)) throw std::invalid_argument("hinge_cost: non-finite distance");
    if (d < eps) return {eps - d, -1.0};
    return {0.0, 0.0};
}

void RobotModel::validate(int dof) const {
    if (kind == Kind::planar_arm) {
        if (static_cast<int>(link_lengths.size()) != dof) {
            throw std::invalid_argument("RobotModel: planar arm needs one link length per DoF");
        }
        for (double len : link_lengths) {
            if (!(len > 0.0)) throw std::invalid_argument("RobotModel: link lengths must be > 0");
        }
    } else {
        if (dof < 1 || dof > 2) {
            throw std::invalid_argument("RobotModel: point robot supports dof 1 or 2");
        }
    }
    if (spheres.empty()) throw std::invalid_argument("RobotModel: at least one collision sphere");
    const int links = static_cast<int>(link_lengths.size());
    for (const auto& s : spheres) {
        if (s.radius < 0.0) throw std::invalid_argument("RobotModel: sphere radius must be >= 0");
        if (kind == Kind::planar_arm && (s.link < 0 || s.link >= links)) {
            throw std::invalid_argument("RobotModel: sphere link index out of range");
        }
    }
}

FkResult forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
    const int dof = static_cast<int>(q.size());
    model.validate(dof);

    FkResult fk;
    fk.centers.reserve(model.spheres.size());
    fk.jacobians.reserve(model.spheres.size());

    if (model.kind == RobotModel::Kind::point) {
        Eigen::Vector2d pos(q[0], dof > 1 ? q[1] : 0.0);
        Eigen::Matrix2Xd jac = Eigen::Matrix2Xd::Zero(2, dof);
        jac(0, 0) = 1.0;
        if (dof > 1) jac(1, 1) = 1.0;
        for (std::size_t k = 0; k < model.spheres.size(); ++k) {
            fk.centers.push_back(pos);
            fk.jacobians.push_back(jac);
        }
        return fk;
    }

    // Revolute chain: joint j sits at the distal end of link j-1; absolute
    // link angle is the running sum of joint angles.
    const int links = dof;
    std::vector<Eigen::Vector2d> joint_pos(links + 1);
    std::vector<double> abs_angle(links);
    joint_pos[0].setZero();
    double angle = 0.0;
    for (int j = 0; j < links; ++j) {
        angle += q[j];
        abs_angle[j] = angle;
        joint_pos[j + 1] =
            joint_pos[j] + model.link_lengths[j] * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    }

    for (const auto& s : model.spheres) {
        const Eigen::Vector2d dir(std::cos(abs_angle[s.link]), std::sin(abs_angle[s.link]));
        const Eigen::Vector2d center = joint_pos[s.link] + s.offset * dir;
        Eigen::Matrix2Xd jac = Eigen::Matrix2Xd::Zero(2, dof);
        for (int j = 0; j <= s.link; ++j) {
            const Eigen::Vector2d arm = center - joint_pos[j];
            jac(0, j) = -arm.y();
            jac(1, j) = arm.x();
        }
        fk.centers.push_back(center);
        fk.jacobians.push_back(jac);
    }
    return fk;
}

void ObstacleParams::validate() const {
    if (eps < 0.0) throw std::invalid_argument("ObstacleParams: eps must be >= 0");
    if (!(sigma_obs > 0.0)) throw std::invalid_argument("ObstacleParams: sigma_obs must be > 0");
}

StateResidual state_obstacle_residual(const World2D& world, const RobotModel& model,
                                      const ObstacleParams& params,
                                      const Eigen::VectorXd& state) {
    if (state.size() % 2 != 0 || state.size() == 0) {
        throw std::invalid_argument("state_obstacle_residual: state must be [positions|velocities]");
    }
    const int dof = static_cast<int>(state.size()) / 2;
    const FkResult fk = forward_kinematics(model, state.head(dof));

    const int ns = model.num_spheres();
    StateResidual out;
    out.residuals.setZero(ns);
    out.jacobian.setZero(ns, state.size());
    for (int k = 0; k < ns; ++k) {
        const SdfResult sdf = signed_distance(world, fk.centers[k]);
        const HingeResult hinge = hinge_cost(sdf.distance - model.spheres[k].radius, params.eps);
        out.residuals[k] = hinge.cost;
        if (hinge.slope != 0.0) {
            out.jacobian.row(k).head(dof) =
                hinge.slope * (sdf.gradient.transpose() * fk.jacobians[k]);
        }
    }
    return out;
}

}  // namespace svgp
