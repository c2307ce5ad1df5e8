#ifndef SVGP_SVGD_HPP
#define SVGP_SVGD_HPP

#include <vector>

#include <Eigen/Core>

#include "svgp/block_tridiag.hpp"
#include "svgp/trajectory.hpp"

namespace svgp {

/// Metric M of the anisotropic kernel: the particle-averaged Gauss-Newton
/// Hessian, factorized once per iteration and shared by all particle
/// solves.
struct Metric {
    BlockTridiagonal m;
    BlockCholesky chol;
};

/// Entrywise mean of the per-particle Hessians (all must share one
/// envelope). Throws std::runtime_error with a minimum-eigenvalue
/// diagnostic if the mean cannot be factorized.
Metric build_metric(const std::vector<const BlockTridiagonal*>& hessians);
Metric build_metric(const std::vector<BlockTridiagonal>& hessians);

struct KernelValue {
    double k;
    Eigen::VectorXd grad_a;  // gradient with respect to the first argument
};

/// Anisotropic RBF kernel
///   k(a, b) = exp(-(a-b)^T M (a-b) / (2h)),
///   grad_a k = -(1/h) M (a-b) k.
KernelValue kernel(const Metric& metric, double bandwidth, const Eigen::VectorXd& a,
                   const Eigen::VectorXd& b);

/// Median heuristic under the Mahalanobis distance induced by M:
/// h = med^2 / log(N_p + 1), floored at 1e-6. A single particle yields the
/// sentinel h = 1.
double median_bandwidth(const Metric& metric, const ParticleSet& particles);

/// All-pairs kernel table: gram(j, i) = k(theta^j, theta^i) and the
/// corresponding grad_{theta^j} k(theta^j, theta^i) vectors.
struct KernelEval {
    Eigen::MatrixXd gram;
    std::vector<Eigen::VectorXd> grads;  // index j * num_particles + i
    int num_particles = 0;

    const Eigen::VectorXd& grad_term(int j, int i) const {
        return grads[static_cast<std::size_t>(j) * num_particles + i];
    }
};

/// Fills the kernel table; pair evaluations are independent and run on up
/// to `threads` workers writing disjoint slots.
KernelEval build_kernel_eval(const Metric& metric, double bandwidth, const ParticleSet& particles,
                             int threads = 1);

/// phi*(theta^i) = (1/N_p) sum_j [gram(j,i) g(theta^j) + grad_term(j,i)],
/// summed in particle order.
std::vector<Eigen::VectorXd> svgd_direction(const KernelEval& kernels,
                                            const std::vector<Eigen::VectorXd>& grads);

/// Solves M dtheta^i = phi*(theta^i) through the shared factorization,
/// applies theta^i += step_size * dtheta^i in place, and returns the
/// per-particle solve norms ||dtheta^i||.
std::vector<double> preconditioned_step(const Metric& metric,
                                        const std::vector<Eigen::VectorXd>& phi, double step_size,
                                        ParticleSet& particles, int threads = 1);

}  // namespace svgp

#endif  // SVGP_SVGD_HPP
