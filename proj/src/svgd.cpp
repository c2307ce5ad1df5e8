#include "svgp/svgd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "svgp/parallel.hpp"

namespace svgp {

Metric build_metric(const std::vector<const BlockTridiagonal*>& hessians) {
    if (hessians.empty()) throw std::invalid_argument("build_metric: empty Hessian list");

    Metric metric;
    metric.m = *hessians[0];
    for (std::size_t j = 1; j < hessians.size(); ++j) {
        metric.m.add_scaled(*hessians[j], 1.0);
    }
    metric.m.scale(1.0 / static_cast<double>(hessians.size()));

    if (!metric.chol.compute(metric.m)) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric.m.to_dense());
        throw std::runtime_error("build_metric: factorization failed, min eigenvalue " +
                                 std::to_string(eig.eigenvalues().minCoeff()));
    }
    return metric;
}

Metric build_metric(const std::vector<BlockTridiagonal>& hessians) {
    std::vector<const BlockTridiagonal*> ptrs;
    ptrs.reserve(hessians.size());
    for (const auto& h : hessians) ptrs.push_back(&h);
    return build_metric(ptrs);
}

KernelValue kernel(const Metric& metric, double bandwidth, const Eigen::VectorXd& a,
                   const Eigen::VectorXd& b) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("kernel: bandwidth must be > 0");
    const Eigen::VectorXd diff = a - b;
    Eigen::VectorXd m_diff = metric.m.multiply(diff);
    const double quad = diff.dot(m_diff);
    KernelValue out;
    out.k = std::exp(-quad / (2.0 * bandwidth));
    out.grad_a = (-out.k / bandwidth) * m_diff;
    return out;
}

double median_bandwidth(const Metric& metric, const ParticleSet& particles) {
    const int np = particles.size();
    if (np < 1) throw std::invalid_argument("median_bandwidth: empty particle set");
    if (np == 1) return 1.0;

    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(np) * (np - 1) / 2);
    for (int i = 0; i < np; ++i) {
        for (int j = i + 1; j < np; ++j) {
            const Eigen::VectorXd diff =
                particles.particles[i].values - particles.particles[j].values;
            dists.push_back(std::sqrt(std::max(0.0, diff.dot(metric.m.multiply(diff)))));
        }
    }
    std::sort(dists.begin(), dists.end());
    const std::size_t n = dists.size();
    const double med =
        n % 2 == 1 ? dists[n / 2] : 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
    return std::max(med * med / std::log(static_cast<double>(np) + 1.0), 1e-6);
}

KernelEval build_kernel_eval(const Metric& metric, double bandwidth, const ParticleSet& particles,
                             int threads) {
    const int np = particles.size();
    if (np < 1) throw std::invalid_argument("build_kernel_eval: empty particle set");

    KernelEval eval;
    eval.num_particles = np;
    eval.gram.resize(np, np);
    eval.grads.resize(static_cast<std::size_t>(np) * np);

    parallel_for(np * np, threads, [&](int flat) {
        const int j = flat / np;
        const int i = flat % np;
        KernelValue kv =
            kernel(metric, bandwidth, particles.particles[j].values, particles.particles[i].values);
        eval.gram(j, i) = kv.k;
        eval.grads[flat] = std::move(kv.grad_a);
    });
    return eval;
}

std::vector<Eigen::VectorXd> svgd_direction(const KernelEval& kernels,
                                            const std::vector<Eigen::VectorXd>& grads) {
    const int np = kernels.num_particles;
    if (static_cast<int>(grads.size()) != np) {
        throw std::invalid_argument("svgd_direction: gradient count mismatch");
    }

    std::vector<Eigen::VectorXd> phi(np);
    for (int i = 0; i < np; ++i) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(grads[0].size());
        for (int j = 0; j < np; ++j) {
            acc.noalias() += kernels.gram(j, i) * grads[j];
            acc += kernels.grad_term(j, i);
        }
        phi[i] = acc / static_cast<double>(np);
    }
    return phi;
}

std::vector<double> preconditioned_step(const Metric& metric,
                                        const std::vector<Eigen::VectorXd>& phi, double step_size,
                                        ParticleSet& particles, int threads) {
    const int np = particles.size();
    if (static_cast<int>(phi.size()) != np) {
        throw std::invalid_argument("preconditioned_step: direction count mismatch");
    }
    if (!metric.chol.ok()) throw std::runtime_error("preconditioned_step: metric not factorized");

    std::vector<double> norms(np, 0.0);
    parallel_for(np, threads, [&](int i) {
        const Eigen::VectorXd delta = metric.chol.solve(phi[i]);
        norms[i] = delta.norm();
        particles.particles[i].values += step_size * delta;
    });
    return norms;
}

}  // namespace svgp
