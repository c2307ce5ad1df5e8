#ifndef SVGP_VALUE_EST_HPP
#define SVGP_VALUE_EST_HPP

#include <Eigen/Core>

namespace svgp {

/// Per-iteration statistics of the particle approximation.
struct IterationReport {
    int iter = 0;
    double v_hat = 0.0;
    double expected_cost = 0.0;
    double cost_variance = 0.0;
    Eigen::VectorXd weights;
    double mean_update_norm = 0.0;
};

/// Normalized particle weights
///   w_i = exp(-C~_i / lambda) p_i / sum_j exp(-C~_j / lambda) p_j,
/// computed as a max-subtracted softmax over s_i = -C~_i/lambda + log p_i.
/// Throws if the inputs are empty/non-finite-above -inf, or if every score
/// is -inf (degenerate particle set).
Eigen::VectorXd particle_weights(const Eigen::VectorXd& costs, const Eigen::VectorXd& log_priors,
                                 double lambda);

/// Soft-value estimate V = -lambda * logsumexp_i(-C~_i/lambda + log p_i).
double value_estimate(const Eigen::VectorXd& costs, const Eigen::VectorXd& log_priors,
                      double lambda);

struct CostStats {
    double expected_cost;
    double cost_variance;
};

/// Weighted mean and weighted variance of the particle costs.
CostStats cost_statistics(const Eigen::VectorXd& costs, const Eigen::VectorXd& weights);

}  // namespace svgp

#endif  // SVGP_VALUE_EST_HPP
