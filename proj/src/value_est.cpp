#include "svgp/value_est.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace svgp {

namespace {

// Stabilized scores s_i = -C~_i/lambda + log p_i and their max.
std::pair<Eigen::VectorXd, double> scores(const Eigen::VectorXd& costs,
                                          const Eigen::VectorXd& log_priors, double lambda) {
    if (costs.size() == 0) throw std::invalid_argument("particle scores: empty input");
    if (costs.size() != log_priors.size()) {
        throw std::invalid_argument("particle scores: size mismatch");
    }
    if (!(lambda > 0.0)) throw std::invalid_argument("particle scores: lambda must be > 0");

    Eigen::VectorXd s(costs.size());
    for (int i = 0; i < costs.size(); ++i) {
        if (std::isnan(costs[i]) || std::isnan(log_priors[i])) {
            throw std::invalid_argument("particle scores: NaN input");
        }
        s[i] = -costs[i] / lambda + log_priors[i];
    }
    const double s_max = s.maxCoeff();
    if (s_max == -std::numeric_limits<double>::infinity()) {
        throw std::runtime_error("particle scores: all scores are -inf (degenerate particle set)");
    }
    return {std::move(s), s_max};
}

}  // namespace

Eigen::VectorXd particle_weights(const Eigen::VectorXd& costs, const Eigen::VectorXd& log_priors,
                                 double lambda) {
    auto [s, s_max] = scores(costs, log_priors, lambda);
    Eigen::VectorXd w(s.size());
    double sum = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        w[i] = std::exp(s[i] - s_max);
        sum += w[i];
    }
    return w / sum;
}

double value_estimate(const Eigen::VectorXd& costs, const Eigen::VectorXd& log_priors,
                      double lambda) {
    auto [s, s_max] = scores(costs, log_priors, lambda);
    double sum = 0.0;
    for (int i = 0; i < s.size(); ++i) sum += std::exp(s[i] - s_max);
    return -lambda * (s_max + std::log(sum));
}

CostStats cost_statistics(const Eigen::VectorXd& costs, const Eigen::VectorXd& weights) {
    if (costs.size() != weights.size() || costs.size() == 0) {
        throw std::invalid_argument("cost_statistics: invalid sizes");
    }
    const double mean = weights.dot(costs);
    const double var = weights.dot((costs.array() - mean).square().matrix());
    return {mean, var};
}

}  // namespace svgp
