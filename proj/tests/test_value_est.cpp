#include <doctest.h>

#include <cmath>
#include <random>

#include "svgp/value_est.hpp"

using namespace svgp;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    int i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("single particle carries all the weight") {
    const Eigen::VectorXd w = particle_weights(vec({3.7}), vec({-12.0}), 0.5);
    CHECK(w.size() == 1);
    CHECK(w[0] == 1.0);
}

TEST_CASE("equal scores give uniform weights") {
    const Eigen::VectorXd w = particle_weights(vec({2, 2, 2, 2}), vec({-1, -1, -1, -1}), 1.0);
    for (int i = 0; i < 4; ++i) CHECK(w[i] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("softmax of scores [0, log 3] is [1/4, 3/4]") {
    const Eigen::VectorXd w = particle_weights(vec({0, 0}), vec({0, std::log(3.0)}), 1.0);
    CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("weights survive extreme score spreads") {
    const Eigen::VectorXd w =
        particle_weights(vec({0.0, 2000.0}), vec({-1000.0, 0.0}), 1.0);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] >= 0.0);
    CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-particle value is the single-term algebra") {
    const double cost = 1.9, log_p = -4.2, lambda = 0.7;
    const double v = value_estimate(vec({cost}), vec({log_p}), lambda);
    CHECK(v == doctest::Approx(cost - lambda * log_p).epsilon(1e-14));
}

TEST_CASE("duplicating a particle lowers the value by lambda log 2") {
    const double lambda = 1.3;
    const double v1 = value_estimate(vec({0.8}), vec({-2.0}), lambda);
    const double v2 = value_estimate(vec({0.8, 0.8}), vec({-2.0, -2.0}), lambda);
    CHECK(v2 == doctest::Approx(v1 - lambda * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("value matches a naive long-double evaluation") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal;
    const double lambda = 0.9;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd costs(6), log_priors(6);
        for (int i = 0; i < 6; ++i) {
            costs[i] = std::abs(normal(rng)) * 3.0;
            log_priors[i] = normal(rng) * 2.0;
        }
        long double acc = 0.0L;
        for (int i = 0; i < 6; ++i) {
            acc += std::exp(static_cast<long double>(-costs[i] / lambda + log_priors[i]));
        }
        const double naive = static_cast<double>(-lambda * std::log(acc));
        const double v = value_estimate(costs, log_priors, lambda);
        CHECK(v == doctest::Approx(naive).epsilon(1e-10));
    }
}

TEST_CASE("cost statistics: constant costs and two-point support") {
    const auto constant = cost_statistics(vec({3, 3, 3}), vec({0.2, 0.3, 0.5}));
    CHECK(constant.expected_cost == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(constant.cost_variance == doctest::Approx(0.0));

    const auto two_point = cost_statistics(vec({0, 2}), vec({0.5, 0.5}));
    CHECK(two_point.expected_cost == doctest::Approx(1.0));
    CHECK(two_point.cost_variance == doctest::Approx(1.0));
}

TEST_CASE("cost statistics match a naive two-pass oracle") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> uni(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd costs(8), raw(8);
        for (int i = 0; i < 8; ++i) {
            costs[i] = uni(rng);
            raw[i] = uni(rng) + 0.01;
        }
        const Eigen::VectorXd weights = raw / raw.sum();
        const auto stats = cost_statistics(costs, weights);

        double mean = 0.0;
        for (int i = 0; i < 8; ++i) mean += weights[i] * costs[i];
        double var = 0.0;
        for (int i = 0; i < 8; ++i) var += weights[i] * (costs[i] - mean) * (costs[i] - mean);
        CHECK(stats.expected_cost == doctest::Approx(mean).epsilon(1e-12));
        CHECK(stats.cost_variance == doctest::Approx(var).epsilon(1e-12));
        CHECK(stats.cost_variance >= 0.0);
    }
}

TEST_CASE("weights are shift invariant; the value shifts by the constant") {
    std::mt19937_64 rng(47);
    std::normal_distribution<double> normal;
    Eigen::VectorXd costs(5), log_priors(5);
    for (int i = 0; i < 5; ++i) {
        costs[i] = std::abs(normal(rng));
        log_priors[i] = normal(rng);
    }
    const double lambda = 1.7, shift = 11.25;
    const Eigen::VectorXd shifted = costs.array() + shift;

    const Eigen::VectorXd w = particle_weights(costs, log_priors, lambda);
    const Eigen::VectorXd w_shifted = particle_weights(shifted, log_priors, lambda);
    CHECK((w - w_shifted).cwiseAbs().maxCoeff() < 1e-14);

    const double v = value_estimate(costs, log_priors, lambda);
    const double v_shifted = value_estimate(shifted, log_priors, lambda);
    CHECK(v_shifted == doctest::Approx(v + shift).epsilon(1e-12));
}

TEST_CASE("appending a particle never increases the value") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> normal;
    Eigen::VectorXd costs(9), log_priors(9);
    for (int i = 0; i < 9; ++i) {
        costs[i] = std::abs(normal(rng)) * 2.0;
        log_priors[i] = normal(rng);
    }
    for (int n = 1; n < 9; ++n) {
        const double v_small = value_estimate(costs.head(n), log_priors.head(n), 0.8);
        const double v_large = value_estimate(costs.head(n + 1), log_priors.head(n + 1), 0.8);
        CHECK(v_large <= v_small + 1e-12);
    }
}

TEST_CASE("grid log-sum-exp lower-bounds any subset estimate") {
    // Enumerable toy: scores on a fixed grid; the full-grid value is a
    // lower bound for the value of every particle subset of that grid.
    const int grid = 101;
    Eigen::VectorXd costs(grid), log_priors(grid);
    for (int i = 0; i < grid; ++i) {
        const double x = -2.0 + 4.0 * i / (grid - 1);
        costs[i] = x * x;
        log_priors[i] = -0.5 * x * x - 1.0;
    }
    const double lambda = 0.6;
    const double v_grid = value_estimate(costs, log_priors, lambda);

    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> pick(0, grid - 1);
    for (int trial = 0; trial < 10; ++trial) {
        const int size = 1 + trial;
        Eigen::VectorXd sub_costs(size), sub_priors(size);
        for (int i = 0; i < size; ++i) {
            const int idx = pick(rng);
            sub_costs[i] = costs[idx];
            sub_priors[i] = log_priors[idx];
        }
        CHECK(v_grid <= value_estimate(sub_costs, sub_priors, lambda) + 1e-12);
    }
}

TEST_CASE("degenerate and malformed inputs are rejected") {
    CHECK_THROWS_AS(particle_weights(Eigen::VectorXd(), Eigen::VectorXd(), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(particle_weights(vec({1, 2}), vec({0}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(particle_weights(vec({1}), vec({0}), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(
        particle_weights(vec({std::numeric_limits<double>::quiet_NaN()}), vec({0}), 1.0),
        std::invalid_argument);

    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(value_estimate(vec({inf, inf}), vec({0, 0}), 1.0), std::runtime_error);

    // A single -inf score is fine: that particle just gets zero weight.
    const Eigen::VectorXd w = particle_weights(vec({inf, 1.0}), vec({0, 0}), 1.0);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == 1.0);
}
