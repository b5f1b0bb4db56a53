#pragma once

#include "ckwork/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ckw::test {

inline double rel(double a, double b) {
    const double d = std::max(std::abs(a), std::abs(b));
    return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

// Random parameters over the ranges the sweeps use.
struct ParamGen {
    std::mt19937_64 rng;
    explicit ParamGen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

    DimensionlessParams damped(double theta_max = 1.0) {
        DimensionlessParams d;
        do {
            d.omega_over_lambda = log_uniform(0.05, 20.0);
        } while (std::abs(d.omega_over_lambda - 1.0) < 1e-3);
        d.epsilon = uniform(0.0, 0.9);
        d.epsilon_delta = uniform(0.1, 0.9);
        d.theta = uniform(0.0, theta_max);
        d.E0 = 1.0;
        return d;
    }
};

inline Scenario uo(double theta = 0.1) {
    auto d = preset_uo();
    d.theta = theta;
    return materialize(d, Model::damped, {}, theta > 0.0);
}

inline Scenario oo(double theta = 0.1) {
    auto d = preset_oo();
    d.theta = theta;
    return materialize(d, Model::damped, {}, theta > 0.0);
}

inline Scenario drag(double theta = 0.1) {
    DimensionlessParams d = preset_uo();
    d.theta = theta;
    return materialize(d, Model::drag);
}

inline Scenario harmonic(double epsilon = 0.0, double theta = 0.1) {
    DimensionlessParams d = preset_uo();
    d.epsilon = epsilon;
    d.theta = theta;
    return materialize(d, Model::harmonic, {}, theta > 0.0);
}

} // namespace ckw::test
