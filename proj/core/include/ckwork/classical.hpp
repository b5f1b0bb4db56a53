#pragma once

#include "ckwork/kernel.hpp"
#include "ckwork/scenario.hpp"

namespace ckw {

enum class PositionScale { x0, xm };

struct ClassicalTrajectoryPoint {
    double tau = 0.0;
    double x_over_scale = 0.0;
    double v = 0.0;
    double p = 0.0;
    double K_over_K0 = 0.0;
};

// x0 when epsilon > 0, otherwise x_m = p0/(m0*lambda) (p0/(m0*omega) when lambda = 0).
PositionScale position_scale(const Scenario& s);
double position_scale_value(const Scenario& s);

Zeta scenario_zeta(const Scenario& s);

CoefficientVector alpha_cl(const DimensionlessParams& d, const Zeta& z);
CoefficientVector alpha_cl_harmonic(const DimensionlessParams& d);

double classical_position(const Scenario& s, double tau);
ClassicalTrajectoryPoint classical_point(const Scenario& s, double tau);
double classical_kinetic(const Scenario& s, double tau);
double classical_work(const Scenario& s, double tau);

// Potential energy over K0; used for the lambda = 0 conservation check.
double classical_potential(const Scenario& s, double tau);

} // namespace ckw
