#pragma once

#include "ckwork/kernel.hpp"
#include "ckwork/scenario.hpp"

namespace ckw {

inline constexpr double kQuantumTauMax = 20.0;

struct PropagatorCoefficients {
    double c_plus = 0.0;
    double c_minus = 0.0;
    double c_zero = 0.0;
    double u = 1.0;
};

struct EvolvedGaussian {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double mean_x2 = 0.0;
    double mean_p2 = 0.0;
    double phase_theta = 0.0;
    double amplitude = 0.0;  // A(t) = (2 pi var_x)^(-1/4)
};

// Which k2 to use in the k1..k3 route to <P^2>. `as_printed` reproduces a
// prefactor that disagrees with the momentum-variance closed form; it exists
// only so the oracle check can prove it catches the difference.
enum class K2Variant { consistent, as_printed };

PropagatorCoefficients propagator_coefficients(const Scenario& s, double tau);

EvolvedGaussian evolved_gaussian(const Scenario& s, double tau);

// <X>, <X^2>, <P>, <P^2> rebuilt from c+, c-, c0 alone (u carries the sign of
// the dilation factor so the route stays valid after u changes sign).
struct CoefficientMoments {
    double mean_x, var_x, mean_p, var_p;
};
CoefficientMoments moments_from_coefficients(const Scenario& s, const PropagatorCoefficients& pc);

// <X^2> through the k4..k6 expansion and <P^2> through k1..k3.
double mean_x2_kform(const Scenario& s, double tau);
double mean_p2_kform(const Scenario& s, double tau, K2Variant v = K2Variant::consistent);

// |<P>| exactly as the square-root display gives it.
double mean_p_abs_display(const Scenario& s, double tau);

// |psi(x, t)|^2 for the evolved Gaussian.
double gaussian_density(const EvolvedGaussian& g, double x);

struct ScaledExpectations {
    double mean_x;    // <X>/scale
    double mean_x2;   // <X^2>/scale^2
    double var_x;     // <(dX)^2>/scale^2
    double mean_p;    // <P>/p0
    double mean_p2;   // <P^2>/p0^2
    double var_p;     // <(dP)^2>/p0^2
    double kinetic;   // (m0/2)<V^2>/K0 = exp(-4 tau) <P^2>/p0^2
};

// Dimensionless forms built from (epsilon, epsilon_delta, theta, omega/lambda, tau) only.
ScaledExpectations scaled_expectations(const Scenario& s, double tau);

} // namespace ckw
