#pragma once

#include "ckwork/kernel.hpp"
#include "ckwork/scenario.hpp"

#include <vector>

namespace ckw {

struct LiouvilleGaussian {
    double x_center = 0.0;  // x0*
    double p_center = 0.0;  // p0*
    double sigma_x0 = 1.0;
    double sigma_p0 = 1.0;
    bool mixed = false;  // symmetric two-center mixture at +-(x0*, p0*)
};

// Ensemble with the quantum state's centers and widths (sigma = Delta).
LiouvilleGaussian matching_ensemble(const Scenario& s, bool mixed = false);

struct LiouvilleMoments {
    double mean_v = 0.0;
    double mean_v_sq = 0.0;  // <v>^2
    double mean_v2 = 0.0;    // <v^2>
    double var_v = 0.0;      // sigma_v^2
};

// Physical moments from the alpha*, beta* vectors.
LiouvilleMoments liouville_moments(const LiouvilleGaussian& e, const Scenario& s, double tau);

CoefficientVector alpha_star(const LiouvilleGaussian& e, const Scenario& s, const Zeta& z);
CoefficientVector beta_star(const LiouvilleGaussian& e, const Scenario& s, const Zeta& z);

// (m0/2)<v^2>/K0, (m0/2)<v>^2/K0, (m0/2)sigma_v^2/K0 through alpha_gcl, beta_gcl
// with epsilon*, epsilon_delta*, theta* read off the ensemble.
struct VelocityMoments {
    double v2 = 0.0, v_sq = 0.0, var = 0.0;
};
VelocityMoments liouville_scaled(const LiouvilleGaussian& e, const Scenario& s, double tau);

// Quantum counterparts built from the evolved Gaussian.
VelocityMoments quantum_velocity_moments(const Scenario& s, double tau);

struct CorrespondenceReport {
    double max_dev_v2 = 0.0, max_dev_v_sq = 0.0, max_dev_var = 0.0;
    double tolerance = 1e-10;
    bool ok() const { return max_dev_v2 <= tolerance && max_dev_v_sq <= tolerance && max_dev_var <= tolerance; }
};

// Throws CorrespondenceViolation when any identity misses the tolerance.
CorrespondenceReport correspondence_check(const Scenario& s, const std::vector<double>& taus,
                                          double tolerance = 1e-10);

// ---- rho^mu family ---------------------------------------------------------

struct MuState {
    double mu = 0.0;
    double norm = 4.0;   // N_mu
    double kappa = 0.0;  // exponent of the overlap <psi0|psi0^->
    InitialState base;
};

MuState make_mu_state(const Scenario& s, double mu);

struct MuMoments {
    double mean_x = 0.0, mean_x2 = 0.0, mean_p = 0.0, mean_p2 = 0.0;
};

// Trace route: <X^2> from the coefficient display, <P^2> from the correction formula.
MuMoments mu_state_moments(const MuState& st, const Scenario& s, double tau);

// (m0/2)<V^2>^mu/K0 from the dimensionless correction with theta'.
double mu_kinetic_scaled(const MuState& st, const Scenario& s, double tau);

// Same quantity from the physical trace route.
double mu_kinetic_from_traces(const MuState& st, const Scenario& s, double tau);

struct MuWork {
    double W_q = 0.0, W_c = 0.0, W_th = 0.0;
};
MuWork mu_work(const MuState& st, const Scenario& s, double tau);

} // namespace ckw
