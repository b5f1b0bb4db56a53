#pragma once

#include <string>

namespace ckw {

// Damped: lambda > 0, omega > 0. Harmonic: lambda = 0. Drag: k0 = 0.
enum class Model { damped, harmonic, drag };

struct PhysicalParams {
    double m0 = 1.0;
    double lambda = 1.0;
    double omega = 1.0;
    double k0 = 1.0;
    double hbar = 0.0;
};

struct DimensionlessParams {
    double omega_over_lambda = 1.0;
    double epsilon = 0.0;
    double epsilon_delta = 0.5;
    double theta = 0.0;
    double E0 = 1.0;
};

struct InitialState {
    double x0 = 0.0;
    double p0 = 0.0;
    double delta_x0 = 0.0;
    double delta_p0 = 0.0;
};

struct UnitChoice {
    double m0 = 1.0;
    double lambda = 1.0;
    double omega_harmonic = 1.0;  // fixes the time unit when lambda = 0
};

struct Scenario {
    Model model = Model::damped;
    DimensionlessParams dim;
    PhysicalParams phys;
    InitialState init;
    bool quantum = false;  // a Gaussian wavefunction has been materialized

    double K0() const { return init.p0 * init.p0 / (2.0 * phys.m0); }
    // Rate that converts physical time into the engines' dimensionless time.
    double rate() const { return model == Model::harmonic ? phys.omega : phys.lambda; }
};

Scenario materialize(const DimensionlessParams& dim, Model model = Model::damped,
                     const UnitChoice& units = {}, bool want_quantum = false);

void require_quantum(const Scenario& s);

double theta_prime(const DimensionlessParams& dim);

// Inverse of materialize on the physical quantities.
DimensionlessParams rederive(const Scenario& s);

// Dimensionless engine time for a given abscissa value omega*t
// (lambda*t for the drag model, which has no omega).
double tau_from_omega_t(const Scenario& s, double omega_t);
double omega_t_from_tau(const Scenario& s, double tau);

DimensionlessParams preset_uo();
DimensionlessParams preset_oo();

std::string to_string(Model m);

} // namespace ckw
