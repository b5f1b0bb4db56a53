#pragma once

#include "ckwork/kernel.hpp"
#include "ckwork/scenario.hpp"

#include <optional>
#include <vector>

namespace ckw {

CoefficientVector beta(const DimensionlessParams& d, const Zeta& z);
CoefficientVector beta_harmonic(const DimensionlessParams& d);

// Antiderivative vectors of -4 K_q: d/dtau[exp(-2tau) a.Gamma] = -4 exp(-2tau) c.Gamma.
CoefficientVector alpha_a(const DimensionlessParams& d, const Zeta& z);
CoefficientVector beta_a(const DimensionlessParams& d, const Zeta& z);

// Same vectors from the generic antiderivative rule applied to any reduced
// coefficient triple; valid in every regime including critical.
CoefficientVector antiderivative_reduced(double r1, double r2, double r3, const Zeta& z);

double kinetic_energy(const Scenario& s, double tau);

struct QuantumWork {
    double W_q = 0.0, W_c = 0.0, W_th = 0.0;
};
QuantumWork quantum_work(const Scenario& s, double tau);

enum class AlickiMethod { closed_form, quadrature };

struct AlickiResult {
    double W_ak = 0.0, Q_ak = 0.0;
};
AlickiResult alicki_work_heat(const Scenario& s, double tau,
                              AlickiMethod method = AlickiMethod::closed_form,
                              double abs_tol = 1e-10);

struct Asymptotes {
    double K_q, W_cl, W_q, W_c, W_th, W_ak, Q_ak;
};
// Empty for lambda = 0, where the motion is periodic.
std::optional<Asymptotes> asymptotes(const Scenario& s);

struct EnergySeries {
    std::vector<double> tau_grid;
    std::vector<double> K_q, W_q, W_c, W_th, W_ak, Q_ak, W_cl;
    std::optional<Asymptotes> asymptotes;
};

EnergySeries energy_series(const Scenario& s, const std::vector<double>& tau_grid,
                           AlickiMethod method = AlickiMethod::closed_form);

} // namespace ckw
