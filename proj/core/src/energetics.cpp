#include "ckwork/energetics.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/errors.hpp"
#include "ckwork/oracles.hpp"

#include <cmath>

namespace ckw {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("tau must be finite and >= 0");
}

CoefficientVector total(const DimensionlessParams& d, const Zeta& z) {
    return alpha_cl(d, z) + d.theta * beta(d, z);
}

CoefficientVector total_harmonic(const DimensionlessParams& d) {
    return alpha_cl_harmonic(d) + d.theta * beta_harmonic(d);
}

// Contraction of c against exp(-2 tau) Gamma(tau) minus its value at tau = 0.
double delta(const CoefficientVector& c, const Zeta& z, double tau) {
    return contract(c, scaled_gamma(z, tau, -1)) - contract(c, gamma(z, 0.0));
}

double delta_harmonic(const CoefficientVector& c, double wt) {
    return contract(c, harmonic_gamma(wt)) - contract(c, harmonic_gamma(0.0));
}

CoefficientVector displayed_antiderivative(double A1, const cplx& p1, const cplx& p2, const cplx& p3,
                                       const Zeta& z) {
    // -a1 [ (z p2 + p1 + p3)/(z^2-1) - p1 + p3, 2(z(p1+p3) + p2)/(z^2-1), (z p2 + p1 + p3)/(z^2-1) + p1 - p3 ]
    const cplx zz = z.value, den = zz * zz - 1.0;
    const cplx common = (zz * p2 + p1 + p3) / den;
    return {-A1 * (common - p1 + p3), -A1 * (2.0 * (zz * (p1 + p3) + p2) / den), -A1 * (common + p1 - p3)};
}

} // namespace

CoefficientVector beta(const DimensionlessParams& d, const Zeta& z) {
    const double ed = d.epsilon_delta, r = d.omega_over_lambda;
    const double a = 1.0 / (1.0 - d.epsilon);
    return from_reduced(a * (1.0 - ed), -2.0 * a * (1.0 - ed), a * (r * r * ed + 1.0 - ed), z);
}

CoefficientVector beta_harmonic(const DimensionlessParams& d) {
    const double a = 1.0 / (1.0 - d.epsilon);
    return {a * (1.0 - d.epsilon_delta), 0.0, a * d.epsilon_delta};
}

CoefficientVector antiderivative_reduced(double r1, double r2, double r3, const Zeta& z) {
    const double z2 = z.zeta2, w2 = 1.0 - z2;
    if (w2 <= 0.0) throw DomainError("antiderivative needs omega > 0");
    const double S = z2 * r1 + r2 + r3;
    return from_reduced(2.0 * r1 + S / w2, 2.0 * S / w2, 2.0 * r3 + z2 * S / w2, z);
}

CoefficientVector alpha_a(const DimensionlessParams& d, const Zeta& z) {
    const double e = d.epsilon, r = d.omega_over_lambda, se = std::sqrt(e - e * e);
    if (!(r > 0.0)) throw DomainError("Alicki closed form needs omega > 0");
    if (z.regime == Regime::critical) {
        const double a = 1.0 / (1.0 - e);
        return antiderivative_reduced(a * (1.0 - e), -2.0 * a * (r * se + 1.0 - e),
                                      a * (r * r * e + 2.0 * r * se + 1.0 - e), z);
    }
    const cplx zz = z.value;
    const double a1 = 1.0 / (1.0 - e);
    const cplx a5 = 1.0 - e;
    const cplx a6 = -(2.0 * r * se / zz + 2.0 * (1.0 - e) / zz);
    const cplx a7 = r * r * e / (zz * zz) + 2.0 * r * se / (zz * zz) + (1.0 - e) / (zz * zz);
    return displayed_antiderivative(a1, a5, a6, a7, z);
}

CoefficientVector beta_a(const DimensionlessParams& d, const Zeta& z) {
    const double ed = d.epsilon_delta, r = d.omega_over_lambda;
    if (!(r > 0.0)) throw DomainError("Alicki closed form needs omega > 0");
    if (z.regime == Regime::critical) {
        const double a = 1.0 / (1.0 - d.epsilon);
        return antiderivative_reduced(a * (1.0 - ed), -2.0 * a * (1.0 - ed), a * (r * r * ed + 1.0 - ed), z);
    }
    const cplx zz = z.value;
    const double a1 = 1.0 / (1.0 - d.epsilon);
    const cplx a2 = r * r * ed / (zz * zz) + (1.0 - ed) / (zz * zz);
    const cplx a3 = 1.0 - ed;
    const cplx a4 = -2.0 * (1.0 - ed) / zz;
    return displayed_antiderivative(a1, a3, a4, a2, z);
}

double kinetic_energy(const Scenario& s, double tau) {
    check_tau(tau);
    if (s.model == Model::harmonic) return contract(total_harmonic(s.dim), harmonic_gamma(tau));
    const Zeta z = scenario_zeta(s);
    return contract(total(s.dim, z), scaled_gamma(z, tau, -1));
}

QuantumWork quantum_work(const Scenario& s, double tau) {
    check_tau(tau);
    QuantumWork w;
    if (s.model == Model::harmonic) {
        w.W_c = delta_harmonic(alpha_cl_harmonic(s.dim), tau);
        w.W_th = delta_harmonic(s.dim.theta * beta_harmonic(s.dim), tau);
        w.W_q = delta_harmonic(total_harmonic(s.dim), tau);
        return w;
    }
    const Zeta z = scenario_zeta(s);
    w.W_c = delta(alpha_cl(s.dim, z), z, tau);
    w.W_th = delta(s.dim.theta * beta(s.dim, z), z, tau);
    w.W_q = delta(total(s.dim, z), z, tau);
    return w;
}

AlickiResult alicki_work_heat(const Scenario& s, double tau, AlickiMethod method, double abs_tol) {
    check_tau(tau);
    const double dK = kinetic_energy(s, tau) - kinetic_energy(s, 0.0);
    AlickiResult r;
    if (s.model == Model::harmonic) {
        r.W_ak = 0.0;
    } else if (s.model == Model::drag) {
        r.W_ak = dK;
    } else if (method == AlickiMethod::closed_form) {
        const Zeta z = scenario_zeta(s);
        r.W_ak = delta(alpha_a(s.dim, z) + s.dim.theta * beta_a(s.dim, z), z, tau);
    } else {
        const double rate = s.phys.lambda / s.rate();
        r.W_ak = -4.0 * rate *
                 adaptive_quadrature([&](double t) { return kinetic_energy(s, t); }, 0.0, tau, abs_tol);
    }
    r.Q_ak = dK - r.W_ak;
    return r;
}

std::optional<Asymptotes> asymptotes(const Scenario& s) {
    if (s.model == Model::harmonic) return std::nullopt;
    const Zeta z = scenario_zeta(s);
    const auto g0 = gamma(z, 0.0);
    Asymptotes a;
    const auto al = alpha_cl(s.dim, z);
    const auto th = s.dim.theta * beta(s.dim, z);
    const double K0q = contract(al + th, g0);
    a.K_q = 0.0;
    a.W_cl = -contract(al, g0);
    a.W_c = a.W_cl;
    a.W_th = -contract(th, g0);
    a.W_q = -K0q;
    a.W_ak = s.model == Model::drag ? -K0q
                                    : -contract(alpha_a(s.dim, z) + s.dim.theta * beta_a(s.dim, z), g0);
    a.Q_ak = -K0q - a.W_ak;
    return a;
}

EnergySeries energy_series(const Scenario& s, const std::vector<double>& tau_grid, AlickiMethod method) {
    EnergySeries out;
    out.tau_grid = tau_grid;
    const std::size_t n = tau_grid.size();
    for (auto* v : {&out.K_q, &out.W_q, &out.W_c, &out.W_th, &out.W_ak, &out.Q_ak, &out.W_cl}) v->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = tau_grid[i];
        out.K_q[i] = kinetic_energy(s, t);
        const auto w = quantum_work(s, t);
        out.W_q[i] = w.W_q;
        out.W_c[i] = w.W_c;
        out.W_th[i] = w.W_th;
        const auto a = alicki_work_heat(s, t, method);
        out.W_ak[i] = a.W_ak;
        out.Q_ak[i] = a.Q_ak;
        out.W_cl[i] = classical_work(s, t);
    }
    out.asymptotes = asymptotes(s);
    return out;
}

} // namespace ckw
