#include "ckwork/quantum.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/errors.hpp"

#include <cmath>
#include <numbers>

namespace ckw {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("tau must be finite and >= 0");
    if (tau > kQuantumTauMax) throw DomainError("tau beyond the quantum evaluation cap");
}

void check_damped(const Scenario& s) {
    require_quantum(s);
    if (s.model != Model::damped) throw DomainError("closed form needs lambda > 0 and omega > 0");
}

} // namespace

PropagatorCoefficients propagator_coefficients(const Scenario& s, double tau) {
    require_quantum(s);
    check_tau(tau);
    const auto& ph = s.phys;
    PropagatorCoefficients pc;
    double u, ratio;  // ratio = 1/(zeta coth + 1) scaled by 1/lambda
    if (s.model == Model::harmonic) {
        u = std::cos(tau);
        ratio = std::tan(tau) / ph.omega;
        pc.c_plus = -ph.k0 * ratio;
    } else {
        const auto [c, sh] = plain_cs(scenario_zeta(s), tau);
        const double d = c + sh;
        u = std::exp(-tau) * d;
        ratio = sh / d / ph.lambda;
        pc.c_plus = -ph.k0 * std::exp(2.0 * tau) * ratio;
    }
    if (std::abs(u) < 1e-300 || !std::isfinite(ratio))
        throw DomainError("propagator factorization is singular where u = 0");
    pc.u = u;
    pc.c_minus = -ratio / ph.m0;
    pc.c_zero = -std::log(u * u);
    return pc;
}

CoefficientMoments moments_from_coefficients(const Scenario& s, const PropagatorCoefficients& pc) {
    const double x0 = s.init.x0, p0 = s.init.p0;
    const double d2 = s.init.delta_x0 * s.init.delta_x0, hb = s.phys.hbar;
    const double u = pc.u, ec0 = std::exp(pc.c_zero), emc0 = std::exp(-pc.c_zero);
    const double cp = pc.c_plus, cm = pc.c_minus;
    CoefficientMoments m;
    m.mean_x = u * (x0 - cm * p0);
    m.var_x = emc0 * d2 * (1.0 + hb * hb * cm * cm / (4.0 * d2 * d2));
    const double g = ec0 - cp * cm;
    m.mean_p = u * (g * p0 + cp * x0);
    m.var_p = emc0 * hb * hb / (4.0 * d2) * g * g + emc0 * d2 * cp * cp;
    return m;
}

EvolvedGaussian evolved_gaussian(const Scenario& s, double tau) {
    require_quantum(s);
    check_tau(tau);
    const auto& ph = s.phys;
    const auto& in = s.init;
    const double x0 = in.x0, p0 = in.p0, m = ph.m0;
    const double d2 = in.delta_x0 * in.delta_x0;
    const double sig2 = ph.hbar * ph.hbar / (4.0 * d2);
    EvolvedGaussian g;
    double chirp_arg_num, chirp_arg_den;
    if (s.model == Model::harmonic) {
        const double c = std::cos(tau), sn = std::sin(tau), w = ph.omega;
        g.mean_x = x0 * c + p0 / (m * w) * sn;
        g.var_x = d2 * c * c + sig2 / (m * m * w * w) * sn * sn;
        g.mean_p = p0 * c - m * w * x0 * sn;
        g.var_p = sig2 * c * c + m * m * w * w * d2 * sn * sn;
        chirp_arg_num = ph.hbar * sn / (m * w);
        chirp_arg_den = c;
    } else {
        const double l = ph.lambda;
        const Zeta z = scenario_zeta(s);
        const auto [c, sh] = plain_cs(z, tau);
        const double cms = plain_c_minus_s(z, tau);
        const double em = std::exp(-tau), ep = std::exp(tau);
        const double kl = ph.k0 / l;
        g.mean_x = em * ((c + sh) * x0 + p0 * sh / (l * m));
        g.var_x = em * em * (d2 * (c + sh) * (c + sh) + in.delta_p0 * in.delta_p0 / (m * m * l * l) * sh * sh);
        g.mean_p = ep * (p0 * cms - kl * x0 * sh);
        g.var_p = ep * ep * (d2 * kl * kl * sh * sh + sig2 * cms * cms);
        chirp_arg_num = ph.hbar * sh / (l * m);
        chirp_arg_den = c + sh;
    }
    g.mean_x2 = g.var_x + g.mean_x * g.mean_x;
    g.mean_p2 = g.var_p + g.mean_p * g.mean_p;
    // theta = (1/2) arctan(-hbar c-/(2 Delta^2)), continued through u = 0
    g.phase_theta = 0.5 * std::atan2(chirp_arg_num / (2.0 * d2), chirp_arg_den);
    g.amplitude = std::pow(2.0 * std::numbers::pi * g.var_x, -0.25);
    return g;
}

double mean_x2_kform(const Scenario& s, double tau) {
    check_damped(s);
    check_tau(tau);
    const auto& ph = s.phys;
    const double x0 = s.init.x0, p0 = s.init.p0, m = ph.m0, l = ph.lambda;
    const double d2 = s.init.delta_x0 * s.init.delta_x0, hb = ph.hbar;
    const Zeta z = scenario_zeta(s);
    const double k4 = x0 * x0 + d2;
    const double k5z = (2.0 * l * l * m * m * x0 * x0 + 2.0 * l * m * x0 * p0) / (l * l * m * m) + 2.0 * d2;
    const double k6z2 = (p0 * p0 + 2.0 * l * m * x0 * p0 + l * l * m * m * x0 * x0) / (l * l * m * m) + d2 +
                        hb * hb / (4.0 * m * m * l * l * d2);
    return contract(from_reduced(k4, k5z, k6z2, z), scaled_gamma(z, tau, -1));
}

double mean_p2_kform(const Scenario& s, double tau, K2Variant v) {
    check_damped(s);
    check_tau(tau);
    const auto& ph = s.phys;
    const double x0 = s.init.x0, p0 = s.init.p0, l = ph.lambda, k0 = ph.k0;
    const double d2 = s.init.delta_x0 * s.init.delta_x0, hb = ph.hbar;
    const Zeta z = scenario_zeta(s);
    const double k1 = p0 * p0 + hb * hb / (4.0 * d2);
    const double hterm = v == K2Variant::consistent ? hb * hb / (2.0 * d2) : 2.0 * hb * hb / d2;
    const double k2z = 2.0 * k0 * x0 * p0 / l + 2.0 * p0 * p0 + hterm;
    const double k3z2 = k0 * k0 * x0 * x0 / (l * l) + 2.0 * p0 * k0 * x0 / l + p0 * p0 +
                        d2 * k0 * k0 / (l * l) + hb * hb / (4.0 * d2);
    return contract(from_reduced(k1, -k2z, k3z2, z), scaled_gamma(z, tau, +1));
}

double mean_p_abs_display(const Scenario& s, double tau) {
    check_damped(s);
    check_tau(tau);
    const double x0 = s.init.x0, p0 = s.init.p0, kl = s.phys.k0 / s.phys.lambda;
    const Zeta z = scenario_zeta(s);
    const auto c = from_reduced(p0 * p0, -(2.0 * kl * x0 * p0 + 2.0 * p0 * p0),
                                kl * kl * x0 * x0 + 2.0 * p0 * kl * x0 + p0 * p0, z);
    const double inner = contract(c, gamma(z, tau));
    return std::exp(tau) * std::sqrt(std::max(0.0, inner));
}

double gaussian_density(const EvolvedGaussian& g, double x) {
    const double dx = x - g.mean_x;
    return g.amplitude * g.amplitude * std::exp(-dx * dx / (2.0 * g.var_x));
}

ScaledExpectations scaled_expectations(const Scenario& s, double tau) {
    check_damped(s);
    check_tau(tau);
    const auto& d = s.dim;
    const double e = d.epsilon, ed = d.epsilon_delta, th = d.theta, r = d.omega_over_lambda;
    const Zeta z = scenario_zeta(s);
    const auto [c, sh] = plain_cs(z, tau);
    const double em2 = std::exp(-2.0 * tau);
    const double q = r * std::sqrt(e / (1.0 - e));

    ScaledExpectations o;
    const double cms = plain_c_minus_s(z, tau);
    const double pbar = std::exp(tau) * (cms - sh * q);
    o.mean_p = pbar;
    o.var_p = th / (1.0 - e) * std::exp(2.0 * tau) * ((1.0 - ed) * cms * cms + ed * r * r * sh * sh);
    o.mean_p2 = pbar * pbar + o.var_p;
    o.kinetic = em2 * em2 * o.mean_p2;

    if (e > 0.0) {
        const double w = r * std::sqrt((1.0 - e) / e);  // p0/(lambda m0 x0)
        o.mean_x = std::exp(-tau) * ((c + sh) + w * sh);
        o.var_x = th / e * em2 * (ed * (c + sh) * (c + sh) + (1.0 - ed) * r * r * sh * sh);
    } else {
        o.mean_x = std::exp(-tau) * sh;
        o.var_x = th / (1.0 - e) * em2 * (ed / (r * r) * (c + sh) * (c + sh) + (1.0 - ed) * sh * sh);
    }
    o.mean_x2 = o.mean_x * o.mean_x + o.var_x;
    return o;
}

} // namespace ckw
