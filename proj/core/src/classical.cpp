#include "ckwork/classical.hpp"

#include "ckwork/errors.hpp"

#include <cmath>

namespace ckw {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("tau must be finite and >= 0");
}

struct RawState {
    double x, v;
};

RawState raw_state(const Scenario& s, double tau) {
    const auto& ph = s.phys;
    const double x0 = s.init.x0, v0 = s.init.p0 / ph.m0;
    if (s.model == Model::harmonic) {
        const double c = std::cos(tau), sn = std::sin(tau), w = ph.omega;
        return {x0 * c + v0 / w * sn, v0 * c - x0 * w * sn};
    }
    const Zeta z = scenario_zeta(s);
    const auto [c, sh] = decayed_cs(z, tau);
    const double l = ph.lambda;
    return {x0 * (c + sh) + v0 / l * sh, v0 * decayed_c_minus_s(z, tau) - x0 * ph.omega * ph.omega / l * sh};
}

} // namespace

PositionScale position_scale(const Scenario& s) {
    return s.dim.epsilon > 0.0 ? PositionScale::x0 : PositionScale::xm;
}

double position_scale_value(const Scenario& s) {
    if (position_scale(s) == PositionScale::x0) return s.init.x0;
    const double rate = s.model == Model::harmonic ? s.phys.omega : s.phys.lambda;
    return s.init.p0 / (s.phys.m0 * rate);
}

Zeta scenario_zeta(const Scenario& s) {
    if (s.model == Model::harmonic) throw DomainError("zeta is undefined for lambda = 0");
    return make_zeta(s.dim.omega_over_lambda);
}

CoefficientVector alpha_cl(const DimensionlessParams& d, const Zeta& z) {
    const double e = d.epsilon, r = d.omega_over_lambda;
    const double se = std::sqrt(e - e * e);
    const double a = 1.0 / (1.0 - e);
    return from_reduced(a * (1.0 - e), -2.0 * a * (r * se + (1.0 - e)),
                        a * (r * r * e + 2.0 * r * se + 1.0 - e), z);
}

CoefficientVector alpha_cl_harmonic(const DimensionlessParams& d) {
    const double e = d.epsilon;
    const double a = 1.0 / (1.0 - e);
    return {a * (1.0 - e), -2.0 * a * std::sqrt(e - e * e), a * e};
}

double classical_position(const Scenario& s, double tau) {
    check_tau(tau);
    return raw_state(s, tau).x / position_scale_value(s);
}

ClassicalTrajectoryPoint classical_point(const Scenario& s, double tau) {
    check_tau(tau);
    const RawState st = raw_state(s, tau);
    ClassicalTrajectoryPoint pt;
    pt.tau = tau;
    pt.x_over_scale = st.x / position_scale_value(s);
    pt.v = st.v;
    pt.p = s.phys.m0 * st.v * std::exp(2.0 * s.phys.lambda / s.rate() * tau);
    pt.K_over_K0 = classical_kinetic(s, tau);
    return pt;
}

double classical_kinetic(const Scenario& s, double tau) {
    check_tau(tau);
    if (s.model == Model::harmonic)
        return contract(alpha_cl_harmonic(s.dim), harmonic_gamma(tau));
    const Zeta z = scenario_zeta(s);
    return contract(alpha_cl(s.dim, z), scaled_gamma(z, tau, -1));
}

double classical_work(const Scenario& s, double tau) {
    check_tau(tau);
    if (s.model == Model::harmonic) {
        const auto a = alpha_cl_harmonic(s.dim);
        return contract(a, harmonic_gamma(tau)) - contract(a, harmonic_gamma(0.0));
    }
    const Zeta z = scenario_zeta(s);
    const auto a = alpha_cl(s.dim, z);
    return contract(a, scaled_gamma(z, tau, -1)) - contract(a, gamma(z, 0.0));
}

double classical_potential(const Scenario& s, double tau) {
    check_tau(tau);
    const RawState st = raw_state(s, tau);
    return 0.5 * s.phys.k0 * st.x * st.x / s.K0();
}

} // namespace ckw
