#include "ckwork/scenario.hpp"

#include "ckwork/errors.hpp"

#include <cmath>

namespace ckw {

namespace {

void validate(const DimensionlessParams& d, Model model) {
    if (!(d.epsilon >= 0.0 && d.epsilon < 1.0))
        throw RejectedParams("epsilon must lie in [0, 1)");
    if (!(d.epsilon_delta > 0.0 && d.epsilon_delta < 1.0))
        throw RejectedParams("epsilon_delta must lie in (0, 1)");
    if (!(d.theta >= 0.0) || !std::isfinite(d.theta))
        throw RejectedParams("theta must be finite and >= 0");
    if (!(d.E0 > 0.0) || !std::isfinite(d.E0))
        throw RejectedParams("E0 must be positive");
    if (model == Model::damped &&
        (!(d.omega_over_lambda > 0.0) || !std::isfinite(d.omega_over_lambda)))
        throw RejectedParams("omega_over_lambda must be positive and finite");
    if (model == Model::drag && d.epsilon > 0.0)
        throw RejectedParams("epsilon > 0 needs a restoring force (omega = 0)");
}

} // namespace

Scenario materialize(const DimensionlessParams& dim, Model model, const UnitChoice& units,
                     bool want_quantum) {
    validate(dim, model);
    if (!(units.m0 > 0.0) || !(units.lambda > 0.0) || !(units.omega_harmonic > 0.0))
        throw RejectedParams("unit choice must be positive");

    Scenario s;
    s.model = model;
    s.dim = dim;
    auto& ph = s.phys;
    ph.m0 = units.m0;
    switch (model) {
    case Model::damped:
        ph.lambda = units.lambda;
        ph.omega = dim.omega_over_lambda * units.lambda;
        break;
    case Model::harmonic:
        ph.lambda = 0.0;
        ph.omega = units.omega_harmonic;
        s.dim.omega_over_lambda = INFINITY;
        break;
    case Model::drag:
        ph.lambda = units.lambda;
        ph.omega = 0.0;
        s.dim.omega_over_lambda = 0.0;
        break;
    }
    ph.k0 = ph.m0 * ph.omega * ph.omega;

    const double E0 = dim.E0, m = ph.m0, w = ph.omega;
    auto& in = s.init;
    in.x0 = dim.epsilon > 0.0 ? std::sqrt(2.0 * dim.epsilon * E0 / (m * w * w)) : 0.0;
    in.p0 = std::sqrt(2.0 * m * (1.0 - dim.epsilon) * E0);

    if (dim.theta > 0.0 && w > 0.0) {
        const double e0 = dim.theta * E0;
        const double ed = dim.epsilon_delta;
        in.delta_x0 = std::sqrt(2.0 * ed * e0 / (m * w * w));
        in.delta_p0 = std::sqrt(2.0 * m * (1.0 - ed) * e0);
        ph.hbar = 4.0 * e0 * std::sqrt(ed * (1.0 - ed)) / w;
        s.quantum = true;
    }
    if (want_quantum) require_quantum(s);
    return s;
}

void require_quantum(const Scenario& s) {
    if (s.dim.theta <= 0.0)
        throw RejectedParams("quantum engine requested with theta = 0");
    if (s.phys.omega <= 0.0)
        throw RejectedParams("quantum state needs omega > 0 to fix hbar from epsilon_delta");
    if (!s.quantum) throw RejectedParams("scenario has no quantum state");
}

double theta_prime(const DimensionlessParams& d) {
    const double den = d.epsilon_delta + d.epsilon - 2.0 * d.epsilon_delta * d.epsilon;
    if (!(d.epsilon_delta > 0.0 && d.epsilon_delta < 1.0) || !(den > 0.0))
        throw RejectedParams("theta_prime: denominator must be positive");
    return d.theta * d.epsilon_delta * (1.0 - d.epsilon_delta) / den;
}

DimensionlessParams rederive(const Scenario& s) {
    const auto& ph = s.phys;
    const auto& in = s.init;
    DimensionlessParams d = s.dim;
    const double U0 = 0.5 * ph.k0 * in.x0 * in.x0;
    const double K0 = in.p0 * in.p0 / (2.0 * ph.m0);
    d.E0 = U0 + K0;
    d.epsilon = U0 / d.E0;
    if (s.quantum) {
        const double u = 0.5 * ph.k0 * in.delta_x0 * in.delta_x0;
        const double k = in.delta_p0 * in.delta_p0 / (2.0 * ph.m0);
        d.epsilon_delta = u / (u + k);
        d.theta = (u + k) / d.E0;
    }
    if (s.model == Model::damped) d.omega_over_lambda = ph.omega / ph.lambda;
    return d;
}

double tau_from_omega_t(const Scenario& s, double omega_t) {
    switch (s.model) {
    case Model::damped:
        return omega_t / s.dim.omega_over_lambda;
    case Model::harmonic:
    case Model::drag:
        break;
    }
    return omega_t;
}

double omega_t_from_tau(const Scenario& s, double tau) {
    return s.model == Model::damped ? tau * s.dim.omega_over_lambda : tau;
}

DimensionlessParams preset_uo() { return {10.0, 0.0, 0.5, 0.1, 1.0}; }
DimensionlessParams preset_oo() { return {0.1, 0.0, 0.5, 0.1, 1.0}; }

std::string to_string(Model m) {
    switch (m) {
    case Model::damped: return "damped";
    case Model::harmonic: return "harmonic";
    case Model::drag: return "drag";
    }
    return "?";
}

} // namespace ckw
