#include "ckwork/ensembles.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/energetics.hpp"
#include "ckwork/errors.hpp"
#include "ckwork/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ckw {

LiouvilleGaussian matching_ensemble(const Scenario& s, bool mixed) {
    require_quantum(s);
    return {s.init.x0, s.init.p0, s.init.delta_x0, s.init.delta_p0, mixed};
}

CoefficientVector alpha_star(const LiouvilleGaussian& e, const Scenario& s, const Zeta& z) {
    const double p = e.p_center, x = e.x_center, kl = s.phys.k0 / s.phys.lambda;
    const double im2 = 1.0 / (s.phys.m0 * s.phys.m0);
    return from_reduced(im2 * p * p, -2.0 * im2 * (p * p + kl * p * x),
                        im2 * (p * p + 2.0 * p * kl * x + kl * kl * x * x), z);
}

CoefficientVector beta_star(const LiouvilleGaussian& e, const Scenario& s, const Zeta& z) {
    const double sp2 = e.sigma_p0 * e.sigma_p0, sx2 = e.sigma_x0 * e.sigma_x0, kl = s.phys.k0 / s.phys.lambda;
    const double im2 = 1.0 / (s.phys.m0 * s.phys.m0);
    return from_reduced(im2 * sp2, -2.0 * im2 * sp2, im2 * (sp2 + kl * kl * sx2), z);
}

LiouvilleMoments liouville_moments(const LiouvilleGaussian& e, const Scenario& s, double tau) {
    if (!(e.sigma_x0 > 0.0) || !(e.sigma_p0 > 0.0)) throw RejectedParams("ensemble widths must be positive");
    if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
    const double m = s.phys.m0;
    LiouvilleMoments r;
    if (s.model == Model::harmonic) {
        const double c = std::cos(tau), sn = std::sin(tau), w = s.phys.omega;
        const double vbar = e.p_center / m * c - e.x_center * w * sn;
        const double var = e.sigma_p0 * e.sigma_p0 / (m * m) * c * c + e.sigma_x0 * e.sigma_x0 * w * w * sn * sn;
        r.mean_v = vbar;
        r.mean_v_sq = vbar * vbar;
        r.mean_v2 = vbar * vbar + var;
    } else {
        const Zeta z = scenario_zeta(s);
        const auto g = scaled_gamma(z, tau, -1);
        const auto a = alpha_star(e, s, z);
        const double sh = decayed_cs(z, tau).s;
        r.mean_v = e.p_center / m * decayed_c_minus_s(z, tau) - s.phys.k0 * e.x_center / (m * s.phys.lambda) * sh;
        r.mean_v_sq = contract(a, g);
        r.mean_v2 = contract(a + beta_star(e, s, z), g);
    }
    if (e.mixed) {
        r.mean_v = 0.0;
        r.mean_v_sq = 0.0;
    }
    r.var_v = r.mean_v2 - r.mean_v_sq;
    return r;
}

VelocityMoments liouville_scaled(const LiouvilleGaussian& e, const Scenario& s, double tau) {
    const double m = s.phys.m0, w2 = s.phys.omega * s.phys.omega;
    const double U0 = 0.5 * m * w2 * e.x_center * e.x_center, K0 = e.p_center * e.p_center / (2.0 * m);
    const double u0 = 0.5 * m * w2 * e.sigma_x0 * e.sigma_x0, k0 = e.sigma_p0 * e.sigma_p0 / (2.0 * m);
    DimensionlessParams d = s.dim;
    d.E0 = U0 + K0;
    d.epsilon = U0 / d.E0;
    d.epsilon_delta = u0 / (u0 + k0);
    d.theta = (u0 + k0) / d.E0;

    VelocityMoments r;
    if (s.model == Model::harmonic) {
        const auto g = harmonic_gamma(tau);
        r.v_sq = contract(alpha_cl_harmonic(d), g);
        r.var = d.theta * contract(beta_harmonic(d), g);
    } else {
        const Zeta z = scenario_zeta(s);
        const auto g = scaled_gamma(z, tau, -1);
        r.v_sq = contract(alpha_cl(d, z), g);
        r.var = d.theta * contract(beta(d, z), g);
    }
    if (e.mixed) {
        r.var += r.v_sq;
        r.v_sq = 0.0;
    }
    r.v2 = r.v_sq + r.var;
    return r;
}

VelocityMoments quantum_velocity_moments(const Scenario& s, double tau) {
    const auto g = evolved_gaussian(s, tau);
    const double m = s.phys.m0;
    const double f = std::exp(-2.0 * s.phys.lambda / s.rate() * tau) / m;  // V = f P
    const double k = 0.5 * m / s.K0();
    VelocityMoments r;
    r.v_sq = k * f * f * g.mean_p * g.mean_p;
    r.var = k * f * f * g.var_p;
    r.v2 = k * f * f * g.mean_p2;
    return r;
}

CorrespondenceReport correspondence_check(const Scenario& s, const std::vector<double>& taus, double tolerance) {
    const auto ens = matching_ensemble(s, false);
    const double m = s.phys.m0, k = 0.5 * m / s.K0();
    CorrespondenceReport rep;
    rep.tolerance = tolerance;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); };
    auto relk = [](double a, double b, double scale) { return std::abs(a - b) / std::max(scale, 1e-300); };
    for (double t : taus) {
        const auto q = quantum_velocity_moments(s, t);
        const auto c = liouville_moments(ens, s, t);
        const auto d = liouville_scaled(ens, s, t);
        // <v>^2 can pass through zero; measure it against the total second moment
        rep.max_dev_v2 = std::max({rep.max_dev_v2, rel(q.v2, k * c.mean_v2), rel(q.v2, d.v2)});
        rep.max_dev_v_sq = std::max({rep.max_dev_v_sq, relk(q.v_sq, k * c.mean_v_sq, q.v2), relk(q.v_sq, d.v_sq, q.v2)});
        rep.max_dev_var = std::max({rep.max_dev_var, rel(q.var, k * c.var_v), rel(q.var, d.var)});
    }
    if (!rep.ok()) {
        std::ostringstream os;
        os << "quantum/Liouville correspondence violated: <v^2> " << rep.max_dev_v2 << ", <v>^2 "
           << rep.max_dev_v_sq << ", sigma_v^2 " << rep.max_dev_var << " (tolerance " << tolerance << ")";
        throw CorrespondenceViolation(os.str());
    }
    return rep;
}

MuState make_mu_state(const Scenario& s, double mu) {
    require_quantum(s);
    if (!(mu >= 0.0)) throw RejectedParams("mu must be >= 0");
    MuState st;
    st.mu = mu;
    st.base = s.init;
    const double d2 = s.init.delta_x0 * s.init.delta_x0, hb = s.phys.hbar;
    st.kappa = s.init.x0 * s.init.x0 / (2.0 * d2) + s.init.p0 * s.init.p0 * 4.0 * d2 / (2.0 * hb * hb);
    st.norm = 2.0 * (1.0 + std::exp(-(mu + st.kappa)));
    return st;
}

MuMoments mu_state_moments(const MuState& st, const Scenario& s, double tau) {
    require_quantum(s);
    const auto g = evolved_gaussian(s, tau);
    const double x0 = st.base.x0, p0 = st.base.p0, d2 = st.base.delta_x0 * st.base.delta_x0;
    const double hb = s.phys.hbar, m = s.phys.m0;

    // u and u*c- stay finite where the factorization itself is singular
    double u, ucm;
    if (s.model == Model::harmonic) {
        u = std::cos(tau);
        ucm = -std::sin(tau) / (m * s.phys.omega);
    } else {
        const auto [c, sh] = decayed_cs(scenario_zeta(s), tau);
        u = c + sh;
        ucm = -sh / (s.phys.lambda * m);
    }
    const double q = std::exp(-(st.mu + st.kappa));
    const double mean = u * x0 - ucm * p0;
    const double cross = ucm * x0 * hb / (2.0 * d2) + u * p0 * 2.0 * d2 / hb;

    MuMoments r;
    r.mean_x = 0.0;
    r.mean_p = 0.0;
    r.mean_x2 = g.var_x + (mean * mean - q * cross * cross) / (1.0 + q);
    const double two_kappa = p0 * p0 / (hb * hb / (4.0 * d2)) + x0 * x0 / d2;
    r.mean_p2 = g.mean_p2 - two_kappa * g.var_p / (1.0 + std::exp(st.mu + 0.5 * two_kappa));
    return r;
}

double mu_kinetic_scaled(const MuState& st, const Scenario& s, double tau) {
    const double K = kinetic_energy(s, tau);
    if (s.dim.theta == 0.0) return K;
    const double tp = theta_prime(s.dim);
    double thermal;
    if (s.model == Model::harmonic) {
        thermal = s.dim.theta * contract(beta_harmonic(s.dim), harmonic_gamma(tau));
    } else {
        const Zeta z = scenario_zeta(s);
        thermal = s.dim.theta * contract(beta(s.dim, z), scaled_gamma(z, tau, -1));
    }
    return K - (1.0 / tp) * thermal / (1.0 + std::exp(st.mu + 1.0 / (2.0 * tp)));
}

double mu_kinetic_from_traces(const MuState& st, const Scenario& s, double tau) {
    const auto mm = mu_state_moments(st, s, tau);
    const double m = s.phys.m0;
    const double f = std::exp(-2.0 * s.phys.lambda / s.rate() * tau) / m;
    return 0.5 * m * f * f * mm.mean_p2 / s.K0();
}

MuWork mu_work(const MuState& st, const Scenario& s, double tau) {
    MuWork w;
    w.W_q = mu_kinetic_scaled(st, s, tau) - mu_kinetic_scaled(st, s, 0.0);
    w.W_c = 0.0;
    w.W_th = w.W_q;
    return w;
}

} // namespace ckw
