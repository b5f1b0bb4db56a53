#include "doctest.h"
#include "support.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/energetics.hpp"
#include "ckwork/ensembles.hpp"
#include "ckwork/oracles.hpp"
#include "ckwork/quantum.hpp"

#include <cmath>

using namespace ckw;
using ckw::test::rel;

namespace {

std::vector<double> tau_points(const Scenario& s, int n) {
    std::vector<double> t;
    const double end = tau_from_omega_t(s, 10.0);
    for (int i = 0; i <= n; ++i) t.push_back(end * i / n);
    return t;
}

} // namespace

TEST_CASE("energy identities over a random sweep") {
    test::ParamGen gen(101);
    for (int i = 0; i < 200; ++i) {
        const auto s = materialize(gen.damped());
        const double K0 = kinetic_energy(s, 0.0);
        for (double t : tau_points(s, 100)) {
            const auto w = quantum_work(s, t);
            const double K = kinetic_energy(s, t);
            CHECK(K >= 0.0);
            CHECK(std::abs(w.W_q - (w.W_c + w.W_th)) <= 1e-12);
            CHECK(std::abs(w.W_q - (K - K0)) <= 1e-12);
            CHECK(std::abs(w.W_c - classical_work(s, t)) <= 1e-12);
            const auto a = alicki_work_heat(s, t);
            CHECK(std::abs((K - K0) - (a.W_ak + a.Q_ak)) <= 1e-10);
        }
    }
}

TEST_CASE("theta = 0 collapses every quantum series onto the classical one") {
    test::ParamGen gen(102);
    for (int i = 0; i < 100; ++i) {
        auto d = gen.damped();
        d.theta = 0.0;
        const auto s = materialize(d);
        for (double t : tau_points(s, 50)) {
            const auto w = quantum_work(s, t);
            CHECK(std::abs(w.W_q - classical_work(s, t)) <= 1e-12);
            CHECK(w.W_th == 0.0);
        }
    }
}

TEST_CASE("Alicki work does not depend on the integration route") {
    test::ParamGen gen(103);
    for (int i = 0; i < 40; ++i) {
        const auto s = materialize(gen.damped());
        for (double t : {0.1, 1.0, 4.0}) {
            const double cf = alicki_work_heat(s, t).W_ak;
            const double qd = alicki_work_heat(s, t, AlickiMethod::quadrature).W_ak;
            CHECK(std::abs(cf - qd) <= 1e-8 * std::max(1.0, std::abs(cf)));
        }
    }
}

TEST_CASE("Alicki work is never above the kinetic change at zero stiffness") {
    test::ParamGen gen(104);
    for (int i = 0; i < 40; ++i) {
        DimensionlessParams d{1.0, 0.0, gen.uniform(0.1, 0.9), gen.uniform(0.0, 1.0), 1.0};
        const auto s = materialize(d, Model::drag);
        for (double t = 0.0; t <= 5.0; t += 0.5) {
            const auto a = alicki_work_heat(s, t);
            CHECK(std::abs(a.Q_ak) <= 1e-12);
            CHECK(a.W_ak <= 1e-15);
        }
    }
}

TEST_CASE("Ehrenfest and correspondence for random quantum scenarios") {
    test::ParamGen gen(105);
    for (int i = 0; i < 60; ++i) {
        auto d = gen.damped();
        d.theta = gen.log_uniform(1e-3, 1.0);
        const auto s = materialize(d, Model::damped, {}, true);
        const double scale = position_scale_value(s);
        std::vector<double> taus;
        for (double t : tau_points(s, 40))
            if (t <= kQuantumTauMax) taus.push_back(t);
        for (double t : taus)
            CHECK(std::abs(evolved_gaussian(s, t).mean_x / scale - classical_position(s, t)) <= 1e-12);
        CHECK(correspondence_check(s, taus).ok());
    }
}

TEST_CASE("mu interpolates monotonically between superposition and mixture") {
    test::ParamGen gen(106);
    for (int i = 0; i < 40; ++i) {
        auto d = gen.damped();
        d.theta = gen.uniform(0.05, 1.0);
        const auto s = materialize(d, Model::damped, {}, true);
        for (double t : {0.3, 1.5}) {
            double prev = -INFINITY;
            for (double mu : {0.0, 0.25, 1.0, 4.0, 50.0}) {
                const double k = mu_kinetic_scaled(make_mu_state(s, mu), s, t);
                CHECK(k >= prev - 1e-14);
                prev = k;
            }
            CHECK(std::abs(prev - kinetic_energy(s, t)) <= std::exp(-50.0) + 1e-12);
            const auto st = make_mu_state(s, 1.3);
            CHECK(std::abs(mu_kinetic_scaled(st, s, t) - mu_kinetic_from_traces(st, s, t)) <= 1e-10);
        }
    }
}

TEST_CASE("RK4 agrees with the closed forms on random scenarios") {
    test::ParamGen gen(107);
    for (int i = 0; i < 30; ++i) {
        const auto d = gen.damped();
        const auto s = materialize(d);
        const double dt = 1e-3 / std::max(1.0, d.omega_over_lambda);
        const double end = std::min(10.0, tau_from_omega_t(s, 10.0));
        const auto q = rk4_final(s, s.init.x0, s.init.p0, end, dt);
        const auto pt = classical_point(s, end);
        const double x = pt.x_over_scale * position_scale_value(s);
        const double energy = 0.5 * s.phys.k0 * x * x + 0.5 * s.phys.m0 * pt.v * pt.v;
        const double err = 0.5 * s.phys.k0 * (q.x - x) * (q.x - x) + 0.5 * s.phys.m0 * (q.v - pt.v) * (q.v - pt.v);
        CHECK(std::sqrt(err / energy) <= 1e-8);
    }
}
