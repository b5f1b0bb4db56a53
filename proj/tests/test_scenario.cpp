#include "doctest.h"
#include "support.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/energetics.hpp"
#include "ckwork/ensembles.hpp"
#include "ckwork/errors.hpp"

#include <cmath>

using namespace ckw;
using ckw::test::rel;

TEST_CASE("UO preset materializes with hbar 0.02") {
    const auto s = materialize(preset_uo(), Model::damped, {}, true);
    CHECK(s.phys.hbar == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(s.init.x0 == 0.0);
    CHECK(s.init.p0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.phys.k0 == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(rel(s.init.delta_x0 * s.init.delta_p0, s.phys.hbar / 2) < 1e-12);
    CHECK(s.quantum);
}

TEST_CASE("initial state reproduces the energy split") {
    test::ParamGen gen(11);
    for (int i = 0; i < 200; ++i) {
        auto d = gen.damped();
        d.theta = gen.uniform(0.01, 1.0);
        d.E0 = gen.log_uniform(0.1, 10.0);
        const auto s = materialize(d, Model::damped, {}, true);
        const auto& p = s.phys;
        const auto& in = s.init;
        if (d.epsilon > 0.0) CHECK(rel(0.5 * p.m0 * p.omega * p.omega * in.x0 * in.x0, d.epsilon * d.E0) < 1e-12);
        CHECK(rel(in.p0 * in.p0 / (2 * p.m0), (1 - d.epsilon) * d.E0) < 1e-12);
        CHECK(rel(in.delta_x0 * in.delta_p0, p.hbar / 2) < 1e-12);
        CHECK(p.k0 == p.m0 * p.omega * p.omega);
    }
}

TEST_CASE("invalid parameters are rejected") {
    auto d = preset_uo();
    d.epsilon = 1.0;
    CHECK_THROWS_AS(materialize(d), RejectedParams);
    d = preset_uo();
    d.epsilon_delta = 0.0;
    CHECK_THROWS_AS(materialize(d), RejectedParams);
    d.epsilon_delta = 1.0;
    CHECK_THROWS_AS(materialize(d), RejectedParams);
    d = preset_uo();
    d.theta = -0.1;
    CHECK_THROWS_AS(materialize(d), RejectedParams);
    d = preset_uo();
    d.epsilon = 0.3;
    CHECK_THROWS_AS(materialize(d, Model::drag), RejectedParams);
    d = preset_uo();
    d.omega_over_lambda = 0.0;
    CHECK_THROWS_AS(materialize(d), RejectedParams);
}

TEST_CASE("theta = 0 is a classical-only scenario") {
    auto d = preset_uo();
    d.theta = 0.0;
    const auto s = materialize(d);
    CHECK_FALSE(s.quantum);
    CHECK(classical_kinetic(s, 0.3) >= 0.0);
    CHECK_THROWS_AS(materialize(d, Model::damped, {}, true), RejectedParams);
    CHECK_THROWS_AS(require_quantum(s), RejectedParams);
}

TEST_CASE("drag scenario has no quantum state") {
    const auto s = test::drag();
    CHECK_FALSE(s.quantum);
    CHECK(s.phys.k0 == 0.0);
    CHECK(s.phys.omega == 0.0);
}

TEST_CASE("theta prime") {
    DimensionlessParams d{10.0, 0.0, 0.5, 1.0, 1.0};
    CHECK(theta_prime(d) == doctest::Approx(0.5).epsilon(1e-15));
    d.theta = 0.1;
    CHECK(theta_prime(d) == doctest::Approx(0.05).epsilon(1e-15));
    d.epsilon_delta = 1e-9;
    CHECK(theta_prime(d) == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("rederive inverts materialize") {
    test::ParamGen gen(12);
    for (int i = 0; i < 200; ++i) {
        auto d = gen.damped();
        d.theta = gen.uniform(0.01, 1.0);
        const auto back = rederive(materialize(d, Model::damped, {}, true));
        CHECK(rel(back.epsilon, d.epsilon) < 1e-12);
        CHECK(rel(back.epsilon_delta, d.epsilon_delta) < 1e-12);
        CHECK(rel(back.theta, d.theta) < 1e-12);
        CHECK(rel(back.omega_over_lambda, d.omega_over_lambda) < 1e-12);
    }
}

TEST_CASE("dimensionless outputs do not depend on E0") {
    test::ParamGen gen(13);
    for (int i = 0; i < 50; ++i) {
        auto d = gen.damped();
        d.theta = gen.uniform(0.01, 1.0);
        auto d2 = d;
        d2.E0 = 2.0;
        const auto a = materialize(d, Model::damped, {}, true);
        const auto b = materialize(d2, Model::damped, {}, true);
        for (double t : {0.0, 0.3, 1.7, 5.0}) {
            CHECK(std::abs(classical_position(a, t) - classical_position(b, t)) <= 1e-12 * std::max(1.0, std::abs(classical_position(a, t))));
            CHECK(rel(kinetic_energy(a, t), kinetic_energy(b, t)) < 1e-12);
            CHECK(std::abs(alicki_work_heat(a, t).W_ak - alicki_work_heat(b, t).W_ak) < 1e-12);
            const auto ma = make_mu_state(a, 0.0), mb = make_mu_state(b, 0.0);
            CHECK(rel(mu_kinetic_from_traces(ma, a, t), mu_kinetic_from_traces(mb, b, t)) < 1e-12);
        }
    }
}

TEST_CASE("time axis conversion") {
    const auto s = test::uo();
    CHECK(tau_from_omega_t(s, 10.0) == doctest::Approx(1.0));
    CHECK(omega_t_from_tau(s, 1.0) == doctest::Approx(10.0));
    CHECK(tau_from_omega_t(test::oo(), 10.0) == doctest::Approx(100.0));
    CHECK(tau_from_omega_t(test::harmonic(), 3.0) == 3.0);
    CHECK(test::harmonic().rate() == 1.0);
}
