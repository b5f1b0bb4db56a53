#include "ckwork/classical.hpp"
#include "ckwork/energetics.hpp"
#include "ckwork/ensembles.hpp"
#include "ckwork/oracles.hpp"
#include "ckwork/quantum.hpp"

#include <benchmark/benchmark.h>

using namespace ckw;

namespace {

Scenario uo(double theta = 0.1) {
    auto d = preset_uo();
    d.theta = theta;
    return materialize(d, Model::damped, {}, theta > 0.0);
}

void BM_ScaledGamma(benchmark::State& st) {
    const auto z = make_zeta(st.range(0) / 10.0);
    double t = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(scaled_gamma(z, t, -1));
        t += 1e-3;
    }
}
BENCHMARK(BM_ScaledGamma)->Arg(1)->Arg(10)->Arg(100);

void BM_QuantumWork(benchmark::State& st) {
    const auto s = uo();
    double t = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(quantum_work(s, t));
        t += 1e-4;
    }
}
BENCHMARK(BM_QuantumWork);

void BM_AlickiClosedForm(benchmark::State& st) {
    const auto s = uo();
    for (auto _ : st) benchmark::DoNotOptimize(alicki_work_heat(s, 0.7));
}
BENCHMARK(BM_AlickiClosedForm);

void BM_AlickiQuadrature(benchmark::State& st) {
    const auto s = uo();
    for (auto _ : st) benchmark::DoNotOptimize(alicki_work_heat(s, 0.7, AlickiMethod::quadrature));
}
BENCHMARK(BM_AlickiQuadrature);

void BM_EvolvedGaussian(benchmark::State& st) {
    const auto s = uo();
    for (auto _ : st) benchmark::DoNotOptimize(evolved_gaussian(s, 0.7));
}
BENCHMARK(BM_EvolvedGaussian);

void BM_MuMoments(benchmark::State& st) {
    const auto s = uo(1.0);
    const auto m = make_mu_state(s, 0.0);
    for (auto _ : st) benchmark::DoNotOptimize(mu_state_moments(m, s, 0.7));
}
BENCHMARK(BM_MuMoments);

void BM_EnergySeries(benchmark::State& st) {
    const auto s = uo();
    std::vector<double> taus;
    for (int i = 0; i <= 1000; ++i) taus.push_back(i * 1e-3);
    for (auto _ : st) benchmark::DoNotOptimize(energy_series(s, taus));
}
BENCHMARK(BM_EnergySeries)->Unit(benchmark::kMillisecond);

void BM_Rk4(benchmark::State& st) {
    const auto s = uo(0.0);
    for (auto _ : st) benchmark::DoNotOptimize(rk4_final(s, s.init.x0, s.init.p0, 1.0, 1e-4));
}
BENCHMARK(BM_Rk4)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& st) {
    const auto s = uo();
    const auto e = matching_ensemble(s);
    const SamplerEnsemble se{e.x_center, e.p_center, e.sigma_x0, e.sigma_p0, false};
    for (auto _ : st)
        benchmark::DoNotOptimize(monte_carlo_liouville(se, s, static_cast<std::size_t>(st.range(0)), 1, {0.5, 1.0}));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CrankNicolson(benchmark::State& st) {
    const auto s = uo();
    const auto g = suggest_grid(s, static_cast<std::size_t>(st.range(0)), 1e-3);
    for (auto _ : st) benchmark::DoNotOptimize(crank_nicolson(s, g, {0.1}));
    st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_CrankNicolson)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
