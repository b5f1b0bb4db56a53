#pragma once

#include "ckwork/scenario.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace ckw {

// ---- RK4 on x'' + 2 lambda x' + omega^2 x = 0 ----------------------------

struct Rk4Sample {
    double tau, x, v, p;
};

// Integrates from (x0, p0) up to tau_end; dt in engine time units. Samples at
// every `stride` steps and at tau_end.
std::vector<Rk4Sample> rk4_classical(const Scenario& s, double x0, double p0, double tau_end,
                                     double dt, int stride = 1);

// Final state only, without the step-size precondition.
Rk4Sample rk4_final(const Scenario& s, double x0, double p0, double tau_end, double dt);

// (e(dt) - e(dt/2)) / (e(dt/2) - e(dt/4)) for the final velocity; ~16 for a 4th-order scheme.
double rk4_convergence_ratio(const Scenario& s, double tau_end, double dt);

// ---- adaptive quadrature ------------------------------------------------

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10);

// ---- Monte Carlo Liouville sampler ----------------------------------------

struct SamplerEnsemble {
    double x_center, p_center, sigma_x, sigma_p;
    bool mixed = false;  // equal-weight mixture with the mirrored center
};

struct MomentEstimate {
    double tau;
    double mean_v, se_mean_v;
    double mean_v2, se_mean_v2;
};

std::vector<MomentEstimate> monte_carlo_liouville(const SamplerEnsemble& ens, const Scenario& s,
                                                  std::size_t n_samples, std::uint64_t seed,
                                                  const std::vector<double>& taus, double dt = 1e-4);

// ---- Crank-Nicolson grid propagator --------------------------------------

using cplx = std::complex<double>;

struct GridSpec {
    double x_min = -1.0, x_max = 1.0;
    std::size_t n_points = 4096;
    double dt = 1e-3;       // engine time units
    double padding = 0.05;  // fraction of the box on each side treated as outside
};

// Box from energy bounds of the initial state; n_points and dt are left to the caller.
GridSpec suggest_grid(const Scenario& s, std::size_t n_points, double dt);

struct CnObservables {
    double tau = 0.0;
    double norm = 0.0;
    double mean_x = 0.0, mean_x2 = 0.0;
    double mean_p = 0.0, mean_p2 = 0.0;
    double outside = 0.0;  // probability in the padding strips
};

struct CnRun {
    std::vector<double> x;
    std::vector<CnObservables> obs;
    std::vector<std::vector<cplx>> psi;  // filled when keep_psi
};

// Initial data: the scenario's Gaussian, or its parity-symmetric combination
// psi(x) + sign * psi(-x) (unnormalized; sign = +1 for the superposition).
struct InitialWave {
    enum class Kind { gaussian, parity_pair } kind = Kind::gaussian;
    double sign = 1.0;
};

std::vector<cplx> initial_wave(const Scenario& s, const GridSpec& g, const InitialWave& w = {});
std::vector<double> grid_points(const GridSpec& g);
double grid_norm(const GridSpec& g, const std::vector<cplx>& psi);

CnRun crank_nicolson(const Scenario& s, const GridSpec& g, const std::vector<double>& taus,
                     const InitialWave& w = {}, bool keep_psi = false, bool normalize = true);

struct CnReferee {
    std::vector<CnObservables> obs;  // Richardson-extrapolated in dt
    double time_convergence = 0.0;   // between successive extrapolations
    double space_convergence = 0.0;  // n vs 2n at the coarsest dt
    double norm_drift = 0.0;         // worst |norm - 1| per unit tau
};

CnReferee crank_nicolson_referee(const Scenario& s, const GridSpec& g, const std::vector<double>& taus,
                                 const InitialWave& w = {});

// Relative deviation used for all CN comparisons: first moments are scaled by
// the root of the matching second moment.
double cn_relative_error(const CnObservables& a, const CnObservables& b);

} // namespace ckw
