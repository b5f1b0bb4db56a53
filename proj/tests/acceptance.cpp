#include "cli_io.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/energetics.hpp"
#include "ckwork/ensembles.hpp"
#include "ckwork/errors.hpp"
#include "ckwork/oracles.hpp"
#include "ckwork/quantum.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ckw;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double budget_s, const std::function<Verdict()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = f();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0 && secs > budget_s) {
        v.pass = false;
        v.detail += "; over the " + std::to_string(budget_s) + " s budget";
    }
    if (!v.pass) ++failures;
    std::printf("[%s] %-3s %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(), v.detail.c_str(),
                secs);
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

Scenario preset(DimensionlessParams d, double theta) {
    d.theta = theta;
    return materialize(d, Model::damped, {}, theta > 0.0);
}

std::vector<double> figure_taus(const Scenario& s, int n = 1000) {
    std::vector<double> t;
    for (int i = 0; i <= n; ++i) t.push_back(tau_from_omega_t(s, 10.0 * i / n));
    return t;
}

DimensionlessParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DimensionlessParams d;
    d.omega_over_lambda = std::exp(std::log(0.05) + u(rng) * std::log(20.0 / 0.05));
    d.epsilon = 0.9 * u(rng);
    d.epsilon_delta = 0.1 + 0.8 * u(rng);
    d.theta = u(rng);
    d.E0 = 1.0;
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double relerr(double a, double b) {
    const double d = std::max(std::abs(a), std::abs(b));
    return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

} // namespace

int main() {
    const auto uo = preset_uo();
    const auto oo = preset_oo();

    criterion("1", "special-case exactness", 1.0, [] {
        double dev = 0.0;
        for (double th : {0.0, 0.1, 1.0}) {
            for (double ed : {0.2, 0.5, 0.8}) {
                const auto drag = materialize({1.0, 0.0, ed, th, 1.0}, Model::drag);
                const auto harm = materialize({1.0, 0.3, ed, th, 1.0}, Model::harmonic);
                const double k0 = 1.0 + th * (1.0 - ed);
                for (int i = 0; i <= 1000; ++i) {
                    const double t = 0.01 * i;
                    dev = std::max(dev, std::abs(alicki_work_heat(drag, t).Q_ak));
                    dev = std::max(dev, std::abs(kinetic_energy(drag, t) - k0 * std::exp(-4.0 * t)));
                    dev = std::max(dev, std::abs(alicki_work_heat(harm, t).W_ak));
                }
            }
        }
        return Verdict{dev <= 1e-12, "max deviation " + sci(dev) + " (tol 1e-12)"};
    });

    criterion("2", "decomposition and work-energy identities", 10.0, [] {
        std::mt19937_64 rng(2);
        double dec = 0.0, we = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto s = materialize(random_params(rng));
            const double K0 = kinetic_energy(s, 0.0);
            for (double t : figure_taus(s, 100)) {
                const auto w = quantum_work(s, t);
                dec = std::max(dec, std::abs(w.W_q - w.W_c - w.W_th));
                we = std::max(we, std::abs(w.W_q - (kinetic_energy(s, t) - K0)));
            }
        }
        return Verdict{dec <= 1e-12 && we <= 1e-12,
                       "200 scenarios x 101 times: |W_q - W_c - W_th| " + sci(dec) + ", |W_q - dK_q| " + sci(we)};
    });

    auto classical_limit = [&] {
        double dev = 0.0;
        for (const auto& d : {uo, oo}) {
            const auto s = preset(d, 0.0);
            for (double t : figure_taus(s)) dev = std::max(dev, std::abs(quantum_work(s, t).W_q - classical_work(s, t)));
        }
        return dev;
    };

    criterion("3", "classical limit at theta = 0", 1.0, [&] {
        const double dev = classical_limit();
        return Verdict{dev <= 1e-12, "UO and OO over omega t in [0,10]: max |W_q - W_cl| " + sci(dev)};
    });

    criterion("4", "centroid work equals classical work", 10.0, [] {
        std::mt19937_64 rng(4);
        double dev = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto s = materialize(random_params(rng));
            for (double t : figure_taus(s, 100)) dev = std::max(dev, std::abs(quantum_work(s, t).W_c - classical_work(s, t)));
        }
        return Verdict{dev <= 1e-12, "200 scenarios, theta in [0,1]: max |W_c - W_cl| " + sci(dev)};
    });

    criterion("5", "quantum-Liouville correspondence", 10.0, [&] {
        std::string detail;
        bool ok = true;
        for (const auto& [name, d] : {std::pair{"UO", uo}, std::pair{"OO", oo}}) {
            for (double th : {0.1, 1.0}) {
                const auto s = preset(d, th);
                std::vector<double> taus;
                for (double t : figure_taus(s))
                    if (t <= kQuantumTauMax) taus.push_back(t);
                const auto rep = correspondence_check(s, taus, 1e-10);
                const double worst = std::max({rep.max_dev_v2, rep.max_dev_v_sq, rep.max_dev_var});
                ok = ok && rep.ok();
                detail += std::string(detail.empty() ? "" : ", ") + name + " theta=" + (th == 1.0 ? "1" : "0.1") +
                          " tau<=" + sci(taus.back()) + ": " + sci(worst);
            }
        }
        return Verdict{ok, detail + " (tol 1e-10)"};
    });

    criterion("6", "mixed-state limits", 1.0, [&] {
        const auto s = preset(uo, 1.0);
        const auto mix = make_mu_state(s, 50.0), sup = make_mu_state(s, 0.0);
        double lim = 0.0, tr = 0.0;
        bool smaller = true;
        for (double t : figure_taus(s)) {
            const double wq = quantum_work(s, t).W_q;
            const double wm = mu_work(mix, s, t).W_q;
            lim = std::max(lim, std::abs(wm - wq));
            tr = std::max(tr, std::abs(mu_kinetic_scaled(sup, s, t) - mu_kinetic_from_traces(sup, s, t)));
            if (t > 0.0 && !(std::abs(mu_work(sup, s, t).W_q) < std::abs(wm))) smaller = false;
        }
        const bool ok = lim <= std::exp(-50.0) + 1e-12 && tr <= 1e-10 && smaller;
        return Verdict{ok, "mu=50 vs Gaussian " + sci(lim) + ", mu=0 closed form vs traces " + sci(tr) +
                               ", superposition loses less energy: " + (smaller ? "yes" : "no")};
    });

    criterion("7a", "RK4 vs classical closed forms", 0.0, [] {
        double dev = 0.0;
        for (double r : {0.1, 1.0, 10.0}) {
            for (double eps : {0.0, 0.5}) {
                const auto s = materialize({r, eps, 0.5, 0.0, 1.0});
                const double dt = 1e-3 / std::max(1.0, r);
                const double scale = position_scale_value(s);
                for (const auto& q : rk4_classical(s, s.init.x0, s.init.p0, 10.0, dt, static_cast<int>(0.1 / dt))) {
                    const auto pt = classical_point(s, q.tau);
                    const double x = pt.x_over_scale * scale;
                    const double e = 0.5 * s.phys.k0 * x * x + 0.5 * s.phys.m0 * pt.v * pt.v;
                    const double err = 0.5 * s.phys.k0 * (q.x - x) * (q.x - x) +
                                       0.5 * s.phys.m0 * (q.v - pt.v) * (q.v - pt.v);
                    dev = std::max(dev, std::sqrt(err / e));
                }
            }
        }
        return Verdict{dev <= 1e-8, "omega/lambda in {0.1,1,10}, tau in [0,10]: max relative deviation " + sci(dev)};
    });

    auto cn_vs_closed = [](const Scenario& s, const CnReferee& ref, const std::vector<double>& taus) {
        double dev = 0.0;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            const auto g = evolved_gaussian(s, taus[k]);
            const CnObservables cf{taus[k], 1.0, g.mean_x, g.mean_x2, g.mean_p, g.mean_p2, 0.0};
            const auto& o = ref.obs[k];
            dev = std::max(dev, cn_relative_error(o, cf));
            dev = std::max(dev, relerr(o.mean_x2 - o.mean_x * o.mean_x, g.var_x));
            dev = std::max(dev, relerr(o.mean_p2 - o.mean_p * o.mean_p, g.var_p));
        }
        return dev;
    };

    double cn_seconds = 0.0;
    criterion("7b", "Crank-Nicolson vs closed forms, UO over omega t in [0,10]", 300.0, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = preset(uo, 0.1);
        std::vector<double> taus;
        for (int i = 1; i <= 20; ++i) taus.push_back(tau_from_omega_t(s, 0.5 * i));
        const auto ref = crank_nicolson_referee(s, suggest_grid(s, 4096, 1e-4), taus);
        const double self = std::max(ref.time_convergence, ref.space_convergence);
        const double dev = cn_vs_closed(s, ref, taus);
        cn_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return Verdict{self <= 1e-6 && dev <= 1e-4 && ref.norm_drift <= 1e-10,
                       "self-convergence " + sci(self) + ", norm drift " + sci(ref.norm_drift) +
                           ", max deviation " + sci(dev) + " (tol 1e-4)"};
    });

    criterion("7c", "Crank-Nicolson vs closed forms, OO over omega t in [0,10]", 300.0, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = preset(oo, 0.1);
        const auto grid = suggest_grid(s, 16384, 1e-2);
        // largest horizon on which the referee still meets its own standard
        std::vector<double> taus{0.5, 1.0, 1.5, 2.0};
        const auto ref = crank_nicolson_referee(s, grid, taus);
        const double self = std::max(ref.time_convergence, ref.space_convergence);
        const double dev = cn_vs_closed(s, ref, taus);
        std::string beyond;
        try {
            const auto far = crank_nicolson_referee(s, grid, {4.0});
            beyond = "at tau=4 self-convergence " + sci(std::max(far.time_convergence, far.space_convergence)) +
                     ", deviation " + sci(cn_vs_closed(s, far, {4.0}));
        } catch (const std::exception& e) {
            beyond = std::string("at tau=4 the propagation aborts (") + e.what() + ")";
        }
        cn_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double need = tau_from_omega_t(s, 10.0);
        std::string detail = "verified to omega t=" + sci(omega_t_from_tau(s, taus.back())) +
                             " (tau=2): self-convergence " + sci(self) + ", deviation " + sci(dev) + "; " + beyond +
                             "; the range needs tau=" + sci(need) +
                             ", where the canonical momentum spread grows like exp(2 tau) past any desk-scale grid "
                             "and the closed forms leave their tau<=20 domain";
        return Verdict{false, detail};
    });

    criterion("7d", "Monte Carlo (N=1e6) vs Liouville moments", 120.0, [&] {
        double worst = 0.0;
        for (const auto& d : {uo, oo}) {
            const auto s = preset(d, 0.1);
            for (bool mixed : {false, true}) {
                const auto e = matching_ensemble(s, mixed);
                const SamplerEnsemble se{e.x_center, e.p_center, e.sigma_x0, e.sigma_p0, mixed};
                const double dt = 1e-3 / std::max(1.0, d.omega_over_lambda);
                for (const auto& m : monte_carlo_liouville(se, s, 1000000, 20240501, {0.5, 1.0, 2.0}, dt)) {
                    const auto r = liouville_moments(e, s, m.tau);
                    worst = std::max(worst, std::abs(m.mean_v2 - r.mean_v2) / m.se_mean_v2);
                    worst = std::max(worst, std::abs(m.mean_v - r.mean_v) / m.se_mean_v);
                }
            }
        }
        return Verdict{worst <= 5.0, "UO and OO, both ensembles, tau in {0.5,1,2}: worst " + sci(worst) + " SE (tol 5)"};
    });
    std::printf("      Crank-Nicolson wall time %.1f s (budget 300 s)\n", cn_seconds);

    criterion("8", "figure regression", 0.0, [] {
        const auto base = fs::temp_directory_path() / "ckwork_acceptance";
        fs::remove_all(base);
        bool same = true;
        for (const auto& id : cli::figure_ids()) {
            for (const char* run : {"a", "b"}) {
                auto kv = cli::figure_defaults(id);
                kv["out"] = (base / run).string();
                cli::run_figure(id, cli::resolve(kv));
            }
        }
        int files = 0;
        for (const auto& f : fs::directory_iterator(base / "a")) {
            ++files;
            if (slurp(f.path()) != slurp(base / "b" / f.path().filename())) same = false;
        }
        const auto meta = nlohmann::json::parse(slurp(base / "a" / "figure_4.5_UO.json"));
        const double wcl = meta["asymptotes"]["W_cl"], wq = meta["asymptotes"]["W_q"];
        const bool asym = std::abs(wcl + 1.0) <= 1e-12 && std::abs(wq + 1.05) <= 1e-12;
        return Verdict{same && asym && files == 16,
                       std::to_string(files) + " files byte-identical: " + (same ? "yes" : "no") +
                           "; W_cl(inf) " + sci(wcl) + ", W_q(inf) " + sci(wq)};
    });

    criterion("9", "Alicki mismatch at theta = 0", 1.0, [&] {
        const auto s = preset(uo, 0.0);
        double gap = 0.0;
        for (double t : figure_taus(s)) gap = std::max(gap, std::abs(alicki_work_heat(s, t).W_ak - classical_work(s, t)));
        const double lim = classical_limit();
        return Verdict{gap > 0.1 && lim <= 1e-12,
                       "max |W_ak - W_cl| " + sci(gap) + " (> 0.1), while max |W_q - W_cl| " + sci(lim)};
    });

    std::printf("%d criterion line(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
