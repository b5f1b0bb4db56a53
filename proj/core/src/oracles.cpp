#include "ckwork/oracles.hpp"

#include "ckwork/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace ckw {

namespace {

struct Phase {
    double x, v;
};

// x' = v, v' = -2 lambda v - omega^2 x in physical time.
Phase rk4_step(const PhysicalParams& ph, Phase s, double h) {
    const double l2 = 2.0 * ph.lambda, w2 = ph.omega * ph.omega;
    auto f = [&](const Phase& q) { return Phase{q.v, -l2 * q.v - w2 * q.x}; };
    const Phase k1 = f(s);
    const Phase k2 = f({s.x + 0.5 * h * k1.x, s.v + 0.5 * h * k1.v});
    const Phase k3 = f({s.x + 0.5 * h * k2.x, s.v + 0.5 * h * k2.v});
    const Phase k4 = f({s.x + h * k3.x, s.v + h * k3.v});
    return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

Rk4Sample make_sample(const Scenario& s, double t, const Phase& q) {
    const auto& ph = s.phys;
    return {t * s.rate(), q.x, q.v, ph.m0 * q.v * std::exp(2.0 * ph.lambda * t)};
}

Phase integrate(const Scenario& s, Phase q, double t_end, std::size_t n) {
    const double h = t_end / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) q = rk4_step(s.phys, q, h);
    return q;
}

std::size_t step_count(double span, double dt) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt - 1e-9)));
}

} // namespace

std::vector<Rk4Sample> rk4_classical(const Scenario& s, double x0, double p0, double tau_end,
                                     double dt, int stride) {
    const auto& ph = s.phys;
    const double rate = s.rate();
    const double h = dt / rate;
    if (!(dt > 0.0) || h * std::max(ph.lambda, ph.omega) > 1e-3 * (1.0 + 1e-12))
        throw DomainError("rk4 step exceeds 1e-3 of the fastest time scale");
    const double t_end = tau_end / rate;
    const std::size_t n = step_count(t_end, h);
    const double hh = t_end / static_cast<double>(n);
    Phase q{x0, p0 / ph.m0};
    std::vector<Rk4Sample> out;
    out.push_back(make_sample(s, 0.0, q));
    for (std::size_t i = 1; i <= n; ++i) {
        q = rk4_step(ph, q, hh);
        if (!std::isfinite(q.x) || !std::isfinite(q.v)) throw StepRejected("rk4 produced a non-finite state");
        if (i == n || (stride > 0 && i % static_cast<std::size_t>(stride) == 0))
            out.push_back(make_sample(s, hh * static_cast<double>(i), q));
    }
    return out;
}

Rk4Sample rk4_final(const Scenario& s, double x0, double p0, double tau_end, double dt) {
    const double t_end = tau_end / s.rate();
    const std::size_t n = step_count(tau_end, dt);
    const Phase q = integrate(s, {x0, p0 / s.phys.m0}, t_end, n);
    if (!std::isfinite(q.x) || !std::isfinite(q.v)) throw StepRejected("rk4 produced a non-finite state");
    return make_sample(s, t_end, q);
}

double rk4_convergence_ratio(const Scenario& s, double tau_end, double dt) {
    const double x0 = s.init.x0, p0 = s.init.p0;
    const double e1 = rk4_final(s, x0, p0, tau_end, dt).v;
    const double e2 = rk4_final(s, x0, p0, tau_end, dt / 2).v;
    const double e4 = rk4_final(s, x0, p0, tau_end, dt / 4).v;
    return (e1 - e2) / (e2 - e4);
}

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12, &err, &l1);
    if (!std::isfinite(v) || err > abs_tol)
        throw QuadratureFailure("adaptive quadrature missed its tolerance (error " + std::to_string(err) + ")");
    return v;
}

// ---------------------------------------------------------------------------

std::vector<MomentEstimate> monte_carlo_liouville(const SamplerEnsemble& ens, const Scenario& s,
                                                  std::size_t n_samples, std::uint64_t seed,
                                                  const std::vector<double>& taus, double dt) {
    if (n_samples < 10000) throw DomainError("monte carlo needs at least 1e4 samples");
    const double m = s.phys.m0;

    // The flow is linear, so the RK4 map of each sample is the RK4 map of the
    // basis states applied to that sample.
    struct Map {
        double vx, vv;
    };
    std::vector<Map> maps;
    for (double tau : taus) {
        const double t = tau / s.rate();
        const std::size_t n = step_count(tau, dt);
        const Phase ex = integrate(s, {1.0, 0.0}, t, n);
        const Phase ev = integrate(s, {0.0, 1.0}, t, n);
        maps.push_back({ex.v, ev.v});
    }

    const std::size_t nt = taus.size();
    constexpr std::size_t kChunk = 1 << 16;
    const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> sums(n_chunks, std::vector<double>(4 * nt, 0.0));

    auto run_chunk = [&](std::size_t c) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(c)};
        std::mt19937_64 gen(sq);
        std::normal_distribution<double> nx(0.0, ens.sigma_x), np(0.0, ens.sigma_p);
        std::bernoulli_distribution coin(0.5);
        const std::size_t begin = c * kChunk, end = std::min(n_samples, begin + kChunk);
        auto& acc = sums[c];
        for (std::size_t i = begin; i < end; ++i) {
            double sgn = 1.0;
            if (ens.mixed && coin(gen)) sgn = -1.0;
            const double x0 = sgn * ens.x_center + nx(gen);
            const double v0 = (sgn * ens.p_center + np(gen)) / m;
            for (std::size_t k = 0; k < nt; ++k) {
                const double v = maps[k].vx * x0 + maps[k].vv * v0;
                acc[4 * k] += v;
                acc[4 * k + 1] += v * v;
                acc[4 * k + 2] += v * v * v * v;
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < hw; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < n_chunks; c += hw) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<MomentEstimate> out;
    const double N = static_cast<double>(n_samples);
    for (std::size_t k = 0; k < nt; ++k) {
        double s1 = 0, s2 = 0, s4 = 0;
        for (const auto& acc : sums) {
            s1 += acc[4 * k];
            s2 += acc[4 * k + 1];
            s4 += acc[4 * k + 2];
        }
        const double mv = s1 / N, mv2 = s2 / N, mv4 = s4 / N;
        const double var1 = std::max(0.0, mv2 - mv * mv), var2 = std::max(0.0, mv4 - mv2 * mv2);
        out.push_back({taus[k], mv, std::sqrt(var1 / (N - 1.0)), mv2, std::sqrt(var2 / (N - 1.0))});
    }
    return out;
}

// ---------------------------------------------------------------------------

GridSpec suggest_grid(const Scenario& s, std::size_t n_points, double dt) {
    require_quantum(s);
    const double k0 = s.phys.k0, E0 = s.dim.E0, e0 = s.dim.theta * s.dim.E0;
    // Mechanical energy of the mean and of the fluctuations never grows.
    const double reach = std::sqrt(2.0 * E0 / k0) + 7.5 * std::sqrt(2.0 * e0 / k0);
    GridSpec g;
    g.padding = 0.05;
    const double half = reach / (1.0 - 2.0 * g.padding);
    g.x_min = -half;
    g.x_max = half;
    g.n_points = n_points;
    g.dt = dt;
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    const double dx = (g.x_max - g.x_min) / static_cast<double>(g.n_points);
    std::vector<double> x(g.n_points);
    for (std::size_t j = 0; j < g.n_points; ++j) x[j] = g.x_min + dx * static_cast<double>(j);
    return x;
}

double grid_norm(const GridSpec& g, const std::vector<cplx>& psi) {
    const double dx = (g.x_max - g.x_min) / static_cast<double>(g.n_points);
    double n = 0.0;
    for (const auto& z : psi) n += std::norm(z);
    return n * dx;
}

std::vector<cplx> initial_wave(const Scenario& s, const GridSpec& g, const InitialWave& w) {
    require_quantum(s);
    const double x0 = s.init.x0, p0 = s.init.p0, d2 = s.init.delta_x0 * s.init.delta_x0;
    const double hb = s.phys.hbar;
    const double amp = std::pow(2.0 * std::numbers::pi * d2, -0.25);
    auto psi0 = [&](double x) {
        const double dx = x - x0;
        return amp * std::exp(cplx(-dx * dx / (4.0 * d2), p0 * x / hb));
    };
    const auto x = grid_points(g);
    std::vector<cplx> psi(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        psi[j] = psi0(x[j]);
        if (w.kind == InitialWave::Kind::parity_pair) psi[j] += w.sign * psi0(-x[j]);
    }
    return psi;
}

namespace {

class Propagator {
public:
    Propagator(const Scenario& s, const GridSpec& g)
        : s_(s), g_(g), n_(g.n_points), x_(grid_points(g)), dx_((g.x_max - g.x_min) / static_cast<double>(n_)),
          lo_(n_), di_(n_), up_(n_), rhs_(n_), cp_(n_), fft_(n_) {
        if (n_ < 1024) throw GridTooSmall("grid needs at least 1024 points");
        plan_ = fftw_plan_dft_1d(static_cast<int>(n_), reinterpret_cast<fftw_complex*>(fft_.data()),
                                 reinterpret_cast<fftw_complex*>(fft_.data()), FFTW_FORWARD, FFTW_ESTIMATE);
        half_x2_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) half_x2_[j] = 0.5 * x_[j] * x_[j];
        const double width = g.x_max - g.x_min;
        pad_lo_ = g.x_min + g.padding * width;
        pad_hi_ = g.x_max - g.padding * width;
    }
    ~Propagator() { fftw_destroy_plan(plan_); }
    Propagator(const Propagator&) = delete;
    Propagator& operator=(const Propagator&) = delete;

    const std::vector<double>& x() const { return x_; }

    // One step over [t, t+h] of physical time with coefficients frozen at the midpoint.
    void step(std::vector<cplx>& psi, double t, double h) {
        const auto& ph = s_.phys;
        const double tm = t + 0.5 * h;
        const double a = ph.hbar * ph.hbar * std::exp(-2.0 * ph.lambda * tm) / (2.0 * ph.m0) / (dx_ * dx_);
        const double kt = ph.k0 * std::exp(2.0 * ph.lambda * tm);
        const double delta = h / (2.0 * ph.hbar);
        constexpr double mo = 1.0 / 12.0, md = 10.0 / 12.0;
        const cplx id(0.0, delta);

        auto V = [&](std::size_t j) { return kt * half_x2_[j]; };
        for (std::size_t j = 0; j < n_; ++j) {
            const cplx hl = j > 0 ? cplx(-a + mo * V(j - 1)) : 0.0;
            const cplx hd = 2.0 * a + md * V(j);
            const cplx hu = j + 1 < n_ ? cplx(-a + mo * V(j + 1)) : 0.0;
            lo_[j] = (j > 0 ? mo : 0.0) + id * hl;
            di_[j] = md + id * hd;
            up_[j] = (j + 1 < n_ ? mo : 0.0) + id * hu;
            cplx r = (md - id * hd) * psi[j];
            if (j > 0) r += (mo - id * hl) * psi[j - 1];
            if (j + 1 < n_) r += (mo - id * hu) * psi[j + 1];
            rhs_[j] = r;
        }
        // Thomas algorithm
        cp_[0] = up_[0] / di_[0];
        rhs_[0] /= di_[0];
        for (std::size_t j = 1; j < n_; ++j) {
            const cplx inv = 1.0 / (di_[j] - lo_[j] * cp_[j - 1]);
            cp_[j] = up_[j] * inv;
            rhs_[j] = (rhs_[j] - lo_[j] * rhs_[j - 1]) * inv;
        }
        psi[n_ - 1] = rhs_[n_ - 1];
        for (std::size_t j = n_ - 1; j-- > 0;) psi[j] = rhs_[j] - cp_[j] * psi[j + 1];
    }

    double outside(const std::vector<cplx>& psi) const {
        double out = 0.0, tot = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double p = std::norm(psi[j]);
            tot += p;
            if (x_[j] < pad_lo_ || x_[j] > pad_hi_) out += p;
        }
        return out / tot;
    }

    CnObservables observe(const std::vector<cplx>& psi, double tau) {
        CnObservables o;
        o.tau = tau;
        double n0 = 0, n1 = 0, n2 = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double p = std::norm(psi[j]);
            n0 += p;
            n1 += p * x_[j];
            n2 += p * x_[j] * x_[j];
        }
        o.norm = n0 * dx_;
        o.mean_x = n1 / n0;
        o.mean_x2 = n2 / n0;
        std::copy(psi.begin(), psi.end(), fft_.begin());
        fftw_execute(plan_);
        const double dk = 2.0 * std::numbers::pi / (dx_ * static_cast<double>(n_));
        double q0 = 0, q1 = 0, q2 = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double k = dk * (j < n_ / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n_));
            const double p = std::norm(fft_[j]);
            q0 += p;
            q1 += p * k;
            q2 += p * k * k;
        }
        const double hb = s_.phys.hbar;
        o.mean_p = hb * q1 / q0;
        o.mean_p2 = hb * hb * q2 / q0;
        o.outside = outside(psi);
        return o;
    }

private:
    const Scenario& s_;
    GridSpec g_;
    std::size_t n_;
    std::vector<double> x_, half_x2_;
    double dx_, pad_lo_ = 0, pad_hi_ = 0;
    std::vector<cplx> lo_, di_, up_, rhs_, cp_, fft_;
    fftw_plan plan_;
};

constexpr double kOutsideTol = 1e-12;

CnRun run_cn(const Scenario& s, const GridSpec& g, const std::vector<double>& taus, const InitialWave& w,
             bool keep_psi, bool normalize, std::size_t mult) {
    require_quantum(s);
    if (!std::is_sorted(taus.begin(), taus.end()) || (!taus.empty() && taus.front() < 0.0))
        throw DomainError("snapshot times must be sorted and non-negative");
    Propagator prop(s, g);
    auto psi = initial_wave(s, g, w);
    if (normalize) {
        const double nrm = std::sqrt(grid_norm(g, psi));
        for (auto& z : psi) z /= nrm;
    }
    CnRun run;
    run.x = prop.x();
    const double rate = s.rate();
    double tau = 0.0;
    auto check = [&](double out, double at) {
        if (out > kOutsideTol)
            throw GridTooSmall("wavepacket left the box at tau = " + std::to_string(at) +
                               " (outside probability " + std::to_string(out) + ")");
    };
    for (double target : taus) {
        const std::size_t n = step_count(target - tau, g.dt) * mult;
        const double h = (target - tau) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            prop.step(psi, (tau + h * static_cast<double>(i)) / rate, h / rate);
            if ((i & 1023u) == 1023u) check(prop.outside(psi), tau + h * static_cast<double>(i + 1));
        }
        tau = target;
        auto o = prop.observe(psi, tau);
        check(o.outside, tau);
        run.obs.push_back(o);
        if (keep_psi) run.psi.push_back(psi);
    }
    return run;
}

CnObservables richardson(const CnObservables& coarse, const CnObservables& fine) {
    auto r = [](double c, double f) { return (4.0 * f - c) / 3.0; };
    CnObservables o = fine;
    o.mean_x = r(coarse.mean_x, fine.mean_x);
    o.mean_x2 = r(coarse.mean_x2, fine.mean_x2);
    o.mean_p = r(coarse.mean_p, fine.mean_p);
    o.mean_p2 = r(coarse.mean_p2, fine.mean_p2);
    return o;
}

} // namespace

CnRun crank_nicolson(const Scenario& s, const GridSpec& g, const std::vector<double>& taus, const InitialWave& w,
                     bool keep_psi, bool normalize) {
    return run_cn(s, g, taus, w, keep_psi, normalize, 1);
}

double cn_relative_error(const CnObservables& a, const CnObservables& b) {
    const double ex = std::abs(a.mean_x - b.mean_x) / std::sqrt(b.mean_x2);
    const double ex2 = std::abs(a.mean_x2 - b.mean_x2) / b.mean_x2;
    const double ep = std::abs(a.mean_p - b.mean_p) / std::sqrt(b.mean_p2);
    const double ep2 = std::abs(a.mean_p2 - b.mean_p2) / b.mean_p2;
    return std::max({ex, ex2, ep, ep2});
}

CnReferee crank_nicolson_referee(const Scenario& s, const GridSpec& g, const std::vector<double>& taus,
                                 const InitialWave& w) {
    const CnRun r1 = run_cn(s, g, taus, w, false, true, 1);
    const CnRun r2 = run_cn(s, g, taus, w, false, true, 2);
    const CnRun r4 = run_cn(s, g, taus, w, false, true, 4);
    GridSpec g2 = g;
    g2.n_points = 2 * g.n_points;
    const CnRun rs = run_cn(s, g2, taus, w, false, true, 1);

    CnReferee out;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        const auto e1 = richardson(r1.obs[k], r2.obs[k]);
        const auto e2 = richardson(r2.obs[k], r4.obs[k]);
        out.obs.push_back(e2);
        out.time_convergence = std::max(out.time_convergence, cn_relative_error(e1, e2));
        out.space_convergence = std::max(out.space_convergence, cn_relative_error(r1.obs[k], rs.obs[k]));
        if (taus[k] > 0.0)
            out.norm_drift = std::max(out.norm_drift, std::abs(r4.obs[k].norm - 1.0) / taus[k]);
    }
    return out;
}

} // namespace ckw
