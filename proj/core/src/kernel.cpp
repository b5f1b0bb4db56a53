#include "ckwork/kernel.hpp"

#include "ckwork/errors.hpp"

#include <cmath>
#include <string>

namespace ckw {

namespace {
constexpr double kCriticalTol = 1e-12;
constexpr double kLeakTol = 1e-10;
} // namespace

Zeta make_zeta(double omega_over_lambda) {
    Zeta z;
    const double r = omega_over_lambda;
    z.zeta2 = 1.0 - r * r;
    if (std::abs(z.zeta2) < kCriticalTol) {
        z.regime = Regime::critical;
        z.value = 0.0;
    } else if (z.zeta2 > 0.0) {
        z.regime = Regime::overdamped;
        z.value = std::sqrt(z.zeta2);
    } else {
        z.regime = Regime::underdamped;
        z.value = cplx(0.0, std::sqrt(-z.zeta2));
    }
    return z;
}

GammaVector gamma(const Zeta& z, double tau) {
    if (z.regime == Regime::critical) return {1.0, tau, tau * tau};
    const cplx a = z.value * tau;
    const cplx ch = std::cosh(a), sh = std::sinh(a);
    return {ch * ch, sh * ch, sh * sh};
}

GammaVector scaled_gamma(const Zeta& z, double tau, int sign) {
    if (z.regime == Regime::overdamped && sign < 0) {
        // exp(-tau) cosh, exp(-tau) sinh from decaying exponentials only
        const double zr = z.value.real();
        const double a = std::exp((zr - 1.0) * tau), b = std::exp(-(zr + 1.0) * tau);
        const double c = 0.5 * (a + b), s = 0.5 * (a - b);
        return {c * c, s * c, s * s};
    }
    const double f = std::exp(2.0 * sign * tau);
    GammaVector g = gamma(z, tau);
    return {f * g.g1, f * g.g2, f * g.g3};
}

GammaVector harmonic_gamma(double wt) {
    const double c = std::cos(wt), s = std::sin(wt);
    return {c * c, s * c, s * s};
}

CoefficientVector from_reduced(double r1, double r2, double r3, const Zeta& z) {
    if (z.regime == Regime::critical) return {r1, r2, r3};
    return {r1, r2 / z.value, r3 / (z.value * z.value)};
}

double contract(const CoefficientVector& c, const GammaVector& g) {
    const cplx v = c.c1 * g.g1 + c.c2 * g.g2 + c.c3 * g.g3;
    if (std::abs(v.imag()) > kLeakTol * std::max(1.0, std::abs(v.real())))
        throw ComplexLeak("contraction left imaginary residue " + std::to_string(v.imag()));
    return v.real();
}

DecayedCS plain_cs(const Zeta& z, double tau) {
    switch (z.regime) {
    case Regime::critical:
        return {1.0, tau};
    case Regime::overdamped: {
        const double zr = z.value.real();
        return {std::cosh(zr * tau), std::sinh(zr * tau) / zr};
    }
    case Regime::underdamped: {
        const double zi = z.value.imag();
        return {std::cos(zi * tau), std::sin(zi * tau) / zi};
    }
    }
    return {1.0, tau};
}

DecayedCS decayed_cs(const Zeta& z, double tau) {
    if (z.regime == Regime::overdamped) {
        const double zr = z.value.real();
        const double a = std::exp((zr - 1.0) * tau), b = std::exp(-(zr + 1.0) * tau);
        return {0.5 * (a + b), 0.5 * (a - b) / zr};
    }
    const double e = std::exp(-tau);
    const DecayedCS p = plain_cs(z, tau);
    return {e * p.c, e * p.s};
}

double plain_c_minus_s(const Zeta& z, double tau) {
    if (z.regime != Regime::overdamped) {
        const DecayedCS p = plain_cs(z, tau);
        return p.c - p.s;
    }
    const double zr = z.value.real();
    return 0.5 * (std::exp(zr * tau) * (zr - 1.0) + std::exp(-zr * tau) * (zr + 1.0)) / zr;
}

double decayed_c_minus_s(const Zeta& z, double tau) {
    if (z.regime != Regime::overdamped) return std::exp(-tau) * plain_c_minus_s(z, tau);
    const double zr = z.value.real();
    return 0.5 * (std::exp((zr - 1.0) * tau) * (zr - 1.0) + std::exp(-(zr + 1.0) * tau) * (zr + 1.0)) / zr;
}

} // namespace ckw
