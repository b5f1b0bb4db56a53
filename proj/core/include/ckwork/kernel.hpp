#pragma once

#include <complex>

namespace ckw {

using cplx = std::complex<double>;

enum class Regime { overdamped, underdamped, critical };

struct Zeta {
    cplx value;
    Regime regime = Regime::overdamped;
    double zeta2 = 1.0;  // 1 - (omega/lambda)^2, always real
};

Zeta make_zeta(double omega_over_lambda);

// Components (cosh^2, sinh*cosh, sinh^2) of zeta*tau. In the critical regime
// the basis is (1, tau, tau^2), i.e. the zeta -> 0 limit of
// (cosh^2, cosh*sinh/zeta, sinh^2/zeta^2); coefficient vectors built with
// from_reduced() absorb the matching powers of zeta.
struct GammaVector {
    cplx g1, g2, g3;
};

GammaVector gamma(const Zeta& z, double tau);

// exp(2*sign*tau) * gamma(z, tau), assembled without overflowing intermediates.
GammaVector scaled_gamma(const Zeta& z, double tau, int sign);

// (cos^2, sin*cos, sin^2) of omega*t for the undamped oscillator.
GammaVector harmonic_gamma(double omega_t);

struct CoefficientVector {
    cplx c1, c2, c3;

    CoefficientVector& operator+=(const CoefficientVector& o) {
        c1 += o.c1; c2 += o.c2; c3 += o.c3;
        return *this;
    }
};

inline CoefficientVector operator+(CoefficientVector a, const CoefficientVector& b) { return a += b; }
inline CoefficientVector operator*(double s, const CoefficientVector& a) {
    return {s * a.c1, s * a.c2, s * a.c3};
}

// (r1, r2/zeta, r3/zeta^2), or (r1, r2, r3) in the critical regime.
CoefficientVector from_reduced(double r1, double r2, double r3, const Zeta& z);

// Re(c . g); throws ComplexLeak when |Im| > 1e-10 * max(1, |Re|).
double contract(const CoefficientVector& c, const GammaVector& g);

// cosh(zeta*tau) and sinh(zeta*tau)/zeta (real in every regime), each times exp(-tau).
struct DecayedCS {
    double c, s;
};
DecayedCS decayed_cs(const Zeta& z, double tau);

// cosh(zeta*tau) and sinh(zeta*tau)/zeta without the decay factor.
DecayedCS plain_cs(const Zeta& z, double tau);

// cosh - sinh/zeta without the cancellation near zeta = 1; plain and times exp(-tau).
double plain_c_minus_s(const Zeta& z, double tau);
double decayed_c_minus_s(const Zeta& z, double tau);

} // namespace ckw
