// Complex error function (power series + Lentz continued fraction for the
// incomplete gamma tail) and the quadratic-phase antiderivative
// F(alpha; u) = int_0^u e^{i alpha t^2} dt built on it.
#pragma once

#include "ssp/common.hpp"

namespace ssp {

namespace detail {

/// Stable (non-alternating) series: erf(z) = (2/sqrt(pi)) e^{-z^2}
/// sum_n z^{2n+1} 2^n / (1*3*...*(2n+1)). Good for |z| <~ 4.
inline cplx erf_series(cplx z) {
    cplx z2 = z * z;
    cplx term = z, sum = z;
    for (int n = 1; n < 160; ++n) {
        term *= 2.0 * z2 / double(2 * n + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 / std::sqrt(pi) * std::exp(-z2) * sum;
}

/// Continued fraction for Gamma(1/2, x) (modified Lentz), Re-branch safe for
/// |arg x| < pi. erfc(z) = Gamma(1/2, z^2)/sqrt(pi), Re z > 0.
inline cplx gamma_half_cf(cplx x) {
    const double tiny = 1e-300;
    const double a = 0.5;
    cplx b = x + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 400; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x) * std::sqrt(x) * h;
}

}  // namespace detail

inline cplx cerf(cplx z) {
    if (z.real() < 0.0) return -cerf(-z);
    if (std::abs(z) <= 3.6) return detail::erf_series(z);
    return 1.0 - detail::gamma_half_cf(z * z) / std::sqrt(pi);
}

inline cplx cerfc(cplx z) { return 1.0 - cerf(z); }

/// F(alpha; u) = int_0^u e^{i alpha t^2} dt for real alpha != 0, real u.
inline cplx fresnel_F(double alpha, double u) {
    // q = sqrt(-i alpha) with Re q > 0
    double r = std::sqrt(std::abs(alpha));
    cplx q = (alpha > 0) ? r * expi(-pi / 4.0) : r * expi(pi / 4.0);
    return std::sqrt(pi) / (2.0 * q) * cerf(q * u);
}

}  // namespace ssp
