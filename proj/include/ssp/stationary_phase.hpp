// Leading-order stationary phase in d <= 3 dimensions with numerically
// computed Hessian and eigenvalue signature.
#pragma once

#include <array>
#include <vector>

#include "ssp/common.hpp"

namespace ssp {

namespace detail {

/// Jacobi eigenvalue iteration for a small symmetric matrix (d <= 3).
inline std::vector<double> sym_eigenvalues(std::vector<double> m, int d) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off += sq(m[i * d + j]);
        if (off < 1e-28) break;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                double apq = m[p * d + q];
                if (std::abs(apq) < 1e-300) continue;
                double theta = 0.5 * (m[q * d + q] - m[p * d + p]) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < d; ++k) {
                    double akp = m[k * d + p], akq = m[k * d + q];
                    m[k * d + p] = c * akp - s * akq;
                    m[k * d + q] = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    double apk = m[p * d + k], aqk = m[q * d + k];
                    m[p * d + k] = c * apk - s * aqk;
                    m[q * d + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(d);
    for (int i = 0; i < d; ++i) ev[i] = m[i * d + i];
    return ev;
}

}  // namespace detail

/// Leading term of int e^{i lambda phi(x)} psi(x) dx near a nondegenerate
/// critical point x0:
///   (2 pi)^{d/2} e^{i pi/4 sgn} |det D^2 phi|^{-1/2} e^{i lambda phi(x0)}
///      psi(x0) lambda^{-d/2},
/// sgn = (#positive - #negative eigenvalues of D^2 phi(x0)).
inline cplx stationary_phase_leading(const std::function<double(const std::vector<double>&)>& phi,
                                     const std::function<cplx(const std::vector<double>&)>& psi,
                                     const std::vector<double>& x0, double lambda) {
    int d = static_cast<int>(x0.size());
    std::vector<double> H(d * d, 0.0);
    auto hess = [&](int i, int j, double scale) {
        double hi = scale * (1.0 + std::abs(x0[i]));
        double hj = scale * (1.0 + std::abs(x0[j]));
        auto at = [&](double si, double sj) {
            std::vector<double> x = x0;
            x[i] += si * hi;
            x[j] += sj * hj;
            return phi(x);
        };
        if (i == j) return (at(1, 0) - 2.0 * phi(x0) + at(-1, 0)) / (hi * hi);
        return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hi * hj);
    };
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            // Richardson in the step kills the h^2 term, so a genuinely
            // degenerate direction extrapolates to ~0.
            double coarse = hess(i, j, 2e-4), fine = hess(i, j, 1e-4);
            H[i * d + j] = H[j * d + i] = (4.0 * fine - coarse) / 3.0;
        }
    auto ev = detail::sym_eigenvalues(H, d);
    double det = 1.0;
    int sgn = 0;
    for (double e : ev) {
        det *= e;
        sgn += (e > 0) ? 1 : -1;
    }
    if (std::abs(det) < 1e-12) throw numeric_error("stationary_phase_leading: degenerate critical point");
    return std::pow(2.0 * pi, 0.5 * d) * expi(0.25 * pi * sgn) / std::sqrt(std::abs(det)) *
           expi(lambda * phi(x0)) * psi(x0) * std::pow(lambda, -0.5 * d);
}

}  // namespace ssp
