// Gauss-Legendre rules, Chebyshev-Lobatto nodes with differentiation matrix,
// and a small dense complex solver (for Levin collocation).
#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ssp/common.hpp"

namespace ssp {

struct QuadRule {
    std::vector<double> x, w;  // nodes/weights on [-1,1]
};

namespace detail {

inline QuadRule make_gauss(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

}  // namespace detail

inline const QuadRule& gauss_rule(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::make_gauss(n)).first;
    return it->second;
}

/// Chebyshev-Lobatto nodes on [-1,1], ordered ascending.
inline std::vector<double> lobatto_nodes(int n) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = -std::cos(pi * j / (n - 1));
    x.front() = -1.0;
    x.back() = 1.0;
    return x;
}

/// First-derivative collocation matrix for arbitrary distinct nodes
/// (barycentric form).
inline std::vector<double> diff_matrix(const std::vector<double>& x) {
    int n = static_cast<int>(x.size());
    std::vector<double> wbar(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) wbar[i] /= (x[i] - x[j]);
    std::vector<double> D(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) {
                D[i * n + j] = (wbar[j] / wbar[i]) / (x[i] - x[j]);
                diag -= D[i * n + j];
            }
        D[i * n + i] = diag;
    }
    return D;
}

/// In-place Gaussian elimination with partial pivoting; solves A f = b.
inline bool solve_dense(std::vector<cplx>& A, std::vector<cplx>& b) {
    int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(A[k * n + k]);
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i * n + k]) > best) { best = std::abs(A[i * n + k]); piv = i; }
        if (best < 1e-280) return false;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            cplx m = A[i * n + k] / A[k * n + k];
            for (int j = k; j < n; ++j) A[i * n + j] -= m * A[k * n + j];
            b[i] -= m * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i * n + j] * b[j];
        b[i] = s / A[i * n + i];
    }
    return true;
}

/// Coefficients (monomial, ascending) of the polynomial interpolating
/// (x_i, f_i) for small n, via Lagrange accumulation.
inline std::vector<cplx> poly_interp(const std::vector<double>& x, const std::vector<cplx>& f) {
    int n = static_cast<int>(x.size());
    std::vector<cplx> coeff(n, cplx{0, 0});
    std::vector<double> base(n + 1, 0.0), tmp(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        // build prod_{j != i} (u - x_j) / (x_i - x_j)
        base.assign(n + 1, 0.0);
        base[0] = 1.0;
        double denom = 1.0;
        int deg = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            denom *= (x[i] - x[j]);
            tmp.assign(n + 1, 0.0);
            for (int k = 0; k <= deg; ++k) {
                tmp[k + 1] += base[k];
                tmp[k] -= x[j] * base[k];
            }
            ++deg;
            base = tmp;
        }
        for (int k = 0; k < n; ++k) coeff[k] += f[i] * (base[k] / denom);
    }
    return coeff;
}

}  // namespace ssp
