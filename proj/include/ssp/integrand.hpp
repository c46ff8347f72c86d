// Common description of the multilinear convolution integrands and the
// independent brute-force reference quadrature (tensor midpoint grid with
// singularity-absorbing substitutions and Richardson extrapolation).
#pragma once

#include <vector>

#include "ssp/cutoff.hpp"
#include "ssp/equations.hpp"

namespace ssp {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;
    double truncation_radius = 1e3;
    int max_panel_depth = 30;
    int oscillation_resolution = 8;  // nodes per phase period

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0)) throw config_error("tolerances must be positive");
        if (oscillation_resolution < 4) throw config_error("oscillation_resolution must be >= 4");
    }
};

/// Factor functions plus the per-equation phase/weight/conjugation pattern.
/// The number of factors must equal the nonlinearity degree.
struct Integrand {
    Equation equation = Equation::KDV4;
    std::vector<cplx_fn> factors;
    double truncation = 50.0;

    int degree() const { return scaling_law(equation).nonlinearity_degree; }

    void validate() const {
        if (static_cast<int>(factors.size()) != degree())
            throw config_error("integrand needs " + std::to_string(degree()) + " factors for " +
                               equation_name(equation));
    }

    /// Oscillatory phase argument: the integrand carries e^{i phase_arg}.
    /// mKdV/4KdV: -(eta^3 - sum eta_j^3); mBO: +(eta|eta| - sum eta_j|eta_j|);
    /// NLS: -(eta^2 - eta1^2 + eta2^2 - eta3^2).
    double phase_arg(double eta, const double* y) const {
        int k = degree();
        double last = eta;
        for (int j = 0; j + 1 < k; ++j) last -= y[j];
        switch (equation) {
            case Equation::MKDV:
            case Equation::KDV4: {
                double s = -cube(eta) + cube(last);
                for (int j = 0; j + 1 < k; ++j) s += cube(y[j]);
                return s;
            }
            case Equation::MBO: {
                double s = eta * std::abs(eta) - last * std::abs(last);
                for (int j = 0; j + 1 < k; ++j) s -= y[j] * std::abs(y[j]);
                return s;
            }
            default: {  // NLS: slots alternate sign, conjugate in slot 2
                double s = -sq(eta) + sq(y[0]) - sq(y[1]) + sq(last);
                return s;
            }
        }
    }

    /// Product of factors (with the conjugation pattern) and singular weights.
    cplx amplitude(double eta, const double* y) const {
        int k = degree();
        double last = eta;
        for (int j = 0; j + 1 < k; ++j) last -= y[j];
        double wexp = scaling_law(equation).weight_exponent;
        cplx prod{1.0, 0.0};
        for (int j = 0; j < k; ++j) {
            double a = (j + 1 < k) ? y[j] : last;
            cplx f = factors[j](a);
            if (equation == Equation::NLS && j == 1) f = std::conj(f);
            if (f == cplx{0.0, 0.0}) return {0, 0};  // avoid 0 * inf at weight poles
            prod *= f;
            if (wexp > 0) {
                if (std::abs(a) < 1e-300) return {0, 0};
                prod *= std::pow(std::abs(a), -wexp);
            }
        }
        return prod;
    }
};

namespace detail {

/// Smooth taper: 1 on [0, 0.8 R], 0 beyond R.
inline double taper(double x, double R) {
    double t = (std::abs(x) - 0.8 * R) / (0.2 * R);
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace detail

/// Non-adaptive tensor-grid reference quadrature. Each integration variable
/// is substituted eta_j = sign(y) |y|^p with p = 1/(1-w) chosen so the
/// singular weight |eta_j|^{-w} d(eta_j) becomes p dy, then a uniform midpoint
/// rule with >= `resolution` nodes per phase period is applied and Richardson
/// extrapolation removes the leading error term. The dependent slot's weight
/// is not substituted; reference comparisons use factors vanishing near 0.
inline cplx oracle_bruteforce(const Integrand& in, double eta, int resolution = 32,
                              int cap_per_dim = 3000) {
    in.validate();
    if (in.truncation > 50.0 + 1e-9)
        throw config_error("oracle_bruteforce: truncation radius must stay <= 50");
    const int d = in.degree() - 1;
    const double w = scaling_law(in.equation).weight_exponent;
    const double p = (w > 0) ? 1.0 / (1.0 - w) : 1.0;  // 3/2 for kdv4, 2 for mbo
    const double R = in.truncation;
    const double Y = std::pow(R, 1.0 / p);

    // phase-rate bound per mapped variable
    double symrate;
    switch (in.equation) {
        case Equation::MKDV:
        case Equation::KDV4: symrate = 3.0 * sq(R * (d + 1.0) + std::abs(eta)); break;
        default: symrate = 2.0 * (R * (d + 1.0) + std::abs(eta)); break;
    }
    double yrate = 2.0 * symrate * (p > 1 ? p * std::pow(Y, p - 1.0) : 1.0);
    long n_est = static_cast<long>(yrate * 2.0 * Y / (2.0 * pi) * resolution) + 24;
    int n = static_cast<int>(std::min<long>(n_est, cap_per_dim));
    n = ((n + 1) / 2) * 2;

    auto pass = [&](long m) -> cplx {
        double h = 2.0 * Y / m;
        long count = 1;
        for (int j = 0; j < d; ++j) count *= m;
        unsigned nb = std::min<unsigned>(thread_budget() * 4, 256);
        std::vector<cplx> partial(nb, cplx{0, 0});
        parallel_for(nb, [&](std::size_t blk) {
            long lo = static_cast<long>(count * double(blk) / nb);
            long hi = static_cast<long>(count * double(blk + 1) / nb);
            if (blk == nb - 1) hi = count;
            cplx acc{0, 0};
            for (long flat = lo; flat < hi; ++flat) {
                long rem = flat;
                double es[3];
                double jac = 1.0;
                bool at_origin = false;
                for (int j = 0; j < d; ++j) {
                    long ij = rem % m;
                    rem /= m;
                    double y = -Y + (ij + 0.5) * h;
                    if (std::abs(y) < 1e-13) at_origin = true;  // jacobian zero
                    if (p > 1) {
                        es[j] = (y >= 0 ? 1.0 : -1.0) * std::pow(std::abs(y), p);
                        jac *= p * std::pow(std::abs(y), p - 1.0);
                    } else {
                        es[j] = y;
                    }
                }
                if (at_origin && p > 1) continue;
                double last = eta;
                for (int j = 0; j < d; ++j) last -= es[j];
                double tp = detail::taper(last, R);
                for (int j = 0; j < d; ++j) tp *= detail::taper(es[j], R);
                if (tp == 0.0) continue;
                acc += in.amplitude(eta, es) * jac * tp * expi(in.phase_arg(eta, es));
            }
            partial[blk] = acc;
        });
        cplx total{0, 0};
        for (auto& q : partial) total += q;
        return total * std::pow(h, d);
    };

    cplx coarse = pass(n / 2);
    cplx fine = pass(n);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace ssp
