// Closed-form high-frequency ansatz S_A for each equation, with exact
// analytic derivatives. The mBO phase parameters a and B are derived from
// (A, c); mKdV carries a second-order xi^{-3} correction term.
#pragma once

#include "ssp/cutoff.hpp"
#include "ssp/equations.hpp"

namespace ssp {

struct AnsatzParams {
    Equation equation = Equation::KDV4;
    cplx A{0.0, 0.0};
    cplx c{0.0, 0.0};   // real for mBO
    double a = 0.0;     // mBO log-phase rate
    cplx B{0.0, 0.0};   // mBO oscillatory correction amplitude
    double smallness_threshold = 0.1;
};

/// mBO phase parameters: a = (12|A|^2 + 3|c|^2)/(8 pi), B = 3 sqrt(3) i A^3 / (8 pi).
inline std::pair<double, cplx> mbo_phase_params(cplx A, double c) {
    double a = (12.0 * std::norm(A) + 3.0 * c * c) / (8.0 * pi);
    cplx B = 3.0 * std::sqrt(3.0) * iu * A * A * A / (8.0 * pi);
    return {a, B};
}

inline AnsatzParams make_ansatz(Equation eq, cplx A, cplx c, double threshold = 0.1) {
    AnsatzParams p;
    p.equation = eq;
    p.A = A;
    p.c = c;
    p.smallness_threshold = threshold;
    if (std::abs(A) > threshold)
        throw config_error("ansatz amplitude |A| exceeds the smallness threshold");
    if (eq == Equation::MBO) {
        auto [a, B] = mbo_phase_params(A, c.real());
        p.a = a;
        p.B = B;
    }
    return p;
}

namespace detail {

// mKdV log-phase rate nu = (3/4pi)|A|^2 and the coefficient of the xi^{-3}
// correction, 3 i |A|^2 A e^{-i nu log 3} / (16 sqrt(2) pi).
inline double mkdv_nu(cplx A) { return 3.0 * std::norm(A) / (4.0 * pi); }

inline cplx mkdv_second_coeff(cplx A) {
    double nu = mkdv_nu(A);
    return 3.0 * iu * std::norm(A) * A / (16.0 * std::sqrt(2.0) * pi) * expi(-nu * std::log(3.0));
}

struct SPair {
    cplx value, deriv;
};

inline SPair ansatz_pos(const AnsatzParams& p, double xi) {
    // value and derivative for xi > 0 (caller handles reflection)
    switch (p.equation) {
        case Equation::KDV4:
            return {p.A * chi(xi), p.A * chi_prime(xi)};
        case Equation::MBO: {
            if (xi <= 0.5) return {{0, 0}, {0, 0}};
            double lg = std::log(xi);
            cplx lead = p.A * expi(p.a * lg);
            cplx osc = p.B * expi(2.0 * xi * xi / 3.0 + 3.0 * p.a * lg) / (xi * xi);
            cplx lead_d = lead * (iu * p.a / xi);
            cplx osc_d = osc * (4.0 * iu * xi / 3.0 + (3.0 * iu * p.a - 2.0) / xi);
            double c0 = chi(xi), c1 = chi_prime(xi);
            return {(lead + osc) * c0, (lead_d + osc_d) * c0 + (lead + osc) * c1};
        }
        case Equation::MKDV: {
            if (xi <= 0.5) return {{0, 0}, {0, 0}};
            double nu = mkdv_nu(p.A), lg = std::log(xi);
            cplx L = expi(-nu * lg);
            cplx C = mkdv_second_coeff(p.A) * expi(-2.0 * nu * lg - 8.0 * cube(xi) / 9.0) /
                     cube(xi);
            cplx Cd = C * (-(3.0 + 2.0 * iu * nu) / xi - 8.0 * iu * xi * xi / 3.0);
            cplx inner = p.A + C;
            cplx val = L * inner;
            cplx val_d = L * (-iu * nu / xi) * inner + L * Cd;
            double c0 = chi(xi), c1 = chi_prime(xi);
            return {val * c0, val_d * c0 + val * c1};
        }
        default: {  // NLS, handled for either sign by eval_ansatz directly
            return {{0, 0}, {0, 0}};
        }
    }
}

}  // namespace detail

/// S_A(xi). Real-valued equations use S(-xi) = conj S(xi); the NLS ansatz
/// carries the same log-phase on both branches (see README notes on the
/// modified-scattering matching) and is evaluated directly.
inline cplx eval_ansatz(const AnsatzParams& p, double xi) {
    if (p.equation == Equation::NLS) {
        double cut = chi(xi) + chi(-xi);
        if (cut == 0.0) return {0, 0};
        double beta = std::norm(p.A) / (2.0 * pi);
        return p.A * expi(-beta * std::log(std::abs(xi))) * cut;
    }
    if (xi == 0.0) return {0, 0};
    if (xi > 0.0) return detail::ansatz_pos(p, xi).value;
    return std::conj(detail::ansatz_pos(p, -xi).value);
}

inline cplx eval_ansatz_deriv(const AnsatzParams& p, double xi) {
    if (p.equation == Equation::NLS) {
        if (std::abs(xi) <= 0.5) return {0, 0};
        double beta = std::norm(p.A) / (2.0 * pi);
        cplx ph = expi(-beta * std::log(std::abs(xi)));
        double cut = chi(xi) + chi(-xi);
        double cut_d = chi_prime(xi) - chi_prime(-xi);
        return p.A * ph * (cut_d + cut * (-iu * beta / xi));
    }
    if (xi == 0.0) return {0, 0};
    if (xi > 0.0) return detail::ansatz_pos(p, xi).deriv;
    // d/dxi conj(S(-xi)) = -conj(S'(-xi))
    return -std::conj(detail::ansatz_pos(p, -xi).deriv);
}

}  // namespace ssp
