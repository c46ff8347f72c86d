// The four dispersive models and their scaling data.
#pragma once

#include <string>

#include "ssp/common.hpp"

namespace ssp {

enum class Equation { MKDV, KDV4, MBO, NLS };

/// Per-equation scaling law: dispersion order n, nonlinearity degree k,
/// derivative loss m, the |xi|-power dividing each factor inside the
/// convolution operators, the t-exponent of the self-similar prefactor and
/// the admissible range for the regularity parameter kappa.
struct ScalingLaw {
    int dispersion_order;      // n
    int nonlinearity_degree;   // k
    int derivative_loss;       // m
    double weight_exponent;    // critical Fourier-Lebesgue index s_{c,infty}
    double amplitude_decay;    // t^{-amplitude_decay} prefactor
    double kappa_min, kappa_max, kappa_default;
    bool hermitian;            // real-valued solution, z(-xi) = conj z(xi)
};

inline const ScalingLaw& scaling_law(Equation eq) {
    static const ScalingLaw mkdv{3, 3, 1, 0.0,       1.0 / 3.0, 0.5,       4.0 / 7.0, 0.55, true};
    static const ScalingLaw kdv4{3, 4, 1, 1.0 / 3.0, 2.0 / 9.0, 5.0 / 8.0, 2.0 / 3.0, 0.64, true};
    static const ScalingLaw mbo {2, 3, 1, 0.5,       0.25,      0.0,       0.25,      0.2,  true};
    static const ScalingLaw nls {2, 3, 0, 0.0,       0.5,       0.0,       0.5,       0.3,  false};
    switch (eq) {
        case Equation::MKDV: return mkdv;
        case Equation::KDV4: return kdv4;
        case Equation::MBO: return mbo;
        default: return nls;
    }
}

/// Scaling exponent (n-m)/(k-1) of u -> lambda^s u(lambda^n t, lambda x).
inline double scaling_exponent(Equation eq) {
    const auto& s = scaling_law(eq);
    return double(s.dispersion_order - s.derivative_loss) / double(s.nonlinearity_degree - 1);
}

/// Dispersion symbol P(xi): xi^3 (mKdV, 4KdV), xi|xi| (mBO), xi^2 (NLS).
inline double phase_symbol(Equation eq, double xi) {
    switch (eq) {
        case Equation::MKDV:
        case Equation::KDV4: return xi * xi * xi;
        case Equation::MBO: return xi * std::abs(xi);
        default: return xi * xi;
    }
}

inline double phase_symbol_deriv(Equation eq, double xi) {
    switch (eq) {
        case Equation::MKDV:
        case Equation::KDV4: return 3.0 * xi * xi;
        case Equation::MBO: return 2.0 * std::abs(xi);
        default: return 2.0 * xi;
    }
}

inline std::string equation_name(Equation eq) {
    switch (eq) {
        case Equation::MKDV: return "mkdv";
        case Equation::KDV4: return "kdv4";
        case Equation::MBO: return "mbo";
        default: return "nls";
    }
}

inline Equation equation_from_name(const std::string& s) {
    if (s == "mkdv") return Equation::MKDV;
    if (s == "kdv4") return Equation::KDV4;
    if (s == "mbo") return Equation::MBO;
    if (s == "nls") return Equation::NLS;
    throw config_error("unknown equation '" + s + "' (expected mkdv|kdv4|mbo|nls)");
}

inline void check_kappa(Equation eq, double kappa) {
    const auto& s = scaling_law(eq);
    if (!(kappa > s.kappa_min && kappa < s.kappa_max))
        throw config_error("kappa=" + std::to_string(kappa) + " outside admissible interval (" +
                           std::to_string(s.kappa_min) + ", " + std::to_string(s.kappa_max) +
                           ") for " + equation_name(eq));
}

}  // namespace ssp
