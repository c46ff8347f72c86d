// Weighted sup norms: Z^kappa for the real-valued equations and the
// four-part Y^kappa norm (logarithmic singularity allowed at 0) for NLS.
#pragma once

#include <string>

#include "ssp/profile.hpp"

namespace ssp {

struct NormReport {
    double sup_weighted_value = 0.0;
    double sup_weighted_deriv = 0.0;
    double arg_max_value = 0.0;
    double arg_max_deriv = 0.0;
    double norm_total = 0.0;
};

namespace detail {

inline void check_finite(cplx v, double xi, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw numeric_error(std::string("non-finite ") + what + " sample at node xi=" +
                            std::to_string(xi));
}

inline void fold_side(const FrequencyGrid& g, const std::vector<cplx>& z,
                      const std::vector<cplx>& dz, double kappa, NormReport& r) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        double xi = g.nodes[i];
        check_finite(z[i], xi, "value");
        check_finite(dz[i], xi, "derivative");
        double wv = std::pow(jbr(xi), kappa) * std::abs(z[i]);
        double wd = std::pow(jbr(xi), kappa + 1.0) * std::abs(dz[i]);
        if (wv > r.sup_weighted_value) { r.sup_weighted_value = wv; r.arg_max_value = xi; }
        if (wd > r.sup_weighted_deriv) { r.sup_weighted_deriv = wd; r.arg_max_deriv = xi; }
    }
}

}  // namespace detail

/// Z^kappa report: sup <xi>^k |z| and sup <xi>^{k+1} |z'| over the nodes
/// (mirror images carry the same magnitudes for Hermitian profiles).
inline NormReport weighted_norm_Z(const Profile& p, double kappa) {
    NormReport r;
    detail::fold_side(p.grid, p.z, p.dz, kappa, r);
    if (p.two_sided()) detail::fold_side(p.grid, p.zneg, p.dzneg, kappa, r);
    r.norm_total = r.sup_weighted_value + r.sup_weighted_deriv;
    return r;
}

inline NormReport weighted_norm_Z(const Profile& p) { return weighted_norm_Z(p, p.kappa); }

/// Y^kappa report. Nodes with |xi| >= 1 use the high-frequency weights
/// (the boundary node xi=1 belongs to the high branch). Below 1 the value is
/// weighted by 1/|log xi| and the derivative by |xi|.
inline NormReport weighted_norm_Y(const Profile& p, double kappa) {
    NormReport r;
    auto fold = [&](const std::vector<cplx>& z, const std::vector<cplx>& dz, double sign) {
        for (std::size_t i = 0; i < p.grid.size(); ++i) {
            double xi = p.grid.nodes[i];
            detail::check_finite(z[i], sign * xi, "value");
            detail::check_finite(dz[i], sign * xi, "derivative");
            double wv, wd;
            if (xi >= 1.0) {
                wv = std::pow(jbr(xi), kappa) * std::abs(z[i]);
                wd = std::pow(jbr(xi), kappa + 1.0) * std::abs(dz[i]);
            } else {
                wv = std::abs(z[i]) / std::abs(std::log(xi));
                wd = xi * std::abs(dz[i]);
            }
            if (wv > r.sup_weighted_value) { r.sup_weighted_value = wv; r.arg_max_value = sign * xi; }
            if (wd > r.sup_weighted_deriv) { r.sup_weighted_deriv = wd; r.arg_max_deriv = sign * xi; }
        }
    };
    fold(p.z, p.dz, 1.0);
    if (p.two_sided()) fold(p.zneg, p.dzneg, -1.0);
    r.norm_total = r.sup_weighted_value + r.sup_weighted_deriv;
    return r;
}

inline NormReport weighted_norm_Y(const Profile& p) { return weighted_norm_Y(p, p.kappa); }

/// Norm used by the solver for a given equation (Y for NLS, Z otherwise).
inline NormReport equation_norm(const Profile& p, double kappa) {
    return p.two_sided() ? weighted_norm_Y(p, kappa) : weighted_norm_Z(p, kappa);
}

/// Distance between two profiles on the same grid, measured in the
/// equation norm with regularity `kappa`.
inline double profile_distance(const Profile& a, const Profile& b, double kappa) {
    if (a.grid.size() != b.grid.size())
        throw config_error("profile_distance: mismatched grids");
    Profile d = a;
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        d.z[i] = a.z[i] - b.z[i];
        d.dz[i] = a.dz[i] - b.dz[i];
    }
    if (a.two_sided())
        for (std::size_t i = 0; i < a.grid.size(); ++i) {
            d.zneg[i] = a.zneg[i] - b.zneg[i];
            d.dzneg[i] = a.dzneg[i] - b.dzneg[i];
        }
    return equation_norm(d, kappa).norm_total;
}

}  // namespace ssp
