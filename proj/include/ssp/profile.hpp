// The remainder profile z on a frequency grid: storage for (z, z'), cubic
// interpolation (linear coordinate below 1, logarithmic above), power-law
// tail model beyond far_cut, Hermitian extension for real-valued equations
// and two-sided storage for NLS.
#pragma once

#include <vector>

#include "ssp/equations.hpp"
#include "ssp/grid.hpp"

namespace ssp {

/// Tail model z(xi) ~= anchor * (xi/far_cut)^{-exponent} for xi > far_cut,
/// least-squares fitted on the last decade of |z|.
struct TailFit {
    cplx anchor{0.0, 0.0};
    double exponent = 1.0;
    cplx operator()(double xi, double far) const {
        if (anchor == cplx(0.0, 0.0)) return {0.0, 0.0};
        return anchor * std::pow(xi / far, -exponent);
    }
};

struct Profile {
    Equation equation = Equation::KDV4;
    double kappa = 0.64;
    FrequencyGrid grid;
    std::vector<cplx> z, dz;        // values at +nodes
    std::vector<cplx> zneg, dzneg;  // NLS: values at -nodes (same magnitudes)
    TailFit tail, dtail, tail_neg, dtail_neg;

    bool two_sided() const { return equation == Equation::NLS; }
};

namespace detail {

inline TailFit fit_tail(const FrequencyGrid& g, const std::vector<cplx>& v, double fallback_exp) {
    TailFit f;
    f.anchor = v.back();
    f.exponent = fallback_exp;
    double lo = g.far_cut / 10.0;
    // log|v| vs log xi least squares over the last decade
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = g.lower_bound(lo); i < g.size(); ++i) {
        double a = std::abs(v[i]);
        if (a <= 0.0) continue;
        double x = std::log(g.nodes[i]), y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n >= 4) {
        double denom = n * sxx - sx * sx;
        if (denom > 0) {
            double slope = (n * sxy - sx * sy) / denom;
            if (std::isfinite(slope)) f.exponent = std::min(8.0, std::max(0.05, -slope));
        }
    }
    return f;
}

/// Cubic Hermite on [x0,x1] with values/slopes given in the coordinate t.
inline cplx hermite(double t, double t0, double t1, cplx y0, cplx y1, cplx s0, cplx s1) {
    double h = t1 - t0, u = (t - t0) / h;
    double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * s0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * s1;
}

/// One-sided evaluation on the positive grid. `slope_sign` is -1 when the
/// stored slopes are derivatives w.r.t. the mirrored coordinate (NLS side).
inline cplx eval_side(const Profile& p, const std::vector<cplx>& z, const std::vector<cplx>& dz,
                      const TailFit& tail, double xi, double slope_sign = 1.0) {
    const auto& g = p.grid;
    if (xi >= g.far_cut) return tail(xi, g.far_cut);
    if (xi <= g.nodes.front()) {
        // near-zero extrapolation from the first node
        if (p.two_sided()) {
            // logarithmic behavior allowed near zero
            double t = std::log(std::max(xi, 1e-300)) - std::log(g.nodes.front());
            return z.front() + t * (g.nodes.front() * slope_sign * dz.front());
        }
        return z.front() + (xi - g.nodes.front()) * slope_sign * dz.front();
    }
    std::size_t k = g.lower_bound(xi);
    if (g.nodes[k] == xi) return z[k];
    std::size_t k0 = k - 1;
    double x0 = g.nodes[k0], x1 = g.nodes[k];
    if (x1 <= 1.0 + 1e-15)  // linear coordinate
        return hermite(xi, x0, x1, z[k0], z[k], slope_sign * dz[k0], slope_sign * dz[k]);
    // log coordinate: slope dz/dt = xi * z'(xi)
    return hermite(std::log(xi), std::log(x0), std::log(x1), z[k0], z[k],
                   slope_sign * x0 * dz[k0], slope_sign * x1 * dz[k]);
}

/// Monotone-cubic (Fritsch-Carlson) slopes for interpolating z' itself.
inline std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    std::vector<double> d(n, 0.0), h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) { d[i] = 0.0; continue; }
        double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    return d;
}

inline cplx eval_deriv_side(const Profile& p, const std::vector<cplx>& dz, const TailFit& dtail,
                            double xi) {
    const auto& g = p.grid;
    if (xi >= g.far_cut) return dtail(xi, g.far_cut);
    if (xi <= g.nodes.front()) return dz.front();
    std::size_t k = g.lower_bound(xi);
    if (g.nodes[k] == xi) return dz[k];
    std::size_t k0 = k - 1;
    double x0 = g.nodes[k0], x1 = g.nodes[k];
    // local monotone cubic through up to 4 surrounding nodes, per component
    std::size_t a = (k0 == 0) ? 0 : k0 - 1;
    std::size_t b = std::min(g.size() - 1, k + 1);
    std::vector<double> xs(g.nodes.begin() + a, g.nodes.begin() + b + 1);
    bool logc = x1 > 1.0 + 1e-15;
    if (logc) for (auto& v : xs) v = std::log(v);
    std::vector<double> re(xs.size()), im(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        re[i] = dz[a + i].real();
        im[i] = dz[a + i].imag();
    }
    auto dre = pchip_slopes(xs, re), dim = pchip_slopes(xs, im);
    std::size_t j = k0 - a;
    double t = logc ? std::log(xi) : xi;
    cplx y0{re[j], im[j]}, y1{re[j + 1], im[j + 1]};
    cplx s0{dre[j], dim[j]}, s1{dre[j + 1], dim[j + 1]};
    return hermite(t, xs[j], xs[j + 1], y0, y1, s0, s1);
}

}  // namespace detail

inline Profile make_profile(Equation eq, double kappa, FrequencyGrid grid, std::vector<cplx> z,
                            std::vector<cplx> dz, std::vector<cplx> zneg = {},
                            std::vector<cplx> dzneg = {}) {
    Profile p;
    p.equation = eq;
    p.kappa = kappa;
    p.grid = std::move(grid);
    p.z = std::move(z);
    p.dz = std::move(dz);
    p.zneg = std::move(zneg);
    p.dzneg = std::move(dzneg);
    if (p.z.size() != p.grid.size() || p.dz.size() != p.grid.size())
        throw config_error("make_profile: value arrays do not match the grid");
    if (p.two_sided()) {
        if (p.zneg.size() != p.grid.size() || p.dzneg.size() != p.grid.size())
            throw config_error("make_profile: NLS profile needs both signs");
    } else if (!p.zneg.empty()) {
        throw config_error("make_profile: negative-side arrays only valid for NLS");
    }
    p.tail = detail::fit_tail(p.grid, p.z, kappa);
    p.dtail = detail::fit_tail(p.grid, p.dz, kappa + 1.0);
    if (p.two_sided()) {
        p.tail_neg = detail::fit_tail(p.grid, p.zneg, kappa);
        p.dtail_neg = detail::fit_tail(p.grid, p.dzneg, kappa + 1.0);
    }
    return p;
}

inline Profile zero_profile(Equation eq, double kappa, FrequencyGrid grid) {
    std::size_t n = grid.size();
    std::vector<cplx> z(n, cplx{0, 0}), dz(n, cplx{0, 0});
    if (eq == Equation::NLS) return make_profile(eq, kappa, std::move(grid), z, dz, z, dz);
    return make_profile(eq, kappa, std::move(grid), std::move(z), std::move(dz));
}

/// z(xi); negative xi via conj(z(-xi)) for real-valued equations, stored
/// explicitly for NLS.
inline cplx evaluate(const Profile& p, double xi) {
    if (xi >= 0.0) return detail::eval_side(p, p.z, p.dz, p.tail, xi);
    if (p.two_sided()) return detail::eval_side(p, p.zneg, p.dzneg, p.tail_neg, -xi, -1.0);
    return std::conj(detail::eval_side(p, p.z, p.dz, p.tail, -xi));
}

/// z'(xi); for real-valued equations z'(-xi) = -conj(z'(xi)) by d/dxi of the
/// Hermitian rule. NLS stores z' on each side (derivative w.r.t. xi itself).
inline cplx evaluate_deriv(const Profile& p, double xi) {
    if (xi >= 0.0) return detail::eval_deriv_side(p, p.dz, p.dtail, xi);
    if (p.two_sided()) return detail::eval_deriv_side(p, p.dzneg, p.dtail_neg, -xi);
    return -std::conj(detail::eval_deriv_side(p, p.dz, p.dtail, -xi));
}

}  // namespace ssp
