// Shared pieces for the 2D oscillatory convolution evaluators: smooth
// truncation tapers, tagged oscillatory components and convex-sector slicing.
#pragma once

#include <map>
#include <vector>

#include "ssp/cutoff.hpp"
#include "ssp/integrand.hpp"
#include "ssp/osc1d.hpp"

namespace ssp {

/// One recognized oscillatory component of an operator value:
/// contribution = env * exp(i coef sign(eta) |eta|^pw).
struct TaggedPart {
    double coef = 0.0;
    int pw = 0;
    cplx env{0, 0};
};

struct OscValue {
    cplx value{0, 0};
    double error = 0.0;
    bool converged = true;
    std::vector<TaggedPart> tagged;                 // parts of `value`
    std::map<std::string, cplx> regions;            // diagnostics
    long env_evals = 0;

    void add(cplx v) { value += v; }
    void add_tagged(double coef, int pw, cplx env_demod, double theta) {
        value += env_demod * expi(theta);
        for (auto& t : tagged)
            if (t.pw == pw && std::abs(t.coef - coef) < 1e-9) {
                t.env += env_demod;
                return;
            }
        tagged.push_back({coef, pw, env_demod});
    }
    /// value minus all tagged components (the slowly varying part).
    cplx smooth(double eta) const {
        cplx s = value;
        double sg = (eta >= 0) ? 1.0 : -1.0;
        for (const auto& t : tagged)
            s -= t.env * expi(t.coef * sg * std::pow(std::abs(eta), t.pw));
        return s;
    }
};

namespace detail {

/// Smooth radial taper: 1 below 0.75 R, 0 above R.
inline double rtaper(double x, double R) {
    double t = (std::abs(x) - 0.75 * R) / (0.25 * R);
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

/// Half-plane a.x <= b in the plane.
struct HalfPlane {
    double a1, a2, b;
};

/// Feasible u-range and per-u v-interval of the convex region cut by the
/// half-planes, parametrized x = p0 + u e1 + v e2.
struct SectorSlicer {
    std::vector<HalfPlane> hp;
    double p01 = 0, p02 = 0, e11 = 1, e12 = 0, e21 = 0, e22 = 1;

    bool u_range(double& lo, double& hi) const {
        // vertices of the polygon in (u,v) coordinates
        std::vector<std::pair<double, double>> uv;
        auto to_uv = [&](double c1, double c2, double rhs, double d1, double d2, double rhs2,
                         double& u, double& v) {
            double det = c1 * d2 - c2 * d1;
            if (std::abs(det) < 1e-12) return false;
            u = (rhs * d2 - c2 * rhs2) / det;
            v = (c1 * rhs2 - rhs * d1) / det;
            return true;
        };
        std::vector<std::array<double, 3>> cons;  // constraints in (u, v)
        for (const auto& h : hp) {
            double cu = h.a1 * e11 + h.a2 * e12;
            double cv = h.a1 * e21 + h.a2 * e22;
            double rhs = h.b - h.a1 * p01 - h.a2 * p02;
            cons.push_back({cu, cv, rhs});
        }
        for (std::size_t i = 0; i < cons.size(); ++i)
            for (std::size_t j = i + 1; j < cons.size(); ++j) {
                double u, v;
                if (!to_uv(cons[i][0], cons[i][1], cons[i][2], cons[j][0], cons[j][1], cons[j][2],
                           u, v))
                    continue;
                bool ok = true;
                for (const auto& c : cons)
                    if (c[0] * u + c[1] * v > c[2] + 1e-7 * (1 + std::abs(c[2]))) ok = false;
                if (ok) uv.push_back({u, v});
            }
        if (uv.empty()) return false;
        lo = uv[0].first;
        hi = uv[0].first;
        for (auto& p : uv) {
            lo = std::min(lo, p.first);
            hi = std::max(hi, p.first);
        }
        return hi > lo + 1e-12;
    }

    bool v_interval(double u, double& lo, double& hi) const {
        lo = -1e300;
        hi = 1e300;
        for (const auto& h : hp) {
            double cu = h.a1 * e11 + h.a2 * e12;
            double cv = h.a1 * e21 + h.a2 * e22;
            double rhs = h.b - h.a1 * p01 - h.a2 * p02 - cu * u;
            if (std::abs(cv) < 1e-14) {
                if (rhs < 0) return false;
                continue;
            }
            if (cv > 0) hi = std::min(hi, rhs / cv);
            else lo = std::max(lo, rhs / cv);
        }
        return hi > lo;
    }
};

/// Eigen-decomposition of a symmetric 2x2 matrix [[a,b],[b,c]].
inline void eigen2(double a, double b, double c, double& l1, double& l2, double& c1, double& s1) {
    double tr = a + c, df = a - c;
    double rt = std::sqrt(df * df + 4 * b * b);
    l1 = 0.5 * (tr + rt);
    l2 = 0.5 * (tr - rt);
    if (std::abs(b) < 1e-300 && df >= 0) { c1 = 1; s1 = 0; return; }
    if (std::abs(b) < 1e-300) { c1 = 0; s1 = 1; return; }
    double t = (l1 - a) / b;  // eigenvector (1, t) for l1
    double nrm = std::sqrt(1 + t * t);
    c1 = 1 / nrm;
    s1 = t / nrm;
}

}  // namespace detail

}  // namespace ssp
