// Adaptive 1D oscillatory integration: int_a^b env(y) e^{i g(y)} dy.
//
// Panels are classified by phase range. Slow panels use embedded
// Gauss-Legendre pairs; wide quadratic-phase panels use exact Fresnel/erf
// moments against a Chebyshev fit of the envelope; wide general-phase panels
// away from stationary points use Levin collocation. Stationary points and
// integrable-singularity offsets are supplied by the caller as breakpoints.
#pragma once

#include <algorithm>
#include <queue>

#include "ssp/cerf.hpp"
#include "ssp/gauss.hpp"

namespace ssp {

struct PhaseSpec {
    bool quadratic = true;
    // quadratic: g(y) = alpha y^2 + beta y (+ implicit constant handled by caller)
    double alpha = 0.0, beta = 0.0;
    // general phase with derivative (required if !quadratic)
    std::function<double(double)> g, gp;
    std::vector<double> stationary;  // caller-declared stationary points

    double eval(double y) const { return quadratic ? (alpha * y * y + beta * y) : g(y); }
    double deriv(double y) const { return quadratic ? (2.0 * alpha * y + beta) : gp(y); }

    static PhaseSpec quad(double alpha, double beta) {
        PhaseSpec p;
        p.quadratic = true;
        p.alpha = alpha;
        p.beta = beta;
        if (std::abs(alpha) > 0) p.stationary = {-beta / (2.0 * alpha)};
        return p;
    }
    static PhaseSpec general(std::function<double(double)> g, std::function<double(double)> gp,
                             std::vector<double> stat = {}) {
        PhaseSpec p;
        p.quadratic = false;
        p.g = std::move(g);
        p.gp = std::move(gp);
        p.stationary = std::move(stat);
        return p;
    }
};

struct Osc1DOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-13;
    int max_panels = 6000;
    int cheb_n = 13;  // envelope fit nodes for the moment path
    int levin_n = 14;
    // noise floor of each envelope evaluation (set when env is itself an
    // inner quadrature); refinement below this floor is pointless
    double env_noise_abs = 0.0;
    double env_noise_rel = 0.0;
};

struct Osc1DResult {
    cplx value{0, 0};
    double error = 0.0;
    bool converged = true;
    long env_evals = 0;
    int panels = 0;
};

namespace detail {

/// Linear-phase moments on [-1,1]: L_k = int u^k e^{i beta u} du, k = 0..K.
inline void linmom_scaled(double beta, int K, std::vector<cplx>& L) {
    L.assign(K + 1, cplx{0, 0});
    double ab = std::abs(beta);
    if (ab <= 6.0) {
        // Taylor in beta
        for (int k = 0; k <= K; ++k) {
            cplx term{0, 0};
            cplx ibm{1.0, 0.0};  // (i beta)^m / m!
            for (int m = 0; m <= 60; ++m) {
                int p = k + m + 1;
                if ((k + m) % 2 == 0) term += ibm * (2.0 / p);
                double nxt = ab / (m + 1.0);
                ibm *= iu * beta / double(m + 1);
                if (std::abs(ibm) * 2.0 < 1e-18 && m > 3) break;
                (void)nxt;
            }
            L[k] = term;
        }
        return;
    }
    if (ab >= std::max(12.0, 1.2 * K + 8.0)) {
        cplx eb = expi(beta), ea = expi(-beta);
        L[0] = (eb - ea) / (iu * beta);
        for (int k = 1; k <= K; ++k) {
            double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            L[k] = (eb - sgn * ea) / (iu * beta) - double(k) / (iu * beta) * L[k - 1];
        }
        return;
    }
    // moderate phase: high-order Gauss is exact to machine here
    const QuadRule& r = gauss_rule(100);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        cplx e = r.w[i] * expi(beta * r.x[i]);
        double uk = 1.0;
        for (int k = 0; k <= K; ++k) {
            L[k] += e * uk;
            uk *= r.x[i];
        }
    }
}

/// Quadratic-phase moments on [-1,1]: M_k = int u^k e^{i(alpha u^2 + beta u)} du.
/// Returns false if the configuration is ill-conditioned for this path.
inline bool quadmom_scaled(double alpha, double beta, int K, std::vector<cplx>& M) {
    double aa = std::abs(alpha);
    if (aa <= 0.08) {
        // treat the quadratic factor as a perturbation
        std::vector<cplx> L;
        int Mmax = 12;
        linmom_scaled(beta, K + 2 * Mmax, L);
        M.assign(K + 1, cplx{0, 0});
        for (int k = 0; k <= K; ++k) {
            cplx f{1.0, 0.0};
            for (int m = 0; m <= Mmax; ++m) {
                M[k] += f * L[k + 2 * m];
                f *= iu * alpha / double(m + 1);
                if (std::abs(f) < 1e-18 && m > 2) break;
            }
        }
        return true;
    }
    double s = beta / (2.0 * alpha);
    if (std::abs(s) > 50.0) return false;  // stationary point far away: use Levin instead
    M.assign(K + 1, cplx{0, 0});
    cplx phib = expi(alpha + beta), phia = expi(alpha - beta);  // e^{i g(+-1)}
    M[0] = expi(-alpha * s * s) * (fresnel_F(alpha, 1.0 + s) - fresnel_F(alpha, -1.0 + s));
    if (K >= 1) M[1] = ((phib - phia) - iu * beta * M[0]) / (2.0 * iu * alpha);
    for (int k = 2; k <= K; ++k) {
        double sgn = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k-1}
        cplx bdry = phib - sgn * phia;            // [u^{k-1} e^{i g}]_{-1}^{1}
        M[k] = (bdry - double(k - 1) * M[k - 2] - iu * beta * M[k - 1]) / (2.0 * iu * alpha);
    }
    return true;
}

struct Panel {
    double a, b;
    cplx value;
    double err;
    double envmax = 0.0;
};

}  // namespace detail

class Osc1D {
  public:
    Osc1D(std::function<cplx(double)> env, PhaseSpec phase, Osc1DOptions opts = {})
        : env_(std::move(env)), ph_(std::move(phase)), opt_(opts) {}

    Osc1DResult integrate(double a, double b, std::vector<double> breakpoints = {}) {
        Osc1DResult res;
        if (!(b > a)) return res;
        std::vector<double> cuts{a, b};
        for (double s : ph_.stationary)
            if (s > a && s < b) cuts.push_back(s);
        for (double s : breakpoints)
            if (s > a && s < b) cuts.push_back(s);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        std::vector<detail::Panel> panels;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) seed_panels(cuts[i], cuts[i + 1], panels);

        for (auto& p : panels) eval_panel(p, res);
        // refinement loop on the worst panels; panels whose error sits at the
        // envelope noise floor are not worth splitting further
        auto tol = [&](cplx total) {
            return std::max(opt_.abs_tol, opt_.rel_tol * std::abs(total));
        };
        auto floor_of = [&](const detail::Panel& p) {
            return (opt_.env_noise_abs + opt_.env_noise_rel * p.envmax) * (p.b - p.a);
        };
        for (;;) {
            cplx total{0, 0};
            double err = 0, floors = 0;
            std::size_t worst = 0;
            double worst_pri = -1e300;
            for (std::size_t i = 0; i < panels.size(); ++i) {
                total += panels[i].value;
                err += panels[i].err;
                floors += floor_of(panels[i]);
                double pri = panels[i].err - floor_of(panels[i]);
                if (pri > worst_pri) {
                    worst_pri = pri;
                    worst = i;
                }
            }
            if (err <= tol(total) || worst_pri <= 0 || (int)panels.size() >= opt_.max_panels ||
                panels[worst].err <= 0) {
                res.value = total;
                res.error = err;
                res.converged = err <= 4.0 * tol(total) || err <= tol(total) + 2.0 * floors;
                res.panels = static_cast<int>(panels.size());
                return res;
            }
            detail::Panel p = panels[worst];
            double m = 0.5 * (p.a + p.b);
            if (m <= p.a || m >= p.b) {  // width exhausted
                panels[worst].err = 0;
                continue;
            }
            detail::Panel l{p.a, m, {0, 0}, 0}, r{m, p.b, {0, 0}, 0};
            eval_panel(l, res);
            eval_panel(r, res);
            panels[worst] = l;
            panels.push_back(r);
        }
    }

  private:
    std::function<cplx(double)> env_;
    PhaseSpec ph_;
    Osc1DOptions opt_;

    double phase_range(double a, double b) const {
        // phase is monotone-derivative per seeded panel (splits at stationary pts)
        double ga = ph_.deriv(a), gb = ph_.deriv(b), gm = ph_.deriv(0.5 * (a + b));
        double mx = std::max({std::abs(ga), std::abs(gb), std::abs(gm)});
        return mx * (b - a);
    }

    void seed_panels(double a, double b, std::vector<detail::Panel>& out) const {
        // Slow panels (Gauss) stay below ~60 rad. Exact quadratic panels can
        // be arbitrarily wide (moments). General panels are Levin-eligible
        // once |g'| varies by a bounded factor, so split on that instead of
        // on the total phase (a cubic phase over a wide range would
        // otherwise explode the panel count).
        std::vector<std::pair<double, double>> stack{{a, b}};
        while (!stack.empty()) {
            auto [x0, x1] = stack.back();
            stack.pop_back();
            bool split = false;
            if (x1 - x0 > 1e-11 * (std::abs(x0) + std::abs(x1) + 1)) {
                double range = phase_range(x0, x1);
                if (range > 60.0 && !ph_.quadratic) {
                    double g0 = std::abs(ph_.deriv(x0));
                    double g1 = std::abs(ph_.deriv(0.5 * (x0 + x1)));
                    double g2 = std::abs(ph_.deriv(x1));
                    double mn = std::min({g0, g1, g2}), mx = std::max({g0, g1, g2});
                    if (mx > 4.0 * std::max(mn, 1e-9 * mx)) split = true;
                }
            }
            if (split) {
                double m = 0.5 * (x0 + x1);
                stack.push_back({x0, m});
                stack.push_back({m, x1});
            } else {
                dyadic_emit(x0, x1, out);
            }
        }
    }

    /// Emit panels growing geometrically from both segment ends: envelope
    /// structure is anchored at breakpoints, and a single wide panel would
    /// alias narrow features between sparse fit nodes.
    static void dyadic_emit(double a, double b, std::vector<detail::Panel>& out) {
        double len = b - a;
        double w0 = std::min(std::max(0.35, 1e-3 * len), 0.25 * len);
        std::vector<double> cuts{a, b};
        double w = w0, pos = a;
        while (pos + w < 0.5 * (a + b)) {
            pos += w;
            cuts.push_back(pos);
            w *= 2.0;
        }
        w = w0;
        pos = b;
        while (pos - w > 0.5 * (a + b)) {
            pos -= w;
            cuts.push_back(pos);
            w *= 2.0;
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i + 1] > cuts[i]) out.push_back({cuts[i], cuts[i + 1], {0, 0}, 0});
    }

    cplx gl_apply(double a, double b, int n, Osc1DResult& res) const {
        const QuadRule& r = gauss_rule(n);
        double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        cplx s{0, 0};
        for (int i = 0; i < n; ++i) {
            double y = mid + hw * r.x[i];
            s += r.w[i] * env_(y) * expi(ph_.eval(y));
        }
        res.env_evals += n;
        return s * hw;
    }

    void eval_panel(detail::Panel& p, Osc1DResult& res) const {
        double dphi = phase_range(p.a, p.b);
        if (dphi <= 60.0) {
            int n = std::max(12, (int)(dphi * 0.9) + 10);
            cplx lo = gl_apply(p.a, p.b, n, res);
            cplx hi = gl_apply(p.a, p.b, 2 * n, res);
            p.value = hi;
            p.err = std::abs(hi - lo);
            return;
        }
        if (ph_.quadratic && moment_panel(p, res)) return;
        if (levin_panel(p, res)) return;
        // fallback: resolved Gauss on a wide panel (expensive, bounded)
        int n = std::min(600, (int)(dphi * 0.9) + 10);
        cplx lo = gl_apply(p.a, p.b, n, res);
        cplx hi = gl_apply(p.a, p.b, std::min(900, 2 * n), res);
        p.value = hi;
        p.err = std::abs(hi - lo) + (dphi > 1100 ? 0.1 * std::abs(hi) + 1e-300 : 0.0);
    }

    bool moment_panel(detail::Panel& p, Osc1DResult& res) const {
        double mid = 0.5 * (p.a + p.b), hw = 0.5 * (p.b - p.a);
        double al = ph_.alpha * hw * hw;
        double be = (2.0 * ph_.alpha * mid + ph_.beta) * hw;
        int n = opt_.cheb_n;
        auto xs = lobatto_nodes(n);
        std::vector<cplx> fv(n);
        for (int i = 0; i < n; ++i) fv[i] = env_(mid + hw * xs[i]);
        res.env_evals += n;
        auto coeff = poly_interp(xs, fv);
        std::vector<cplx> M;
        if (!detail::quadmom_scaled(al, be, n - 1, M)) return false;
        cplx phase0 = expi(ph_.alpha * mid * mid + ph_.beta * mid);
        cplx v{0, 0}, vlow{0, 0};
        for (int k = 0; k < n; ++k) {
            v += coeff[k] * M[k];
            if (k < n - 4) vlow += coeff[k] * M[k];
        }
        // error: envelope-fit truncation, gauged by the top coefficients and
        // by off-node probes (fit nodes alone can miss narrow features)
        double tail = 0;
        for (int k = n - 4; k < n; ++k) tail += std::abs(coeff[k]) * std::abs(M[k]);
        double miss = 0;
        for (double u : {-0.93, -0.41, 0.18, 0.77}) {
            cplx fit{0, 0};
            double uk = 1.0;
            for (int k = 0; k < n; ++k) {
                fit += coeff[k] * uk;
                uk *= u;
            }
            miss = std::max(miss, std::abs(env_(mid + hw * u) - fit));
        }
        res.env_evals += 4;
        p.value = phase0 * v * hw;
        p.err = (std::abs(v - vlow) * 0.5 + tail * 0.25 + miss * 0.7) * hw;
        return true;
    }

    bool levin_panel(detail::Panel& p, Osc1DResult& res) const {
        // needs |g'| bounded away from zero on the panel
        double mid = 0.5 * (p.a + p.b);
        double gmin = std::min({std::abs(ph_.deriv(p.a)), std::abs(ph_.deriv(mid)),
                                std::abs(ph_.deriv(p.b))});
        if (gmin * (p.b - p.a) < 8.0) return false;
        cplx v1, v2;
        if (!levin_solve(p.a, p.b, opt_.levin_n, v1, res)) return false;
        if (!levin_solve(p.a, p.b, opt_.levin_n - 4, v2, res)) return false;
        p.value = v1;
        p.err = std::abs(v1 - v2);
        return true;
    }

    bool levin_solve(double a, double b, int n, cplx& out, Osc1DResult& res) const {
        auto xs = lobatto_nodes(n);
        double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        std::vector<double> ys(n);
        for (int i = 0; i < n; ++i) ys[i] = mid + hw * xs[i];
        auto D = diff_matrix(xs);  // derivative in the scaled coordinate
        std::vector<cplx> A(n * n);
        std::vector<cplx> rhs(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i * n + j] = D[i * n + j] / hw;
            A[i * n + i] += iu * ph_.deriv(ys[i]);
            rhs[i] = env_(ys[i]);
        }
        res.env_evals += n;
        if (!solve_dense(A, rhs)) return false;
        out = rhs[n - 1] * expi(ph_.eval(b)) - rhs[0] * expi(ph_.eval(a));
        return true;
    }
};

/// Convenience wrapper.
inline Osc1DResult integrate_osc1d(std::function<cplx(double)> env, PhaseSpec phase, double a,
                                   double b, std::vector<double> breakpoints = {},
                                   Osc1DOptions opts = {}) {
    Osc1D q(std::move(env), std::move(phase), opts);
    return q.integrate(a, b, std::move(breakpoints));
}

/// Two-term integration-by-parts model for int_R^inf f e^{ig} with decaying f
/// and |g'| growing; returns value and a crude error bound.
inline std::pair<cplx, double> tail_ibp(cplx f, cplx fp, double g, double gp, double gpp) {
    cplx e = expi(g);
    cplx t1 = -f / (iu * gp);
    cplx h = (fp / gp - f * gpp / (gp * gp)) / iu;
    cplx t2 = h / (iu * gp);
    double err = 3.0 * std::abs(h / gp);
    return {e * (t1 + t2), err};
}

}  // namespace ssp
