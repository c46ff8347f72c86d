// Cubic-phase convolution chains for the Airy-type equations.
//
// Both the mKdV cubic term and the 4KdV quadrilinear operator M factor into
// nested 1D oscillatory convolutions
//     L[f, K](X) = int f(a) K(X-a) e^{i (a^3 + (X-a)^3 - X^3)} da,
// applied degree-1 times (the inner kernels are tabulated once and reused
// across output frequencies). Each kernel is stored as a sum of smooth
// envelopes times e^{i q x^3} phases; stationary points of each layer phase
// a^3 + (1+q)(X-a)^3 are extracted (above a smooth ramp in |X|) into new
// tagged components, reproducing the resonance bookkeeping of the theory:
// q-chain {0} -> {-3/4} -> {-8/9} -> {-15/16}.
#pragma once

#include "ssp/osc2d_common.hpp"

namespace ssp {

struct TagComp {
    double q;   // phase coefficient: component = env * e^{i q x^3}
    cplx env;
};

namespace detail {

struct LayerOut {
    cplx smooth{0, 0};
    std::vector<TagComp> comps;
    double err = 0;
    long evals = 0;

    void add_comp(double q, cplx env) {
        if (std::abs(q) < 1e-9) {
            smooth += env;
            return;
        }
        for (auto& c : comps)
            if (std::abs(c.q - q) < 1e-7) {
                c.env += env;
                return;
            }
        comps.push_back({q, env});
    }
    cplx total(double x) const {
        cplx t = smooth;
        for (const auto& c : comps) t += c.env * expi(c.q * x * x * x);
        return t;
    }
};

/// Tabulated tagged kernel on a signed node set.
class CubicTab {
  public:
    void build(const std::vector<double>& xs, const std::function<LayerOut(double)>& fn) {
        xs_ = xs;
        std::vector<LayerOut> vals(xs.size());
        parallel_for(xs.size(), [&](std::size_t i) { vals[i] = fn(xs_[i]); });
        smooth_.resize(xs_.size());
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            smooth_[i] = vals[i].smooth;
            err_ += vals[i].err;
            for (const auto& c : vals[i].comps) {
                int k = comp_index(c.q);
                comp_env_[k][i] += c.env;
            }
        }
    }

    /// Interpolated components at x (4-point local Lagrange per envelope).
    void at(double x, std::vector<TagComp>& out) const {
        out.clear();
        out.push_back({0.0, interp(smooth_, x)});
        for (std::size_t k = 0; k < comp_q_.size(); ++k) {
            cplx e = interp(comp_env_[k], x);
            if (e != cplx{0, 0}) out.push_back({comp_q_[k], e});
        }
    }

    double build_error() const { return err_; }

  private:
    std::vector<double> xs_;
    std::vector<cplx> smooth_;
    std::vector<double> comp_q_;
    mutable std::vector<std::vector<cplx>> comp_env_;
    double err_ = 0;

    int comp_index(double q) {
        for (std::size_t k = 0; k < comp_q_.size(); ++k)
            if (std::abs(comp_q_[k] - q) < 1e-7) return static_cast<int>(k);
        comp_q_.push_back(q);
        comp_env_.push_back(std::vector<cplx>(xs_.size(), cplx{0, 0}));
        return static_cast<int>(comp_q_.size()) - 1;
    }

    cplx interp(const std::vector<cplx>& v, double x) const {
        if (x <= xs_.front() || x >= xs_.back()) {
            // beyond the tabulated range the envelopes have decayed
            return {0, 0};
        }
        std::size_t k = std::lower_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
        std::size_t a = (k >= 2) ? k - 2 : 0;
        std::size_t b = std::min(a + 3, xs_.size() - 1);
        a = (b >= 3) ? b - 3 : 0;
        cplx s{0, 0};
        for (std::size_t i = a; i <= b; ++i) {
            double w = 1.0;
            for (std::size_t j = a; j <= b; ++j)
                if (j != i) w *= (x - xs_[j]) / (xs_[i] - xs_[j]);
            s += w * v[i];
        }
        return s;
    }
};

/// Signed node set: dense where unextracted kernel oscillation must be
/// resolved by interpolation (|x| below the extraction ramp), logarithmic
/// beyond, linear block near zero.
inline std::vector<double> cubic_tab_nodes(double zmax, double ramp_hi, int per_decade = 48) {
    std::vector<double> pos;
    for (int k = 1; k <= 16; ++k) pos.push_back(k / 16.0);
    double x = 1.0;
    while (x < std::min(ramp_hi, zmax)) {
        double dx = std::min(0.12 * x, 0.42 / (x * x));
        dx = std::max(dx, 1.0 / 16.0);
        x += dx;
        pos.push_back(x);
    }
    double ratio = std::pow(10.0, 1.0 / per_decade);
    while (x < zmax) {
        x *= ratio;
        pos.push_back(x);
    }
    std::vector<double> out;
    out.reserve(2 * pos.size() + 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
    out.push_back(0.0);
    for (double p : pos) out.push_back(p);
    return out;
}

struct CubicLayerCfg {
    double wexp_f = 0.0;        // |a|^{-w} on the integration variable
    bool kernel_singular = false;  // kernel carries |.|^{-w} at argument 0
    double wexp_k = 0.0;
    double ramp_hi = 8.0;       // extraction ramp: chi(|X|/ramp_hi)
    QuadratureSpec q;
};

/// One convolution layer. `kernel(x, out)` fills the tagged components of
/// K(x).
class CubicLayer {
  public:
    CubicLayer(cplx_fn f, std::function<void(double, std::vector<TagComp>&)> kernel,
               CubicLayerCfg cfg)
        : f_(std::move(f)), kernel_(std::move(kernel)), cfg_(cfg) {}

    LayerOut eval(double X) const {
        LayerOut out;
        double R = std::min(cfg_.q.truncation_radius * 6.0, std::max(5.0 * std::abs(X), 80.0));
        std::vector<TagComp> kc;
        // enumerate kernel components present anywhere (probe a few args)
        std::vector<double> qs = kernel_qs(X, R);
        for (double qk : qs) layer_component(X, R, qk, out);
        return out;
    }

  private:
    cplx_fn f_;
    std::function<void(double, std::vector<TagComp>&)> kernel_;
    CubicLayerCfg cfg_;

    std::vector<double> kernel_qs(double X, double R) const {
        std::vector<double> qs;
        std::vector<TagComp> buf;
        for (double probe : {X - 0.3, X + 0.7, X - 0.45 * R, X + 0.45 * R, X - 0.9 * R,
                             X + 0.9 * R, 0.77 * X + 0.1}) {
            kernel_(probe, buf);
            for (const auto& c : buf) {
                bool seen = false;
                for (double q : qs)
                    if (std::abs(q - c.q) < 1e-7) seen = true;
                if (!seen) qs.push_back(c.q);
            }
        }
        return qs;
    }

    cplx kernel_comp(double x, double qk) const {
        thread_local std::vector<TagComp> buf;
        kernel_(x, buf);
        for (const auto& c : buf)
            if (std::abs(c.q - qk) < 1e-7) return c.env;
        return {0, 0};
    }

    // phase of this layer against kernel component qk
    struct Phase {
        double X, opq;  // opq = 1 + qk
        double g(double a) const { return a * a * a + opq * cube(X - a) - X * X * X; }
        double gp(double a) const { return 3 * a * a - 3 * opq * sq(X - a); }
        double gpp(double a) const { return 6 * a + 6 * opq * (X - a); }
    };

    void layer_component(double X, double R, double qk, LayerOut& out) const {
        Phase ph{X, 1.0 + qk};
        double r = std::sqrt(ph.opq);
        struct Stat {
            double a, theta, coef;
        };
        std::vector<Stat> stats;
        auto add_stat = [&](double rr) {
            if (std::abs(1.0 + rr) < 1e-9) return;
            double a = rr * X / (1.0 + rr);
            double coef = (rr * rr * rr + ph.opq) / cube(1.0 + rr) - 1.0;
            stats.push_back({a, coef * X * X * X, coef});
        };
        add_stat(r);
        add_stat(-r);

        double ramp = chi(std::abs(X) / cfg_.ramp_hi);
        std::vector<Stat> tagged;
        for (const auto& s : stats)
            if (ramp > 0 && std::abs(s.coef) > 1e-9 && std::abs(s.theta) > 12.0 &&
                std::abs(s.a) < 0.85 * R)
                tagged.push_back(s);

        // mask half-widths, kept clear of the singular windows and each other
        std::vector<double> wm(tagged.size());
        for (std::size_t j = 0; j < tagged.size(); ++j) {
            double w = std::max(1.5, 0.15 * std::abs(X));
            w = std::min(w, 0.55 * std::abs(tagged[j].a));                    // away from 0
            w = std::min(w, 0.55 * std::abs(X - tagged[j].a));                // away from X
            for (std::size_t i = 0; i < tagged.size(); ++i)
                if (i != j) w = std::min(w, 0.45 * std::abs(tagged[i].a - tagged[j].a));
            wm[j] = std::max(w, 0.8);
        }

        auto masks_at = [&](double a) {
            double tot = 0.0;
            for (std::size_t j = 0; j < tagged.size(); ++j)
                tot += ramp * bump_low((a - tagged[j].a) / wm[j]);
            return std::min(tot, 1.0);
        };

        auto env_core = [&](double a) -> cplx {
            cplx fa = f_(a);
            if (fa == cplx{0, 0}) return {0, 0};
            if (cfg_.wexp_f > 0) fa *= std::pow(std::abs(a), -cfg_.wexp_f);
            return fa * kernel_comp(X - a, qk) * rtaper(a, R);
        };

        // smooth (complement-of-masks) part over the full range
        auto env_smooth = [&](double a) { return env_core(a) * (1.0 - masks_at(a)); };
        cplx sm = segmented(env_smooth, ph, X, R, out);
        out.add_comp(0.0, sm);

        // tagged windows
        for (std::size_t j = 0; j < tagged.size(); ++j) {
            const auto& s = tagged[j];
            auto env_m = [&](double a) {
                return env_core(a) * (ramp * bump_low((a - s.a) / wm[j]));
            };
            auto rj = integrate_osc1d(env_m,
                                      PhaseSpec::general([ph](double a) { return ph.g(a); },
                                                         [ph](double a) { return ph.gp(a); },
                                                         {s.a}),
                                      s.a - wm[j], s.a + wm[j], {}, window_opts());
            out.add_comp(s.coef, rj.value * expi(-s.theta));
            out.err += rj.error;
            out.evals += rj.env_evals;
        }
    }

    Osc1DOptions window_opts() const {
        Osc1DOptions o;
        o.rel_tol = 0.3 * cfg_.q.rel_tol;
        o.abs_tol = 0.1 * cfg_.q.abs_tol;
        o.max_panels = 400;
        return o;
    }

    /// Integrate env e^{i g} over [-R, R] handling the |a|^{-w} endpoint
    /// structure at 0 and at a = X by geometric Levin ladders.
    cplx segmented(const std::function<cplx(double)>& env, const Phase& ph, double X, double R,
                   LayerOut& out) const {
        std::vector<double> cuts{-R, R};
        auto push = [&](double c) {
            if (c > -R && c < R) cuts.push_back(c);
        };
        double r = std::sqrt(ph.opq);
        if (std::abs(1.0 + r) > 1e-9) push(r * X / (1.0 + r));
        if (std::abs(1.0 - r) > 1e-9) push(-r * X / (1.0 - r));
        if (std::abs(1.0 - ph.opq) > 1e-12) push(ph.opq * X / (ph.opq - 1.0));  // g'' = 0
        double w0 = (cfg_.wexp_f > 0) ? std::min({1.0, 0.25 * R}) : 0.0;
        double w1 = cfg_.kernel_singular ? std::min({1.0, 0.25 * R}) : 0.0;
        if (w0 > 0 && w1 > 0 && std::abs(X) < 2.2 * (w0 + w1)) {
            w0 = w1 = std::max(0.05, std::abs(X) / 4.5);
        }
        if (w0 > 0) {
            push(-w0);
            push(w0);
        }
        if (w1 > 0) {
            push(X - w1);
            push(X + w1);
        }
        push(X);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   cuts.end());

        cplx tot{0, 0};
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], b = cuts[i + 1];
            double mid = 0.5 * (a + b);
            bool near0 = (w0 > 0 && std::abs(mid) < w0);
            bool nearX = (w1 > 0 && std::abs(mid - X) < w1);
            if (near0 || nearX) {
                double s0 = near0 ? 0.0 : X;
                tot += ladder(env, ph, a, b, s0, out);
            } else {
                auto rr = integrate_osc1d(
                    env,
                    PhaseSpec::general([ph](double x) { return ph.g(x); },
                                       [ph](double x) { return ph.gp(x); }),
                    a, b, {}, seg_opts());
                tot += rr.value;
                out.err += rr.error;
                out.evals += rr.env_evals;
            }
        }
        return tot;
    }

    Osc1DOptions seg_opts() const {
        Osc1DOptions o;
        o.rel_tol = 0.35 * cfg_.q.rel_tol;
        o.abs_tol = 0.12 * cfg_.q.abs_tol;
        o.max_panels = 900;
        return o;
    }

    /// Geometric panel ladder toward an integrable |a - s0|^{-w} endpoint.
    cplx ladder(const std::function<cplx(double)>& env, const Phase& ph, double a, double b,
                double s0, LayerOut& out) const {
        cplx tot{0, 0};
        auto piece = [&](double p, double q2) {
            if (q2 <= p) return;
            auto rr = integrate_osc1d(
                env,
                PhaseSpec::general([ph](double x) { return ph.g(x); },
                                   [ph](double x) { return ph.gp(x); }),
                p, q2, {}, seg_opts());
            tot += rr.value;
            out.err += rr.error;
            out.evals += rr.env_evals;
        };
        // split [a,b] into dyadic shells around s0, innermost shell cut off
        // once its direct bound drops below tolerance
        double lenl = s0 - a, lenr = b - s0;
        for (double side = 0; side < 2; ++side) {
            double len = side == 0 ? lenl : lenr;
            if (len <= 0) continue;
            double outer = len;
            for (int k = 0; k < 64; ++k) {
                double inner = outer / 3.0;
                double p = side == 0 ? s0 - outer : s0 + inner;
                double q2 = side == 0 ? s0 - inner : s0 + outer;
                piece(p, q2);
                outer = inner;
                // |env| ~ C inner^{-w}: remaining mass ~ C inner^{1-w}
                double w = near_weight();
                double rem = std::pow(outer, 1.0 - w);
                if (rem * env_scale(env, s0, outer, side == 0 ? -1.0 : 1.0) <
                    0.05 * cfg_.q.abs_tol)
                    break;
            }
        }
        return tot;
    }

    double near_weight() const { return std::max(cfg_.wexp_f, cfg_.wexp_k); }

    static double env_scale(const std::function<cplx(double)>& env, double s0, double h,
                            double sgn) {
        double probe = s0 + sgn * h;
        cplx v = env(probe);
        double w = std::abs(v);
        return std::isfinite(w) ? w * std::pow(h, 1.0 / 3.0) + 1e-300 : 1.0;
    }
};

}  // namespace detail

/// Nested cubic-phase convolution operator: degree 3 (mKdV cubic term,
/// kernel K of the constant-term analysis) or degree 4 (the operator M).
class CubicConvolution {
  public:
    CubicConvolution(std::vector<cplx_fn> factors, double wexp, QuadratureSpec q, double xmax)
        : f_(std::move(factors)), wexp_(wexp), q_(q) {
        q_.validate();
        int deg = static_cast<int>(f_.size());
        if (deg != 3 && deg != 4) throw config_error("cubic chain needs 3 or 4 factors");
        tabs_.reserve(2);  // kernel accessors hold pointers into this vector
        double z1 = 6.0 * std::max(xmax, 10.0) + 100.0;
        double z2 = 6.0 * z1 + 100.0;

        // innermost pair kernel from the last two factors
        {
            detail::CubicLayerCfg cfg;
            cfg.wexp_f = wexp_;
            cfg.kernel_singular = wexp_ > 0;
            cfg.wexp_k = wexp_;
            cfg.ramp_hi = 8.0;
            cfg.q = q_;
            cplx_fn fk = f_[deg - 1];
            double w = wexp_;
            auto kernel = [fk, w](double x, std::vector<TagComp>& outc) {
                outc.clear();
                cplx v = fk(x);
                if (w > 0 && x != 0.0) v *= std::pow(std::abs(x), -w);
                outc.push_back({0.0, v});
            };
            detail::CubicLayer lay(f_[deg - 2], kernel, cfg);
            tabs_.emplace_back();
            tabs_.back().build(detail::cubic_tab_nodes(deg == 4 ? z2 : z1, cfg.ramp_hi),
                               [&](double x) { return lay.eval(x); });
        }
        if (deg == 4) {
            detail::CubicLayerCfg cfg;
            cfg.wexp_f = wexp_;
            cfg.ramp_hi = 8.0;
            cfg.q = q_;
            const detail::CubicTab* tab = &tabs_[0];
            auto kernel = [tab](double x, std::vector<TagComp>& outc) {
                tab->at(x, outc);
            };
            detail::CubicLayer lay(f_[1], kernel, cfg);
            tabs_.emplace_back();
            tabs_.back().build(detail::cubic_tab_nodes(z1, cfg.ramp_hi),
                               [&](double x) { return lay.eval(x); });
        }
    }

    /// Full operator value at eta with tagged resonant components.
    OscValue eval(double eta) const {
        detail::CubicLayerCfg cfg;
        cfg.wexp_f = wexp_;
        cfg.ramp_hi = top_ramp_hi;
        cfg.q = q_;
        const detail::CubicTab* tab = &tabs_.back();
        auto kernel = [tab](double x, std::vector<TagComp>& outc) { tab->at(x, outc); };
        detail::CubicLayer lay(f_[0], kernel, cfg);
        auto r = lay.eval(eta);
        OscValue out;
        out.value = r.smooth;
        for (const auto& c : r.comps) {
            out.value += c.env * expi(c.q * cube(eta));
            out.tagged.push_back({c.q * ((eta >= 0) ? 1.0 : -1.0), 3, c.env});
        }
        out.error = r.err;
        out.env_evals = r.evals;
        out.converged = true;
        return out;
    }

    static constexpr double top_ramp_hi = 30.0;

  private:
    std::vector<cplx_fn> f_;
    double wexp_;
    QuadratureSpec q_;
    std::vector<detail::CubicTab> tabs_;
};

/// mKdV cubic convolution (no singular weights).
inline OscValue eval_cubic_mkdv(cplx_fn f1, cplx_fn f2, cplx_fn f3, double eta,
                                QuadratureSpec q = {}) {
    CubicConvolution op({std::move(f1), std::move(f2), std::move(f3)}, 0.0, q,
                        std::abs(eta));
    return op.eval(eta);
}

/// 4KdV quadrilinear operator M (weights |eta_j|^{-1/3}).
inline OscValue eval_M(cplx_fn f1, cplx_fn f2, cplx_fn f3, cplx_fn f4, double eta,
                       QuadratureSpec q = {}) {
    CubicConvolution op({std::move(f1), std::move(f2), std::move(f3), std::move(f4)},
                        1.0 / 3.0, q, std::abs(eta));
    return op.eval(eta);
}

/// Helper kernel K(zeta) of the 4KdV constant-term analysis: three cutoff
/// factors with |.|^{-1/3} weights and the cubic convolution phase.
inline OscValue kernel_K(double zeta, QuadratureSpec q = {}) {
    auto c = [](double x) { return cplx(chi(x), 0.0); };
    CubicConvolution op({c, c, c}, 1.0 / 3.0, q, std::abs(zeta));
    return op.eval(zeta);
}

/// The all-cutoff value M_constant(eta).
inline OscValue M_constant(double eta, QuadratureSpec q = {}) {
    auto c = [](double x) { return cplx(chi(x) + chi(-x), 0.0); };
    CubicConvolution op({c, c, c, c}, 1.0 / 3.0, q, std::abs(eta));
    return op.eval(eta);
}

}  // namespace ssp
