// The NLS trilinear operator T[h1,h2,h3](eta) (conjugation on the middle
// factor). The quadratic phase diagonalizes globally: with r = eta + eta2,
// s = eta3 - eta1 one has Phi = (r^2 - s^2)/2 and
//   T(eta) = 1/2 intint e^{-i(r^2-s^2)/2} h1(eta-(r+s)/2) conj(h2(r-eta))
//            h3(eta-(r-s)/2) dr ds,
// so both directions are integrated with exact Fresnel moments.
#pragma once

#include "ssp/osc2d_common.hpp"

namespace ssp {

class NlsT {
  public:
    NlsT(cplx_fn h1, cplx_fn h2, cplx_fn h3, QuadratureSpec q = {})
        : h_{std::move(h1), std::move(h2), std::move(h3)}, q_(q) {
        q_.validate();
    }

    OscValue eval(double eta) const {
        if (eta == 0.0) throw config_error("eval_T: eta must be nonzero");
        OscValue out;
        double R = std::min(q_.truncation_radius * 6.0, std::max(5.0 * std::abs(eta), 80.0));
        double Rrs = 2.0 * R + 2.0 * std::abs(eta);

        Osc1DOptions oi;
        oi.rel_tol = 0.25 * q_.rel_tol;
        oi.abs_tol = 0.05 * q_.abs_tol;
        oi.max_panels = 400;
        Osc1DOptions oo;
        oo.rel_tol = 0.5 * q_.rel_tol;
        oo.abs_tol = 0.2 * q_.abs_tol;
        oo.max_panels = 1200;

        auto outer_env = [&](double r) -> cplx {
            cplx f2 = std::conj(h_[1](r - eta)) * detail::rtaper(r - eta, R);
            if (f2 == cplx{0, 0}) return {0, 0};
            auto inner_env = [&](double s) -> cplx {
                double a1 = eta - 0.5 * (r + s), a3 = eta - 0.5 * (r - s);
                return h_[0](a1) * h_[2](a3) * detail::rtaper(a1, R) * detail::rtaper(a3, R);
            };
            // factor-argument zeros are breakpoints (log-type factors)
            std::vector<double> bks;
            for (double s0 : {2 * eta - r, r - 2 * eta})
                if (s0 > -Rrs && s0 < Rrs) bks.push_back(s0);
            auto ri = integrate_osc1d(inner_env, PhaseSpec::quad(0.5, 0.0), -Rrs, Rrs, bks, oi);
            return 0.5 * f2 * ri.value;
        };
        auto r = integrate_osc1d(outer_env, PhaseSpec::quad(-0.5, 0.0), -Rrs, Rrs, {eta}, oo);
        out.add(r.value);
        out.error += r.error;
        out.converged = r.converged;
        out.env_evals = r.env_evals;
        return out;
    }

  private:
    std::array<cplx_fn, 3> h_;
    QuadratureSpec q_;
};

inline OscValue eval_T(cplx_fn h1, cplx_fn h2, cplx_fn h3, double eta, QuadratureSpec q = {}) {
    return NlsT(std::move(h1), std::move(h2), std::move(h3), q).eval(eta);
}

}  // namespace ssp
