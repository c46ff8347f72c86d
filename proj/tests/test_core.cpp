// Grids, profiles, norms, cutoff and ansatz formulas.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssp/ansatz.hpp"
#include "ssp/norms.hpp"

using namespace ssp;

namespace {

Profile profile_from(Equation eq, double kappa, const FrequencyGrid& g,
                     const std::function<cplx(double)>& f,
                     const std::function<cplx(double)>& df) {
    std::vector<cplx> z(g.size()), dz(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        z[i] = f(g.nodes[i]);
        dz[i] = df(g.nodes[i]);
    }
    if (eq == Equation::NLS) {
        std::vector<cplx> zn(g.size()), dzn(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            zn[i] = f(-g.nodes[i]);
            dzn[i] = df(-g.nodes[i]);
        }
        return make_profile(eq, kappa, g, z, dz, zn, dzn);
    }
    return make_profile(eq, kappa, g, z, dz);
}

}  // namespace

TEST_CASE("scaling law table") {
    CHECK(scaling_law(Equation::MKDV).dispersion_order == 3);
    CHECK(scaling_law(Equation::KDV4).nonlinearity_degree == 4);
    CHECK(scaling_law(Equation::MBO).weight_exponent == doctest::Approx(0.5));
    CHECK(scaling_law(Equation::NLS).amplitude_decay == doctest::Approx(0.5));
    // scaling exponent equals (n-m)/(k-1)
    CHECK(scaling_exponent(Equation::MKDV) == doctest::Approx(1.0));
    CHECK(scaling_exponent(Equation::KDV4) == doctest::Approx(2.0 / 3.0));
    CHECK(scaling_exponent(Equation::MBO) == doctest::Approx(0.5));
    CHECK(scaling_exponent(Equation::NLS) == doctest::Approx(1.0));
    CHECK(phase_symbol(Equation::MBO, -2.0) == doctest::Approx(-4.0));
    CHECK(phase_symbol(Equation::MKDV, 2.0) == doctest::Approx(8.0));
}

TEST_CASE("grid construction") {
    FrequencyGrid g = build_grid({1e-3, 100.0, 32, 1.0 / 64.0});
    // about 160 log nodes (5 decades at 32/decade) plus the linear block
    std::size_t nlog = log_node_count(1e-3, 100.0, 32);
    CHECK(nlog == 161);
    bool has_half = false, has_one = false;
    for (double x : g.nodes) {
        if (x == 0.5) has_half = true;
        if (x == 1.0) has_one = true;
    }
    CHECK(has_half);
    CHECK(has_one);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.nodes[i] < g.nodes[i + 1]);
    CHECK(g.nodes.front() > 0.0);
    CHECK(g.nodes.front() == doctest::Approx(1e-3));
    CHECK(g.nodes.back() == doctest::Approx(100.0));

    CHECK_THROWS_AS(build_grid({1e-3, 1e-3, 32, 1.0 / 64.0}), config_error);
    CHECK_THROWS_AS(build_grid({-1.0, 100.0, 32, 1.0 / 64.0}), config_error);
    CHECK_THROWS_AS(build_grid({1e-3, 100.0, 8, 1.0 / 64.0}), config_error);

    // density rule example: count the decades
    CHECK(log_node_count(1e-2, 200.0, 64) == 1 + std::size_t(std::floor(64 * std::log10(200.0 / 1e-2))) + 1);
}

TEST_CASE("Z norm basics") {
    FrequencyGrid g = build_grid({1e-3, 100.0, 32, 1.0 / 64.0});
    double kappa = 0.64;

    auto zero = zero_profile(Equation::KDV4, kappa, g);
    auto r0 = weighted_norm_Z(zero);
    CHECK(r0.sup_weighted_value == 0.0);
    CHECK(r0.sup_weighted_deriv == 0.0);
    CHECK(r0.norm_total == 0.0);

    // z = <xi>^-kappa: the weight cancels, sup = 1 at every node
    auto p = profile_from(Equation::KDV4, kappa, g,
                          [&](double x) { return cplx(std::pow(jbr(x), -kappa), 0); },
                          [&](double x) { return cplx(-kappa * x * std::pow(jbr(x), -kappa - 2), 0); });
    auto r = weighted_norm_Z(p);
    CHECK(r.sup_weighted_value == doctest::Approx(1.0).epsilon(1e-12));

    // overflow names the node
    auto bad = zero_profile(Equation::KDV4, kappa, g);
    bad.z[3] = cplx(std::numeric_limits<double>::infinity(), 0);
    CHECK_THROWS_WITH_AS(weighted_norm_Z(bad), doctest::Contains("node"), numeric_error);
}

TEST_CASE("Z norm sup location via grid search oracle") {
    // z(xi) = e^{-xi}: maximize <xi>^k e^{-xi} by dense grid search
    FrequencyGrid g = build_grid({1e-3, 100.0, 32, 1.0 / 64.0});
    double kappa = 0.64;
    auto p = profile_from(Equation::KDV4, kappa, g, [](double x) { return cplx(std::exp(-x), 0); },
                          [](double x) { return cplx(-std::exp(-x), 0); });
    auto r = weighted_norm_Z(p);
    double best = 0, arg = 0;
    for (double x : g.nodes) {
        double v = std::pow(jbr(x), kappa) * std::exp(-x);
        if (v > best) { best = v; arg = x; }
    }
    CHECK(r.sup_weighted_value == doctest::Approx(best));
    CHECK(r.arg_max_value == doctest::Approx(arg));
}

TEST_CASE("Y norm parts") {
    FrequencyGrid g = build_grid({1e-3, 100.0, 32, 1.0 / 64.0});
    double kappa = 0.3;
    auto zero = zero_profile(Equation::NLS, kappa, g);
    CHECK(weighted_norm_Y(zero).norm_total == 0.0);

    // z = log|xi| inside |xi|<1, 0 outside: value part 1, deriv part 1
    auto p = profile_from(Equation::NLS, kappa, g,
                          [](double x) { return std::abs(x) < 1 ? cplx(std::log(std::abs(x)), 0) : cplx(0, 0); },
                          [](double x) { return std::abs(x) < 1 ? cplx(1.0 / x, 0) : cplx(0, 0); });
    auto r = weighted_norm_Y(p);
    CHECK(r.sup_weighted_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.sup_weighted_deriv == doctest::Approx(1.0).epsilon(1e-9));

    // z = <xi>^-kappa has finite high-frequency parts, computed by grid search
    auto q = profile_from(Equation::NLS, kappa, g,
                          [&](double x) { return cplx(std::pow(jbr(x), -kappa), 0); },
                          [&](double x) { return cplx(-kappa * x * std::pow(jbr(x), -kappa - 2), 0); });
    auto rq = weighted_norm_Y(q);
    double best = 0;
    for (double x : g.nodes) {
        double v = (x >= 1.0) ? std::pow(jbr(x), kappa) * std::pow(jbr(x), -kappa)
                              : std::pow(jbr(x), -kappa) / std::abs(std::log(x));
        best = std::max(best, v);
    }
    CHECK(rq.sup_weighted_value == doctest::Approx(best));
}

TEST_CASE("norm properties: scaling, monotonicity") {
    FrequencyGrid g = build_grid({1e-3, 100.0, 32, 1.0 / 64.0});
    auto p = profile_from(Equation::KDV4, 0.64, g,
                          [](double x) { return cplx(1.0 / (1 + x), 0.3 * std::exp(-x)); },
                          [](double x) { return cplx(-1.0 / sq(1 + x), -0.3 * std::exp(-x)); });
    cplx lam{0.7, -2.1};
    Profile q = p;
    for (auto& v : q.z) v *= lam;
    for (auto& v : q.dz) v *= lam;
    q = make_profile(q.equation, q.kappa, q.grid, q.z, q.dz);
    CHECK(weighted_norm_Z(q).norm_total ==
          doctest::Approx(std::abs(lam) * weighted_norm_Z(p).norm_total));

    // pointwise domination implies norm domination
    Profile h = p;
    for (auto& v : h.z) v *= 0.5;
    for (auto& v : h.dz) v *= 0.5;
    h = make_profile(h.equation, h.kappa, h.grid, h.z, h.dz);
    CHECK(weighted_norm_Z(h).norm_total <= weighted_norm_Z(p).norm_total);
}

TEST_CASE("profile evaluation: nodes, Hermitian rule, interpolation") {
    FrequencyGrid g = build_grid({1e-3, 1000.0, 32, 1.0 / 64.0});
    auto f = [](double x) { return cplx(1.0 / jbr(x), 0.2 / (1 + x * x)); };
    auto df = [](double x) {
        return cplx(-x * std::pow(1 + x * x, -1.5), -0.4 * x / sq(1 + x * x));
    };
    auto p = profile_from(Equation::KDV4, 0.64, g, f, df);

    std::size_t k = g.size() / 2;
    CHECK(evaluate(p, g.nodes[k]) == p.z[k]);
    CHECK(evaluate(p, -g.nodes[k]) == std::conj(p.z[k]));

    // midpoint queries on z = 1/<xi> within 1e-4 relative
    for (double xi : {0.013, 0.37, 2.2, 31.0, 400.0}) {
        std::size_t i = g.lower_bound(xi);
        double mid = 0.5 * (g.nodes[i - 1] + g.nodes[i]);
        cplx got = evaluate(p, mid);
        cplx want = f(mid);
        CHECK(std::abs(got - want) <= 1e-4 * std::abs(want));
    }

    // Hermitian consistency off-node
    for (double xi : {0.9, 7.3, 150.0}) {
        CHECK(evaluate(p, -xi) == std::conj(evaluate(p, xi)));
        CHECK(evaluate_deriv(p, -xi) == -std::conj(evaluate_deriv(p, xi)));
    }

    // interpolation consistency: refining the grid 2x changes little
    FrequencyGrid g2 = build_grid({1e-3, 1000.0, 64, 1.0 / 128.0});
    auto p2 = profile_from(Equation::KDV4, 0.64, g2, f, df);
    double worst = 0;
    for (double xi = 0.011; xi < 900; xi *= 1.37)
        worst = std::max(worst, std::abs(evaluate(p, xi) - evaluate(p2, xi)));
    CHECK(worst < 2e-6);

    // tail model beyond far_cut: power-law continuation
    cplx t1 = evaluate(p, 1500.0);
    CHECK(std::abs(t1) < std::abs(p.z.back()));
    CHECK(std::abs(t1) > 0.0);
}

TEST_CASE("cutoff function") {
    CHECK(chi(0.25) == 0.0);
    CHECK(chi(1.5) == 1.0);
    CHECK(chi(0.75) == doctest::Approx(0.5));  // smoothstep midpoint symmetry
    CHECK(chi(0.5) == 0.0);
    CHECK(chi(1.0) == 1.0);
    // chi' is the exact derivative
    for (double x : {0.55, 0.7, 0.93}) {
        double h = 1e-6;
        CHECK(chi_prime(x) == doctest::Approx((chi(x + h) - chi(x - h)) / (2 * h)).epsilon(1e-6));
    }
    CHECK(bump_low(0.3) == 1.0);
    CHECK(bump_low(1.2) == 0.0);
}

TEST_CASE("mbo phase params") {
    auto [a1, B1] = mbo_phase_params(cplx(0.1, 0), 0.0);
    CHECK(a1 == doctest::Approx(4.7746e-3).epsilon(1e-4));
    CHECK(std::abs(B1 - cplx(0, 2.0674e-4)) < 2e-8);
    auto [a2, B2] = mbo_phase_params(cplx(0, 0), 0.1);
    CHECK(a2 == doctest::Approx(1.1937e-3).epsilon(1e-4));
    CHECK(std::abs(B2) == 0.0);
}

TEST_CASE("ansatz values") {
    // 4KdV: S_A = A chi(xi) + conj(A) chi(-xi)
    auto p4 = make_ansatz(Equation::KDV4, cplx(0.01, 0), cplx(0.01, 0));
    CHECK(eval_ansatz(p4, 2.0) == cplx(0.01, 0));
    CHECK(eval_ansatz(p4, 0.3) == cplx(0, 0));

    // NLS negative branch keeps |S| = |A| and the log-phase rate |A|^2/2pi
    auto pn = make_ansatz(Equation::NLS, cplx(0.05, 0), cplx(0, 0));
    cplx sn = eval_ansatz(pn, -3.0);
    CHECK(std::abs(sn) == doctest::Approx(0.05));
    double beta = 0.05 * 0.05 / (2 * pi);
    CHECK(std::arg(sn / 0.05) == doctest::Approx(-beta * std::log(3.0)).epsilon(1e-9));

    // amplitude threshold enforced
    CHECK_THROWS_AS(make_ansatz(Equation::KDV4, cplx(0.5, 0), cplx(0, 0)), config_error);
}

TEST_CASE("ansatz derivative matches finite differences") {
    // centered differences with one Richardson step (the mKdV correction term
    // oscillates fast enough at xi=20 that plain differences stall at ~1e-2)
    for (auto eq : {Equation::MKDV, Equation::KDV4, Equation::MBO, Equation::NLS}) {
        auto p = make_ansatz(eq, cplx(0.04, 0.02), cplx(0.03, 0.0));
        for (double xi : {2.0, 5.0, 20.0}) {
            double h = 1e-5 * xi;
            auto fd_at = [&](double hh) {
                return (eval_ansatz(p, xi + hh) - eval_ansatz(p, xi - hh)) / (2 * hh);
            };
            cplx fd = (4.0 * fd_at(h / 2) - fd_at(h)) / 3.0;
            cplx an = eval_ansatz_deriv(p, xi);
            double scale = std::abs(eval_ansatz(p, xi)) / xi;
            CHECK(std::abs(an - fd) <= 1e-6 * std::abs(an) + 1e-9 * scale + 1e-16);
        }
    }
}

TEST_CASE("ansatz symmetry and decay structure") {
    // conjugate symmetry for the real-valued equations
    for (auto eq : {Equation::MKDV, Equation::KDV4, Equation::MBO}) {
        auto p = make_ansatz(eq, cplx(0.05, 0.03), cplx(0.02, 0));
        for (double xi : {0.8, 1.7, 12.0}) {
            CHECK(eval_ansatz(p, -xi) == std::conj(eval_ansatz(p, xi)));
        }
    }
    // modulus rigidity: |S| independent of the log-phase rate once the
    // correction term is absent (B = 0 configurations)
    auto pa = make_ansatz(Equation::NLS, cplx(0.05, 0), cplx(0, 0));
    auto pb = make_ansatz(Equation::NLS, cplx(0.05 * std::cos(1.0), 0.05 * std::sin(1.0)), cplx(0, 0));
    for (double xi : {2.0, 9.0, 70.0})
        CHECK(std::abs(eval_ansatz(pa, xi)) == doctest::Approx(std::abs(eval_ansatz(pb, xi))));

    // mKdV second-order term decays as xi^-3
    auto pm = make_ansatz(Equation::MKDV, cplx(0.05, 0), cplx(0.05, 0));
    double prev = 0;
    for (double xi : {4.0, 8.0, 16.0, 32.0}) {
        double nu = 3.0 * 0.05 * 0.05 / (4 * pi);
        cplx lead = 0.05 * expi(-nu * std::log(xi));
        double r = std::abs(eval_ansatz(pm, xi) - lead) * cube(xi);
        if (prev > 0) CHECK(r == doctest::Approx(prev).epsilon(0.05));
        prev = r;
    }
}
