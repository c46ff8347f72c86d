// Error-function core, oscillatory moments, the 1D panel integrator, the
// brute-force oracle and the stationary-phase helper.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssp/cerf.hpp"
#include "ssp/integrand.hpp"
#include "ssp/osc1d.hpp"
#include "ssp/stationary_phase.hpp"

using namespace ssp;

namespace {

// plain adaptive Simpson used as a self-contained reference
cplx simpson_ref(const std::function<cplx(double)>& f, double a, double b, int n = 20001) {
    if (n % 2 == 0) ++n;
    double h = (b - a) / (n - 1);
    cplx s = f(a) + f(b);
    for (int i = 1; i + 1 < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * (h / 3.0);
}

}  // namespace

TEST_CASE("complex erf agrees with quadrature of its definition") {
    // erf(z) = (2/sqrt(pi)) int_0^1 z e^{-(zt)^2} dt along the straight ray
    for (cplx z : {cplx(1.0, 0.0), cplx(0.3, 0.3), cplx(2.0, -2.0), cplx(4.4, 4.4), cplx(0.0, 1.0)}) {
        cplx ref = simpson_ref([&](double t) { return 2.0 / std::sqrt(pi) * z * std::exp(-(z * t) * (z * t)); },
                               0.0, 1.0);
        CHECK(std::abs(cerf(z) - ref) < 1e-10 * (1.0 + std::abs(ref)));
    }
    CHECK(cerf(cplx(1.0, 0)).real() == doctest::Approx(std::erf(1.0)).epsilon(1e-14));
    CHECK(cerf(cplx(7.0, 0)).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fresnel antiderivative") {
    for (double alpha : {0.5, 3.0, -40.0, 900.0}) {
        for (double u : {0.2, 1.0, 2.5}) {
            cplx ref = simpson_ref([&](double t) { return expi(alpha * t * t); }, 0.0, u,
                                   40001);
            CHECK(std::abs(fresnel_F(alpha, u) - ref) < 1e-8);
        }
    }
    // half-line Fresnel squared: (int_0^inf e^{2 i eta y^2} dy)^2 = (pi/8 eta) e^{i pi/2}
    double eta = 17.0;
    cplx half = fresnel_F(2.0 * eta, 50.0);  // effectively infinite upper limit
    cplx lim = 0.5 * std::sqrt(pi / (2.0 * eta)) * expi(pi / 4.0);
    CHECK(std::abs(half - lim) < 2e-3);
    CHECK(std::abs(lim * lim - pi / (8.0 * eta) * expi(pi / 2.0)) < 1e-15);
}

TEST_CASE("osc1d on quadratic phases") {
    // int_0^3 cos(x)/(1+x^2) e^{i(7x^2-11x)} dx against Simpson
    auto env = [](double x) { return cplx(std::cos(x) / (1 + x * x), 0.1 * x); };
    auto ph = PhaseSpec::quad(7.0, -11.0);
    auto r = integrate_osc1d(env, ph, 0.0, 3.0);
    cplx ref = simpson_ref([&](double x) { return env(x) * expi(7 * x * x - 11 * x); }, 0.0, 3.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - ref) < 1e-8);

    // strongly oscillatory: alpha = 4000 over [0, 2]; compare with fine Simpson
    auto ph2 = PhaseSpec::quad(4000.0, 0.0);
    auto r2 = integrate_osc1d(env, ph2, 0.0, 2.0);
    cplx ref2 = simpson_ref([&](double x) { return env(x) * expi(4000 * x * x); }, 0.0, 2.0,
                            800001);
    CHECK(r2.converged);
    CHECK(std::abs(r2.value - ref2) < 1e-7);
}

TEST_CASE("osc1d on a cubic phase via Levin/general path") {
    auto env = [](double x) { return cplx(1.0 / (1 + 0.1 * x * x), 0.0); };
    auto g = [](double x) { return x * x * x - 20.0 * x; };
    auto gp = [](double x) { return 3 * x * x - 20.0; };
    // stationary points at +-sqrt(20/3)
    double s = std::sqrt(20.0 / 3.0);
    auto ph = PhaseSpec::general(g, gp, {-s, s});
    auto r = integrate_osc1d(env, ph, -9.0, 9.0);
    cplx ref = simpson_ref([&](double x) { return env(x) * expi(g(x)); }, -9.0, 9.0, 2000001);
    CHECK(r.converged);
    CHECK(std::abs(r.value - ref) < 3e-7);
}

TEST_CASE("oracle zero factors give zero") {
    Integrand in;
    in.equation = Equation::KDV4;
    in.truncation = 10.0;
    for (int i = 0; i < 4; ++i) in.factors.push_back([](double) { return cplx(0, 0); });
    CHECK(std::abs(oracle_bruteforce(in, 0.5, 32, 200)) == 0.0);
}

TEST_CASE("oracle matches a separable closed form") {
    // NLS phase with Gaussian-like annular factors: compare against nested
    // Simpson reference (dimension 2, smooth integrand).
    auto bump = [](double x) {
        double t = (std::abs(x) - 1.5) / 1.0;
        return (std::abs(t) < 1) ? cplx(std::exp(-1.0 / (1 - t * t)), 0) : cplx(0, 0);
    };
    Integrand in;
    in.equation = Equation::NLS;
    in.truncation = 6.0;
    in.factors = {bump, bump, bump};
    double eta = 0.7;
    cplx got = oracle_bruteforce(in, eta, 32, 2400);
    auto inner = [&](double y1) {
        return simpson_ref(
            [&](double y2) {
                double ys[2] = {y1, y2};
                return in.amplitude(eta, ys) * expi(in.phase_arg(eta, ys));
            },
            -6.0, 6.0, 1201);
    };
    cplx ref = simpson_ref(inner, -6.0, 6.0, 1201);
    CHECK(std::abs(got - ref) < 1e-6 * (1 + std::abs(ref)));
}

TEST_CASE("stationary phase leading term") {
    // d=1, phi=x^2, psi=1, lambda=100 -> sqrt(pi/100) e^{i pi/4}
    auto phi1 = [](const std::vector<double>& x) { return x[0] * x[0]; };
    auto psi1 = [](const std::vector<double>&) { return cplx(1, 0); };
    cplx v = stationary_phase_leading(phi1, psi1, {0.0}, 100.0);
    CHECK(v.real() == doctest::Approx(0.12533).epsilon(1e-3));
    CHECK(v.imag() == doctest::Approx(0.12533).epsilon(1e-3));

    // d=2 hyperbolic phase p1 p2 with Gaussian amplitude; the oscillatory
    // integral has the closed form pi / sqrt(1 + lam^2/4)
    auto phi2 = [](const std::vector<double>& x) { return x[0] * x[1]; };
    auto psi2 = [](const std::vector<double>& x) {
        return cplx(std::exp(-x[0] * x[0] - x[1] * x[1]), 0);
    };
    double lam = 900.0;
    cplx v2 = stationary_phase_leading(phi2, psi2, {0.0, 0.0}, lam);
    cplx exact = pi / std::sqrt(1.0 + lam * lam / 4.0);
    CHECK(std::abs(v2 - exact) < 1e-5 * std::abs(exact));
    CHECK(std::abs(v2 - cplx(2 * pi / lam, 0)) < 1e-4 * std::abs(v2));

    // degenerate phase x^4 -> error
    auto phi4 = [](const std::vector<double>& x) { return std::pow(x[0], 4); };
    CHECK_THROWS_AS(stationary_phase_leading(phi4, psi1, {0.0}, 100.0), numeric_error);
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec q;
    q.validate();
    q.oscillation_resolution = 3;
    CHECK_THROWS_AS(q.validate(), config_error);
}
