#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavelab/common.hpp"
#include "wavelab/grid.hpp"
#include "wavelab/quadrature.hpp"

using namespace wavelab;

TEST_CASE("build_grid computes spacing and CFL time step")
{
    const RadialGrid g = build_grid(10.0, 1000, 0.9, 1.0 / 6.0);
    CHECK(g.dr == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(g.dt == doctest::Approx(0.009 / std::sqrt(7.0 / 6.0)).epsilon(1e-14));

    const RadialGrid g0 = build_grid(10.0, 1000, 0.9, 0.0);
    CHECK(g0.dt == doctest::Approx(0.009).epsilon(1e-15));
}

TEST_CASE("build_grid rejects degenerate input")
{
    CHECK_THROWS_AS(build_grid(10.0, 0, 0.9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(-1.0, 100, 0.9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(10.0, 100, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(10.0, 100, 0.9, 0.6), CoefficientBoundError);
}

TEST_CASE("radial derivatives are exact on quadratics")
{
    const RadialGrid g = build_grid(5.0, 100, 0.9, 0.0);
    std::vector<double> v(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) {
        const double r = g.radius(i);
        v[i] = 3.0 + 2.0 * r + r * r;
    }
    auto [d1, d2] = radial_derivatives(v, g);
    for (int i = 0; i < g.nodes(); ++i) {
        CHECK(d1[i] == doctest::Approx(2.0 + 2.0 * g.radius(i)).epsilon(1e-11));
        CHECK(d2[i] == doctest::Approx(2.0).epsilon(1e-9));
    }

    std::vector<double> c(g.nodes(), 7.5);
    auto [e1, e2] = radial_derivatives(c, g);
    for (int i = 0; i < g.nodes(); ++i) {
        CHECK(std::abs(e1[i]) < 1e-12);
        CHECK(std::abs(e2[i]) < 1e-10);
    }
}

TEST_CASE("radial derivatives converge at second order on a Gaussian")
{
    auto max_err = [](int nr) {
        const RadialGrid g = build_grid(6.0, nr, 0.9, 0.0);
        std::vector<double> v(g.nodes());
        for (int i = 0; i < g.nodes(); ++i)
            v[i] = std::exp(-g.radius(i) * g.radius(i));
        auto [d1, d2] = radial_derivatives(v, g);
        double e = 0.0;
        for (int i = 0; i < g.nodes(); ++i) {
            const double r = g.radius(i);
            const double ex1 = -2.0 * r * std::exp(-r * r);
            const double ex2 = (4.0 * r * r - 2.0) * std::exp(-r * r);
            e = std::max(e, std::abs(d1[i] - ex1));
            e = std::max(e, std::abs(d2[i] - ex2));
        }
        return e;
    };
    const double e1 = max_err(200), e2 = max_err(400), e3 = max_err(800);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
    CHECK(e2 / e3 > 3.5);
    CHECK(e2 / e3 < 4.5);
}

TEST_CASE("radial derivatives reject wrong lengths")
{
    const RadialGrid g = build_grid(5.0, 100, 0.9, 0.0);
    std::vector<double> bad(g.nodes() - 1, 0.0);
    CHECK_THROWS_AS(radial_derivatives(bad, g), std::invalid_argument);
}

TEST_CASE("hessian Frobenius norm for simple radial fields")
{
    const RadialGrid g = build_grid(4.0, 64, 0.9, 0.0);
    const int n = g.nodes();

    // phi = r^2: phi_r = 2r, phi_rr = 2 -> 12 everywhere (Hess = 2 Id)
    std::vector<double> pr(n), prr(n, 2.0);
    for (int i = 0; i < n; ++i) pr[i] = 2.0 * g.radius(i);
    auto h = hessian_frobenius_sq(pr, prr, g);
    for (int i = 0; i < n; ++i)
        CHECK(h[i] == doctest::Approx(12.0).epsilon(1e-13));

    // zero field
    std::vector<double> z(n, 0.0);
    auto hz = hessian_frobenius_sq(z, z, g);
    for (double v : hz) CHECK(v == 0.0);

    // phi = exp(-r^2) at r = 1: (4 + 8) e^{-2}
    std::vector<double> gr(n), grr(n);
    for (int i = 0; i < n; ++i) {
        const double r = g.radius(i);
        gr[i] = -2.0 * r * std::exp(-r * r);
        grr[i] = (4.0 * r * r - 2.0) * std::exp(-r * r);
    }
    auto hg = hessian_frobenius_sq(gr, grr, g);
    const int i1 = 16; // r = 1 exactly (dr = 1/16)
    CHECK(g.radius(i1) == doctest::Approx(1.0));
    CHECK(hg[i1] == doctest::Approx(12.0 * std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("hessian integral matches an adaptive quadrature oracle for Gaussians")
{
    // ||Hess phi||_L2^2 with phi = exp(-r^2/w^2), measure 4 pi r^2 dr
    for (double w : {0.7, 1.0, 1.6}) {
        const RadialGrid g = build_grid(8.0 * w, 2048, 0.9, 0.0);
        std::vector<double> phi(g.nodes());
        for (int i = 0; i < g.nodes(); ++i) {
            const double r = g.radius(i);
            phi[i] = std::exp(-r * r / (w * w));
        }
        auto [pr, prr] = radial_derivatives(phi, g);
        pr[0] = 0.0;
        auto hess = hessian_frobenius_sq(pr, prr, g);
        const auto w2 = power_cell_weights(g, 2.0);
        const double got = 4.0 * M_PI * weighted_sum(w2, hess);

        const double oracle = integrate(
            [w](double r) {
                const double e = std::exp(-r * r / (w * w));
                const double d1 = -2.0 * r / (w * w) * e;
                const double d2 = (4.0 * r * r / (w * w * w * w) - 2.0 / (w * w)) * e;
                const double q = r > 0 ? d1 / r : d2;
                return 4.0 * M_PI * r * r * (d2 * d2 + 2.0 * q * q);
            },
            0.0, 8.0 * w, 1e-13, 1e-12);
        CHECK(got == doctest::Approx(oracle).epsilon(0.01));
    }
}

TEST_CASE("discrete L2 norms converge at order >= 2 to quadrature oracle")
{
    auto l2_of = [](int nr) {
        const RadialGrid g = build_grid(8.0, nr, 0.9, 0.0);
        std::vector<double> v(g.nodes());
        for (int i = 0; i < g.nodes(); ++i)
            v[i] = std::exp(-g.radius(i) * g.radius(i));
        const auto w2 = power_cell_weights(g, 2.0);
        return l2_norm_radial(v, g, w2);
    };
    const double oracle = std::sqrt(
        integrate([](double r) { return 4.0 * M_PI * r * r * std::exp(-2.0 * r * r); }, 0.0,
                  8.0, 1e-14, 1e-13));
    const double e1 = std::abs(l2_of(128) - oracle);
    const double e2 = std::abs(l2_of(256) - oracle);
    const double e3 = std::abs(l2_of(512) - oracle);
    CHECK(e1 / e2 > 3.0);
    CHECK(e2 / e3 > 3.0);
}

TEST_CASE("snapshot derived fields keep u[0] = 0 and the origin limits")
{
    const RadialGrid g = build_grid(4.0, 128, 0.9, 0.0);
    FieldSnapshot snap;
    snap.t = 0.0;
    snap.u.resize(g.nodes());
    snap.u_t.resize(g.nodes());
    snap.u_tt.resize(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) {
        const double r = g.radius(i);
        snap.u[i] = r * std::exp(-r * r);      // phi = exp(-r^2)
        snap.u_t[i] = 2.0 * r * std::exp(-r * r);
        snap.u_tt[i] = 0.0;
    }
    CHECK(snap.u[0] == 0.0);
    const LevelFields lf = make_level_fields(snap, g);
    CHECK(lf.phi[0] == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(lf.phi_t[0] == doctest::Approx(2.0).epsilon(5e-3));
    CHECK(lf.phi_r[0] == 0.0);
    CHECK(lf.phi_rr[0] == doctest::Approx(-2.0).epsilon(5e-2));
    const int i1 = 32; // r = 1
    CHECK(lf.phi[i1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(lf.phi_r[i1] == doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-3));

    // the origin extrapolations are second order: refine by 2, error / ~4
    auto origin_errs = [](int nr) {
        const RadialGrid gg = build_grid(4.0, nr, 0.9, 0.0);
        FieldSnapshot s;
        s.t = 0.0;
        s.u.resize(gg.nodes());
        s.u_t.assign(gg.nodes(), 0.0);
        for (int i = 0; i < gg.nodes(); ++i) {
            const double r = gg.radius(i);
            s.u[i] = r * std::exp(-r * r);
        }
        const LevelFields f = make_level_fields(s, gg);
        return std::pair{std::abs(f.phi[0] - 1.0), std::abs(f.phi_rr[0] + 2.0)};
    };
    auto [c1, c2] = origin_errs(128);
    auto [f1, f2] = origin_errs(256);
    CHECK(c1 / f1 > 3.0);
    CHECK(c2 / f2 > 3.0);
}
