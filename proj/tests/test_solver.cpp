#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavelab/common.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/solver.hpp"

using namespace wavelab;

namespace {

// L2 error of the final solver level against an evaluator of the exact phi.
double final_l2_error(const SolveOutcome& out, const RadialGrid& g,
                      const std::function<double(double, double)>& exact)
{
    const LevelFields lf = make_level_fields(out.final_state, g);
    std::vector<double> diff(g.nodes());
    for (int i = 0; i < g.nodes(); ++i)
        diff[i] = lf.phi[i] - exact(out.final_state.t, g.radius(i));
    const auto w2 = power_cell_weights(g, 2.0);
    return l2_norm_radial(diff, g, w2);
}

} // namespace

TEST_CASE("d'Alembert oracle basics")
{
    const RadialGrid g = build_grid(12.0, 256, 0.9, 0.0);
    const DataPair zero = profile("zero", 0.0, 0.0, 1.0, g);
    CHECK(dalembert_free(zero, 1.0, 0.5) == 0.0);

    // g = 0: phi(t, 0) = f(t) + t f'(t)
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    for (double t : {0.3, 1.0, 2.5}) {
        const double expect = std::exp(-t * t) * (1.0 - 2.0 * t * t);
        CHECK(dalembert_free(p, t, 0.0) == doctest::Approx(expect).epsilon(1e-10));
    }

    // strong Huygens: zero strictly inside the backward cone of the support
    for (double r : {0.5, 1.0, 2.0})
        CHECK(std::abs(dalembert_free(p, 10.0, r)) < 1e-12);

    CHECK_THROWS_AS(dalembert_free(p, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("d'Alembert derivative evaluators are consistent with differences")
{
    DalembertOracle o(make_profile("gaussian", 1.0, 0.0, 1.0),
                      make_profile("gaussian", 0.3, 0.0, 1.4));
    const double h = 1e-6;
    for (double t : {0.4, 1.7})
        for (double r : {0.25, 1.0, 3.2}) {
            const double dt_fd = (o.phi(t + h, r) - o.phi(t - h, r)) / (2 * h);
            const double dr_fd = (o.phi(t, r + h) - o.phi(t, r - h)) / (2 * h);
            CHECK(o.phi_t(t, r) == doctest::Approx(dt_fd).epsilon(1e-6));
            CHECK(o.phi_r(t, r) == doctest::Approx(dr_fd).epsilon(1e-6));
        }
}

TEST_CASE("zero data stays zero")
{
    const RadialGrid g = build_grid(10.0, 256, 0.9, 0.0);
    const DataPair zero = profile("zero", 0.0, 0.0, 1.0, g);
    const auto out = solve_linear(zero, CoefficientField::zero(), nullptr, 5.0, g, {});
    CHECK(out.status == SolveStatus::Completed);
    for (double v : out.final_state.u) CHECK(v == 0.0);

    Nonlinearity nl;
    nl.a = 1.0;
    nl.lambda = 1.0;
    const auto qout = solve_quasilinear(zero, nl, 5.0, g, {});
    CHECK(qout.status == SolveStatus::Completed);
    for (double v : qout.final_state.u) CHECK(v == 0.0);
}

TEST_CASE("free wave converges to the d'Alembert oracle at second order")
{
    const double T = 5.0;
    std::vector<double> errs;
    for (int nr : {512, 1024, 2048}) {
        const RadialGrid g = build_grid(12.0, nr, 0.9, 0.0);
        const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
        const auto out = solve_linear(p, CoefficientField::zero(), nullptr, T, g, {});
        REQUIRE(out.status == SolveStatus::Completed);
        errs.push_back(
            final_l2_error(out, g, [&](double t, double r) { return dalembert_free(p, t, r); }));
    }
    CHECK(errs[0] / errs[1] > 3.5);
    CHECK(errs[0] / errs[1] < 4.5);
    CHECK(errs[1] / errs[2] > 3.5);
    CHECK(errs[1] / errs[2] < 4.5);
}

TEST_CASE("manufactured solution recovers second order with h != 0")
{
    // phi* = exp(-t) exp(-r^2), h = 0.1 exp(-r^2), F := phi*_tt - (1-h) Lap phi*
    auto exact = [](double t, double r) { return std::exp(-t) * std::exp(-r * r); };
    auto lap = [](double t, double r) {
        return std::exp(-t) * std::exp(-r * r) * (4.0 * r * r - 6.0);
    };
    auto hr = [](double r) { return 0.1 * std::exp(-r * r); };
    const CoefficientField h = CoefficientField::static_radial(
        hr, [](double r) { return -0.2 * r * std::exp(-r * r); }, 0.1);
    const Forcing F = [&](double t, double r) {
        return exact(t, r) - (1.0 - hr(r)) * lap(t, r);
    };

    std::vector<double> errs;
    for (int nr : {256, 512, 1024}) {
        const RadialGrid g = build_grid(8.0, nr, 0.9, 0.1);
        DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
        p.g_prof = make_profile("gaussian", -1.0, 0.0, 1.0);
        for (int i = 0; i < g.nodes(); ++i) p.g[i] = -p.f[i];
        const auto out = solve_linear(p, h, F, 2.0, g, {});
        REQUIRE(out.status == SolveStatus::Completed);
        errs.push_back(final_l2_error(out, g, exact));
    }
    CHECK(errs[0] / errs[1] > 3.5);
    CHECK(errs[0] / errs[1] < 4.5);
    CHECK(errs[1] / errs[2] > 3.5);
    CHECK(errs[1] / errs[2] < 4.5);
}

TEST_CASE("quasilinear manufactured solution converges at second order")
{
    // same phi*, h = 0.1 phi, quadratic forcing folded into the extra term:
    // extra = phi*_tt - (1 - 0.1 phi*) Lap phi* - a phi*_t^2 - b phi*_r^2
    auto exact = [](double t, double r) { return std::exp(-t) * std::exp(-r * r); };
    Nonlinearity nl;
    nl.a = 0.5;
    nl.b = 0.25;
    nl.h_kind = Nonlinearity::HKind::Linear;
    nl.lambda = 0.1;
    const Forcing extra = [&](double t, double r) {
        const double ph = exact(t, r);
        const double lap = ph * (4.0 * r * r - 6.0);
        const double pt = -ph;
        const double pr = -2.0 * r * ph;
        return ph - (1.0 - 0.1 * ph) * lap - 0.5 * pt * pt - 0.25 * pr * pr;
    };
    std::vector<double> errs;
    for (int nr : {256, 512, 1024}) {
        const RadialGrid g = build_grid(8.0, nr, 0.9, 0.5);
        DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
        p.g_prof = make_profile("gaussian", -1.0, 0.0, 1.0);
        for (int i = 0; i < g.nodes(); ++i) p.g[i] = -p.f[i];
        const auto out = solve_quasilinear(p, nl, 2.0, g, {}, extra);
        REQUIRE(out.status == SolveStatus::Completed);
        errs.push_back(final_l2_error(out, g, exact));
    }
    CHECK(errs[0] / errs[1] > 3.2);
    CHECK(errs[0] / errs[1] < 4.8);
    CHECK(errs[1] / errs[2] > 3.2);
    CHECK(errs[1] / errs[2] < 4.8);
}

TEST_CASE("small-data quasilinear run stays near the free wave")
{
    const RadialGrid g = build_grid(18.0, 1024, 0.9, 0.5);
    DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const DataPair scaled = scale_to_epsilon(p, g, 0.01);

    Nonlinearity nl;
    nl.a = 1.0;
    nl.lambda = 1.0;
    const auto qout = solve_quasilinear(scaled, nl, 10.0, g, {});
    REQUIRE(qout.status == SolveStatus::Completed);

    const auto lout = solve_linear(scaled, CoefficientField::zero(), nullptr, 10.0, g, {});
    double maxdev = 0.0;
    for (int i = 0; i < g.nodes(); ++i)
        maxdev = std::max(maxdev, std::abs(qout.final_state.u[i] - lout.final_state.u[i]));
    // deviation from the linear run is quadratic in the data size
    CHECK(maxdev > 0.0);
    CHECK(maxdev < 50.0 * 0.01 * 0.01);
}

TEST_CASE("large-data quasilinear run reports blow-up")
{
    const RadialGrid g = build_grid(30.0, 1200, 0.9, 0.5);
    DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    DataPair big = scale_to_epsilon(p, g, 0.8);
    Nonlinearity nl;
    nl.a = 1.0;
    nl.b = 60.0;
    nl.lambda = 1.0;
    const auto out = solve_quasilinear(big, nl, 100.0, g, {});
    CHECK(out.status == SolveStatus::Blowup);
    CHECK(out.t_event > 0.0);
    CHECK(out.t_event < 100.0);
}

TEST_CASE("finite propagation speed holds to round-off")
{
    const RadialGrid g = build_grid(20.0, 1024, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 0.5, g);
    const double T = 5.0;
    const auto out = solve_linear(p, CoefficientField::zero(), nullptr, T, g, {});
    // data decay below double precision outside r ~ 4; no signal past r > 4 + T
    for (int i = 0; i < g.nodes(); ++i)
        if (g.radius(i) > 4.0 + T + 0.5)
            CHECK(std::abs(out.final_state.u[i]) < 1e-13);
}

TEST_CASE("free-wave energy is conserved")
{
    const RadialGrid g = build_grid(18.0, 4096, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    double e0 = -1.0, emin = 1e300, emax = 0.0;
    std::vector<LevelSink> sinks;
    sinks.push_back([&](const LevelFields& lv) {
        const double e = quadratic_energy(lv, g);
        if (e0 < 0.0) e0 = e;
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    });
    const auto out = solve_linear(p, CoefficientField::zero(), nullptr, 10.0, g, sinks);
    REQUIRE(out.status == SolveStatus::Completed);
    CHECK((emax - emin) / e0 < 1e-4);
}

TEST_CASE("admissible but fast coefficient reports a CFL violation")
{
    // h = phi < 0 raises the wave speed; the grid was built for speed 1, so the
    // run leaves the stable regime while still inside the |h| <= 1/2 ball
    const RadialGrid g = build_grid(10.0, 512, 0.9, 0.0);
    DataPair p = profile("gaussian", -0.3, 0.0, 2.0, g);
    Nonlinearity nl;
    nl.h_kind = Nonlinearity::HKind::Linear;
    nl.lambda = 1.0;
    const auto out = solve_quasilinear(p, nl, 2.0, g, {});
    CHECK(out.status == SolveStatus::CflViolation);
    CHECK(out.criterion == "cfl");
}

TEST_CASE("positive coefficient slows waves and never trips the CFL check")
{
    // speed^2 = 1 - h <= 1 for h >= 0; a grid built for unit speed stays stable
    const RadialGrid g = build_grid(10.0, 256, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const CoefficientField h = CoefficientField::static_radial(
        [](double r) { return 0.4 * std::exp(-r * r); }, nullptr, 0.4);
    const auto out = solve_linear(p, h, nullptr, 2.0, g, {});
    CHECK(out.status == SolveStatus::Completed);
}

TEST_CASE("linear solver rejects coefficient beyond 1/2")
{
    const RadialGrid g = build_grid(10.0, 256, 0.9, 0.5);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const CoefficientField bad =
        CoefficientField::static_radial([](double) { return 0.75; }, nullptr, 0.75);
    CHECK_THROWS_AS(solve_linear(p, bad, nullptr, 1.0, g, {}), CoefficientBoundError);
}
