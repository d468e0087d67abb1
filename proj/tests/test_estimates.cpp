#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavelab/estimates.hpp"
#include "wavelab/quadrature.hpp"

using namespace wavelab;

TEST_CASE("kss_sides: zero data flags an undefined ratio")
{
    const RadialGrid g = build_grid(8.0, 256, 0.9, 0.0);
    const DataPair zero = profile("zero", 0.0, 0.0, 1.0, g);
    const auto rep = kss_sides(zero, CoefficientField::zero(), nullptr, 0.25, 1.0, g);
    CHECK(rep.lhs_y == 0.0);
    CHECK(rep.rhs_data == 0.0);
    CHECK_FALSE(rep.ratio_defined);
    CHECK_THROWS_AS(kss_sides(zero, CoefficientField::zero(), nullptr, 0.7, 1.0, g),
                    std::invalid_argument);
}

TEST_CASE("kss_sides ratio is exactly scale invariant in the F = 0 case")
{
    const RadialGrid g = build_grid(16.0, 512, 0.9, 0.0);
    DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const auto r1 = kss_sides(p, CoefficientField::zero(), nullptr, 0.25, 5.0, g);
    DataPair q = scale_to_epsilon(p, g, 0.05);
    const auto r2 = kss_sides(q, CoefficientField::zero(), nullptr, 0.25, 5.0, g);
    REQUIRE(r1.ratio_defined);
    REQUIRE(r2.ratio_defined);
    CHECK(r1.rhs_interaction == 0.0); // no forcing, no coefficient
    CHECK(r2.ratio == doctest::Approx(r1.ratio).epsilon(1e-10));
}

TEST_CASE("kss_sides with a static coefficient produces a finite recorded ratio")
{
    const RadialGrid g = build_grid(14.0, 512, 0.9, 0.1);
    const DataPair p = profile("gaussian", 0.3, 0.0, 1.0, g);
    const CoefficientField h = CoefficientField::static_radial(
        [](double r) { return 0.1 * std::exp(-r * r); },
        [](double r) { return -0.2 * r * std::exp(-r * r); }, 0.1);
    const auto rep = kss_sides(p, h, nullptr, 0.25, 4.0, g);
    CHECK(rep.ratio_defined);
    CHECK(rep.rhs_interaction > 0.0);
    CHECK(rep.ratio > 0.0);
    CHECK(std::isfinite(rep.ratio));
    // mu sweep stays finite across the admissible range
    for (double mu : {0.1, 0.4}) {
        const auto r2 = kss_sides(p, h, nullptr, mu, 4.0, g);
        CHECK(std::isfinite(r2.ratio));
    }
}

TEST_CASE("energy inequality: free wave gives C = 1 within 1e-3")
{
    const RadialGrid g = build_grid(16.0, 2048, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const auto rec =
        energy_inequality_check(p, CoefficientField::zero(), nullptr, 6.0, g);
    CHECK(rec.implied_c == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("energy inequality: forced and perturbed runs stay bounded")
{
    auto exact = [](double t, double r) { return std::exp(-t) * std::exp(-r * r); };
    auto hr = [](double r) { return 0.1 * std::exp(-r * r); };
    const CoefficientField h = CoefficientField::static_radial(
        hr, [](double r) { return -0.2 * r * std::exp(-r * r); }, 0.1);
    const Forcing F = [&](double t, double r) {
        return exact(t, r) - (1.0 - hr(r)) * exact(t, r) * (4.0 * r * r - 6.0);
    };
    std::vector<double> cs;
    for (int nr : {512, 1024}) {
        const RadialGrid g = build_grid(8.0, nr, 0.9, 0.1);
        DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
        for (int i = 0; i < g.nodes(); ++i) p.g[i] = -p.f[i];
        const auto rec = energy_inequality_check(p, h, F, 2.0, g);
        CHECK(rec.implied_c > 0.0);
        CHECK(rec.implied_c < 5.0);
        cs.push_back(rec.implied_c);
    }
    CHECK(std::abs(cs[0] - cs[1]) / cs[1] < 0.2); // stable under refinement
}

TEST_CASE("sobolev constants for the static Gaussian")
{
    const RadialGrid g = build_grid(10.0, 4000, 0.9, 0.0);
    LevelFields lv;
    lv.t = 0.0;
    const int n = g.nodes();
    lv.phi.resize(n);
    lv.phi_t.assign(n, 0.0);
    lv.phi_r.resize(n);
    lv.phi_rr.resize(n);
    lv.phi_tr.assign(n, 0.0);
    lv.phi_tt.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double r = g.radius(i);
        lv.phi[i] = std::exp(-r * r);
        lv.phi_r[i] = -2.0 * r * std::exp(-r * r);
        lv.phi_rr[i] = (4.0 * r * r - 2.0) * std::exp(-r * r);
    }
    const auto rec = sobolev_checks({lv}, g);
    CHECK(rec.counted == 1);
    // sup_r sqrt(r) e^{-r^2} = sqrt(1/2) e^{-1/4} at r = 1/2, over ||grad|| = 2.43023
    CHECK(rec.sup_weighted_value == doctest::Approx(0.55069 / 2.43023).epsilon(1e-3));
    CHECK(rec.hardy_ratio <= 2.0);

    // homogeneity: ratios invariant under phi -> 3 phi
    LevelFields lv3 = lv;
    for (auto& v : lv3.phi) v *= 3.0;
    for (auto& v : lv3.phi_r) v *= 3.0;
    for (auto& v : lv3.phi_rr) v *= 3.0;
    const auto rec3 = sobolev_checks({lv3}, g);
    CHECK(rec3.sup_weighted_value ==
          doctest::Approx(rec.sup_weighted_value).epsilon(1e-12));

    // zero field is skipped with a flag
    LevelFields z = lv;
    for (auto& v : z.phi) v = 0.0;
    for (auto& v : z.phi_r) v = 0.0;
    for (auto& v : z.phi_rr) v = 0.0;
    const auto recz = sobolev_checks({z}, g);
    CHECK(recz.flagged == 1);
    CHECK(recz.counted == 0);
}

TEST_CASE("convolution kernel bound: far field -> 1 and uniform sup over k")
{
    const auto rec = convolution_bound_check({1, 2, 4, 8, 16, 32, 64}, {0.5}, {}, 48);
    double prev_sup = 1e300;
    for (const auto& e : rec.entries) {
        CHECK(e.sup_ratio < 10.0);
        CHECK(e.far_field_dev < 0.01);
        if (e.k > 4) CHECK(e.sup_ratio < prev_sup * 1.05);
        prev_sup = e.sup_ratio;
    }
    CHECK_THROWS_AS(convolution_bound_check({1}, {3.5}, {}, 8), std::invalid_argument);
}

TEST_CASE("line average bound: orthogonal case matches an independent Simpson oracle")
{
    const double gamma = 0.5, xn = 0.3, zn = 1.0;
    const double got = line_average(xn, zn, 0.0, gamma);
    // composite Simpson on the same closed-form integrand
    const int N = 4000;
    double s = 0.0;
    auto f = [&](double th) { return std::pow(xn * xn + th * th * zn * zn, -0.25); };
    for (int i = 0; i < N; ++i) {
        const double a = i / double(N), b = (i + 1) / double(N);
        s += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    CHECK(got == doctest::Approx(s).epsilon(1e-8));
    CHECK(got * std::pow(xn, gamma) < 3.0);

    CHECK_THROWS_AS(line_average(0.3, 1.0, 0.0, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(line_average(0.3, 1.5, 0.0, 0.5), std::invalid_argument);
    // antipodal interior singularity is integrable and finite
    CHECK(std::isfinite(line_average(0.4, 1.0, -1.0, 0.5)));
}
