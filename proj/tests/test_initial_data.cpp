#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavelab/common.hpp"
#include "wavelab/initial_data.hpp"
#include "wavelab/quadrature.hpp"

using namespace wavelab;

namespace {

double gaussian_l2(double A, double w) // ||A exp(-r^2/w^2)||_L2, closed form
{
    return A * std::sqrt(M_PI * std::sqrt(M_PI / 8.0) * w * w * w);
}

double gaussian_h1dot(double A, double w) // ||grad||_L2
{
    return A * std::sqrt(16.0 * M_PI * (3.0 / 32.0) * std::sqrt(M_PI / 2.0) * w);
}

} // namespace

TEST_CASE("profile values and validation")
{
    const RadialGrid g = build_grid(8.0, 512, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    CHECK(p.f[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.f_prof.value(2.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));

    const DataPair z = profile("gaussian", 0.0, 0.0, 1.0, g);
    for (double v : z.f) CHECK(v == 0.0);

    CHECK_THROWS_AS(profile("bump", 1.0, 0.0, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(profile("vortex", 1.0, 0.0, 1.0, g), std::invalid_argument);
}

TEST_CASE("profile derivative descriptors match finite differences")
{
    for (const char* kind : {"gaussian", "bump", "ripple"}) {
        const RadialProfile p = make_profile(kind, 0.8, 1.5, 0.9);
        const double h = 1e-5;
        for (double r : {0.3, 0.9, 1.4, 2.0, 2.4}) {
            const double fd1 = (p.value(r + h) - p.value(r - h)) / (2 * h);
            const double fd2 = (p.value(r + h) - 2 * p.value(r) + p.value(r - h)) / (h * h);
            CHECK(p.deriv(r) == doctest::Approx(fd1).epsilon(1e-6));
            CHECK(p.deriv2(r) == doctest::Approx(fd2).epsilon(2e-4));
        }
    }
}

TEST_CASE("sobolev norms against the Gaussian integral oracle")
{
    const RadialGrid g = build_grid(10.0, 4000, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const NormRecord rec = sobolev_norms(p, g);
    CHECK(rec.l2_f == doctest::Approx(gaussian_l2(1.0, 1.0)).epsilon(1e-5));
    CHECK(rec.l2_f == doctest::Approx(1.40310).epsilon(1e-4));
    CHECK(rec.h1dot_f == doctest::Approx(gaussian_h1dot(1.0, 1.0)).epsilon(1e-5));
    CHECK(rec.h1dot_f == doctest::Approx(2.43023).epsilon(1e-4));
    CHECK(rec.h1_g == 0.0);
    CHECK(rec.epsilon == rec.h1_grad_f + rec.h1_g);

    DataPair z = profile("zero", 0.0, 0.0, 1.0, g);
    const NormRecord zr = sobolev_norms(z, g);
    CHECK(zr.epsilon == 0.0);
}

TEST_CASE("scale_to_epsilon round-trips and is a scalar multiple")
{
    const RadialGrid g = build_grid(10.0, 2000, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const double eps0 = sobolev_norms(p, g).epsilon;

    const DataPair s = scale_to_epsilon(p, g, 0.05);
    CHECK(sobolev_norms(s, g).epsilon == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(s.f[0] / p.f[0] == doctest::Approx(0.05 / eps0).epsilon(1e-12));

    const DataPair zz = scale_to_epsilon(p, g, 0.0);
    CHECK(sobolev_norms(zz, g).epsilon == 0.0);

    const DataPair zero = profile("zero", 0.0, 0.0, 1.0, g);
    CHECK_THROWS_AS(scale_to_epsilon(zero, g, 0.1), CannotScaleError);
}

TEST_CASE("mollifier kernel: unit mass, support, normalization constant")
{
    CHECK(MollifierKernel::normalization() == doctest::Approx(2.2671167396).epsilon(1e-8));
    for (int k = 0; k <= 8; ++k) {
        const MollifierKernel kern = mollifier_kernel(1 << k);
        CHECK(std::abs(kern.mass_by_quadrature() - 1.0) < 1e-10);
        CHECK(kern.support_radius() == doctest::Approx(std::pow(2.0, -k)));
        CHECK(kern.density(kern.support_radius() * 1.0001) == 0.0);
    }
    CHECK_THROWS_AS(mollifier_kernel(0), std::invalid_argument);
    // second moment scales like j^-2
    const double m2_1 = mollifier_kernel(1).second_moment();
    CHECK(m2_1 == doctest::Approx(0.33508696).epsilon(1e-6));
    CHECK(mollifier_kernel(4).second_moment() == doctest::Approx(m2_1 / 16.0).epsilon(1e-10));
}

TEST_CASE("mollification reproduces constants and shifts |x|^2 by the moment")
{
    const RadialGrid g = build_grid(2.0, 512, 0.9, 0.0);
    const int j = 8;

    // locally constant: value c wherever the kernel ball sits inside the plateau
    auto c_fn = [](double) { return 3.25; };
    const auto mc = mollify_profile(c_fn, j, g);
    for (int i = 0; i < g.nodes(); ++i)
        CHECK(mc[i] == doctest::Approx(3.25).epsilon(1e-9));

    // |x|^2 -> |x|^2 + m2(j) exactly (quadratic expansion identity)
    const double m2 = mollifier_kernel(j).second_moment();
    auto q_fn = [](double r) { return r * r; };
    const auto mq = mollify_profile(q_fn, j, g);
    for (int i = 0; i < g.nodes(); ++i) {
        const double r = g.radius(i);
        CHECK(mq[i] == doctest::Approx(r * r + m2).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("mollified sampled path needs resolution dr < 1/(4j)")
{
    const RadialGrid g = build_grid(2.0, 128, 0.9, 0.0); // dr = 1/64
    std::vector<double> v(g.nodes(), 1.0);
    CHECK_THROWS_AS(mollify_samples(v, 32, g), ResolutionError);
    const auto ok = mollify_samples(v, 8, g);
    CHECK(ok[10] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("paper rate: 2^k ||rho_{2^k} * phi - phi|| / ||phi||_H1 stays bounded")
{
    const RadialGrid g = build_grid(3.0, 3000, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const NormRecord rec = sobolev_norms(p, g);
    const double h1 = std::sqrt(rec.l2_f * rec.l2_f + rec.h1dot_f * rec.h1dot_f);
    const auto w2 = power_cell_weights(g, 2.0);

    double prev = 1e300;
    for (int k = 0; k <= 8; ++k) {
        const auto fk = mollify_profile([&](double r) { return p.f_prof.value(r); }, 1 << k, g);
        std::vector<double> diff(g.nodes());
        for (int i = 0; i < g.nodes(); ++i) diff[i] = fk[i] - p.f[i];
        const double q = std::pow(2.0, k) * l2_norm_radial(diff, g, w2) / h1;
        CHECK(q < 1.0);     // bounded, uniformly in k
        CHECK(q < prev * 1.05);
        prev = q;
    }
}

TEST_CASE("mollification does not increase the data norm (Young)")
{
    const RadialGrid g = build_grid(6.0, 1500, 0.9, 0.0);
    RadialProfile f = make_profile("gaussian", 0.7, 0.0, 1.0);
    RadialProfile gg = make_profile("ripple", 0.4, 0.0, 1.3);
    const DataPair p = profile_pair(f, gg, g);
    const double eps = sobolev_norms(p, g).epsilon;
    for (int k : {0, 2, 4}) {
        const DataPair pk = mollify_pair(p, 1 << k, g);
        const double epsk = sobolev_norms(pk, g).epsilon;
        CHECK(epsk <= eps * 1.005);
    }
}

TEST_CASE("telescoping data increments decay")
{
    const RadialGrid g = build_grid(3.0, 1024, 0.9, 0.0);
    const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
    const auto w2 = power_cell_weights(g, 2.0);
    std::vector<double> prev = mollify_profile([&](double r) { return p.f_prof.value(r); }, 1, g);
    double prev_inc = 1e300;
    double total = 0.0;
    for (int k = 1; k <= 6; ++k) {
        auto cur = mollify_profile([&](double r) { return p.f_prof.value(r); }, 1 << k, g);
        auto [dprev, d2p] = radial_derivatives(prev, g);
        auto [dcur, d2c] = radial_derivatives(cur, g);
        std::vector<double> gd(g.nodes());
        for (int i = 0; i < g.nodes(); ++i) gd[i] = dcur[i] - dprev[i];
        const double inc = l2_norm_radial(gd, g, w2);
        CHECK(inc < prev_inc * 1.05); // decreasing increments
        total += inc;
        prev_inc = inc;
        prev = std::move(cur);
    }
    CHECK(std::isfinite(total));
}
