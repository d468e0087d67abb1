#include "wavelab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "wavelab/common.hpp"
#include "wavelab/initial_data.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {

namespace {

void require_positive_r(double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("multiplier: r must be positive");
}

} // namespace

double MultiplierField::f(double r) const
{
    require_positive_r(r);
    if (variant == Variant::KSS) return std::pow(r / (1.0 + r), param);
    return r / (param + r);
}

double MultiplierField::fp(double r) const
{
    require_positive_r(r);
    if (variant == Variant::KSS) {
        const double k = param;
        return k * std::pow(r, k - 1.0) * std::pow(1.0 + r, -k - 1.0);
    }
    const double d = param + r;
    return param / (d * d);
}

double MultiplierField::f_over_r(double r) const
{
    require_positive_r(r);
    if (variant == Variant::KSS)
        return std::pow(r, param - 1.0) * std::pow(1.0 + r, -param);
    return 1.0 / (param + r);
}

double MultiplierField::dr_f_over_r(double r) const
{
    require_positive_r(r);
    if (variant == Variant::KSS) {
        const double k = param;
        return std::pow(r, k - 2.0) * std::pow(1.0 + r, -k) * (k / (1.0 + r) - 1.0);
    }
    const double d = param + r;
    return -1.0 / (d * d);
}

double MultiplierField::laplacian_f_over_r(double r) const
{
    // radial Laplacian via r^{1-n} d_r ( r^{n-2} (f' - f/r) ), closed form
    require_positive_r(r);
    if (variant == Variant::KSS) {
        const double k = param;
        const double w = k / (1.0 + r) - 1.0;
        return (n - 3.0 + k) * std::pow(r, k - 3.0) * std::pow(1.0 + r, -k) * w -
               k * std::pow(r, k - 2.0) * std::pow(1.0 + r, -k - 1.0) * w -
               k * std::pow(r, k - 2.0) * std::pow(1.0 + r, -k - 2.0);
    }
    const double rho = param;
    const double d = rho + r;
    return -((n - 3.0) * r + (n - 1.0) * rho) / (r * d * d * d);
}

double MultiplierField::trace_pi(double r) const { return fp(r) + (n - 1) * f_over_r(r); }

MultiplierField make_kss(double kappa, int n)
{
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::invalid_argument("make_kss: kappa must lie in (0, 1)");
    if (n < 3)
        throw std::invalid_argument("make_kss: dimension must be >= 3");
    MultiplierField mf;
    mf.variant = MultiplierField::Variant::KSS;
    mf.param = kappa;
    mf.n = n;
    return mf;
}

MultiplierField make_ms(double rho, int n)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("make_ms: rho must be positive");
    if (n < 3)
        throw std::invalid_argument("make_ms: dimension must be >= 3");
    MultiplierField mf;
    mf.variant = MultiplierField::Variant::MS;
    mf.param = rho;
    mf.n = n;
    return mf;
}

MultiplierScalars multiplier_scalars(const MultiplierField& mf, double r)
{
    require_positive_r(r);
    MultiplierScalars s;
    s.f = mf.f(r);
    s.fp = mf.fp(r);
    s.f_over_r_minus_fp = mf.f_over_r(r) - s.fp;
    s.dr_f_over_r = mf.dr_f_over_r(r);
    s.lap_f_over_r = mf.laplacian_f_over_r(r);
    s.trace_pi = mf.trace_pi(r);
    return s;
}

InequalityReport check_pointwise_inequalities(const MultiplierField& mf,
                                              std::span<const double> samples)
{
    InequalityReport rep;
    rep.variant = mf.variant == MultiplierField::Variant::KSS ? "kss" : "ms";
    rep.parameter = mf.param;
    rep.samples = static_cast<long>(samples.size());
    rep.min_margin = 1e300;

    const bool kss = mf.variant == MultiplierField::Variant::KSS;
    if (!kss) {
        const double rho = mf.param;
        for (double r : samples)
            if (r < 0.5 * rho * (1.0 - 1e-12) || r > rho * (1.0 + 1e-12))
                throw std::invalid_argument(
                    "check_pointwise_inequalities: MS samples must lie in [rho/2, rho]");
    }

    const long m = static_cast<long>(samples.size());
    std::vector<double> margins(3 * m, 1e300);
    par::parallel_for(m, [&](std::int64_t idx) {
        const double r = samples[idx];
        if (kss) {
            const double k = mf.param;
            const double lhs1 = mf.f_over_r(r) - mf.fp(r);
            const double rhs1 = (1.0 - k) * std::pow(r, k - 1.0) * std::pow(1.0 + r, -k);
            const double lhs2 = mf.laplacian_f_over_r(r);
            const double rhs2 =
                -k * (1.0 - k) / (std::pow(r, 3.0 - k) * std::pow(1.0 + r, 2.0 + k));
            margins[3 * idx + 0] = lhs1 - rhs1;
            margins[3 * idx + 1] = rhs2 - lhs2;
        } else {
            const double rho = mf.param;
            margins[3 * idx + 0] = mf.fp(r) - 1.0 / (2.0 * (rho + r));
            margins[3 * idx + 1] = (mf.f_over_r(r) - mf.fp(r)) - 1.0 / (3.0 * (rho + r));
            margins[3 * idx + 2] =
                -mf.laplacian_f_over_r(r) - (mf.n - 1.0) / std::pow(rho + r, 3.0);
        }
    });

    for (long idx = 0; idx < m; ++idx) {
        const int nineq = kss ? 2 : 3;
        for (int q = 0; q < nineq; ++q) {
            const double margin = margins[3 * idx + q];
            rep.min_margin = std::min(rep.min_margin, margin);
            // band endpoints attain exact equality; only genuine deficits count
            if (margin < -1e-13) {
                InequalityViolation v;
                v.r = samples[idx];
                v.which = q + 1;
                v.lhs = margin;
                v.rhs = 0.0;
                rep.violations.push_back(v);
            }
        }
    }
    return rep;
}

std::string InequalityReport::to_json() const
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"variant\":\"%s\",\"parameter\":%.17g,\"samples\":%ld,"
                  "\"min_margin\":%.17g,\"violations\":%zu,"
                  "\"max_residual\":null,\"l2_residual\":null,\"refinement_ratio\":null}",
                  variant.c_str(), parameter, samples, min_margin, violations.size());
    return buf;
}

CoeffSample CoeffSample::isotropic(double h, double h_t, double h_r)
{
    CoeffSample c;
    c.hrr = c.hang = h;
    c.dt_hrr = c.dt_hang = h_t;
    c.dr_hrr = c.dr_hang = h_r;
    return c;
}

double CoeffSample::sup_component() const
{
    return std::max({std::abs(h00), std::abs(h0r), std::abs(hrr), std::abs(hang)});
}

TensorSample assemble_densities(double phi, double phi_t, double phi_r,
                                const CoeffSample& h, double F, const MultiplierField& mf,
                                double r)
{
    require_positive_r(r);
    if (h.sup_component() > 0.5)
        throw CoefficientBoundError("assemble_densities: coefficient exceeds 1/2");

    const double lam = -phi_t * phi_t + phi_r * phi_r;  // d^g phi d_g phi
    const double H =
        h.h00 * phi_t * phi_t + 2.0 * h.h0r * phi_t * phi_r + h.hrr * phi_r * phi_r;
    const double hdot0 = h.h00 * phi_t + h.h0r * phi_r;  // h^{0d} d_d phi
    const double hdotr = h.h0r * phi_t + h.hrr * phi_r;  // x^a/r h^{ad} d_d phi

    const double f = mf.f(r);
    const double fp = mf.fp(r);
    const double fr = mf.f_over_r(r);
    const double c = 0.5 * (mf.n - 1.0);

    TensorSample s;
    s.q00 = phi_t * phi_t + 0.5 * lam + hdot0 * phi_t - 0.5 * H;
    s.q0r = phi_t * phi_r + hdot0 * phi_r;
    s.qr0 = phi_r * phi_t - hdotr * phi_t;
    s.qrr = phi_r * phi_r - 0.5 * lam - hdotr * phi_r + 0.5 * H;
    s.p0 = f * s.q0r;
    s.p_rad = f * s.qrr;
    s.pbar0 = s.p0 + c * fr * phi * phi_t + c * fr * hdot0 * phi;
    s.pbar_rad = s.p_rad + c * fr * phi * phi_r - 0.5 * c * mf.dr_f_over_r(r) * phi * phi -
                 c * fr * hdotr * phi;

    const double S = phi_r + c * phi / r;
    const double div_h =
        (h.dt_h00 + h.dr_h0r + (mf.n - 1.0) * h.h0r / r) * phi_t +
        (h.dt_h0r + h.dr_hrr + (mf.n - 1.0) * (h.hrr - h.hang) / r) * phi_r;
    const double rhp = h.dr_h00 * phi_t * phi_t + 2.0 * h.dr_h0r * phi_t * phi_r +
                       h.dr_hrr * phi_r * phi_r;
    const double hgrad2 = h.h0r * phi_t * phi_r + h.hrr * phi_r * phi_r;

    s.rbar = -f * phi_r * F - c * fr * phi * F - f * div_h * S + 0.5 * f * rhp -
             fp * hdotr * S + fr * hdotr * S - fr * hgrad2 + 0.5 * fp * H;
    return s;
}

Scenario constant_scenario(double value)
{
    Scenario sc;
    sc.phi = [value](double, double) { return value; };
    sc.phi_t = [](double, double) { return 0.0; };
    sc.phi_r = [](double, double) { return 0.0; };
    sc.h = [](double, double) { return 0.0; };
    sc.h_r = [](double, double) { return 0.0; };
    sc.F = [](double, double) { return 0.0; };
    return sc;
}

Scenario mms_scenario()
{
    Scenario sc;
    auto ph = [](double t, double r) { return std::exp(-t) * std::exp(-r * r); };
    sc.phi = ph;
    sc.phi_t = [ph](double t, double r) { return -ph(t, r); };
    sc.phi_r = [ph](double t, double r) { return -2.0 * r * ph(t, r); };
    sc.h = [](double, double r) { return 0.1 * std::exp(-r * r); };
    sc.h_r = [](double, double r) { return -0.2 * r * std::exp(-r * r); };
    // F = phi_tt - (1 - h) Lap phi, Lap phi = (4 r^2 - 6) phi
    sc.F = [ph](double t, double r) {
        const double p = ph(t, r);
        return p - (1.0 - 0.1 * std::exp(-r * r)) * (4.0 * r * r - 6.0) * p;
    };
    return sc;
}

Scenario free_wave_scenario(const RadialProfile& f, const RadialProfile& g)
{
    auto oracle = std::make_shared<DalembertOracle>(f, g);
    Scenario sc;
    sc.phi = [oracle](double t, double r) { return oracle->phi(t, r); };
    sc.phi_t = [oracle](double t, double r) { return oracle->phi_t(t, r); };
    sc.phi_r = [oracle](double t, double r) { return oracle->phi_r(t, r); };
    sc.h = [](double, double) { return 0.0; };
    sc.h_r = [](double, double) { return 0.0; };
    sc.F = [](double, double) { return 0.0; };
    return sc;
}

ResidualReport divergence_residual(const Scenario& sc, const MultiplierField& mf,
                                   const RadialGrid& grid, double T)
{
    const int n = grid.nodes();
    const int M = std::max(4, static_cast<int>(std::ceil(T / grid.dt)));
    const double dt = T / M;
    const double dr = grid.dr;
    const double c = 0.5 * (mf.n - 1.0);

    // Pbar field combinations (isotropic coefficient, so hdot0 = 0):
    //   Pbar_0 = f A + c (f/r) B with A = phi_t phi_r, B = phi phi_t
    //   Pbar_r = f C + c (f/r) D - (c/2) d_r(f/r) E
    //   C = qrr, D = (1 - h) phi phi_r, E = phi^2
    // The radial divergence applies the product rule with the multiplier
    // scalars in closed form, so only field combinations see the grid.
    std::vector<double> A((M + 1) * n), B((M + 1) * n);
    par::parallel_for(static_cast<std::int64_t>(M + 1) * n, [&](std::int64_t idx) {
        const int m = static_cast<int>(idx / n);
        const int i = static_cast<int>(idx % n);
        const double t = m * dt, r = grid.radius(i);
        const double pt = sc.phi_t(t, r), pr = sc.phi_r(t, r), ph = sc.phi(t, r);
        A[idx] = pt * pr;
        B[idx] = ph * pt;
    });

    const int i_lo = 5; // excludes the origin collar r < 4 dr plus the FD halo
    const int i_hi = n - 2;

    ResidualReport rep;
    rep.variant = mf.variant == MultiplierField::Variant::KSS ? "kss" : "ms";
    rep.parameter = mf.param;

    double l2 = 0.0, mx = 0.0;
    long count = 0;
    std::vector<double> C(n, 0.0), D(n, 0.0), E(n, 0.0), rhs(n, 0.0), res(n, 0.0);
    for (int m = 1; m < M; ++m) {
        const double t = m * dt;
        par::parallel_for(n - 1, [&](std::int64_t k) {
            const int i = static_cast<int>(k) + 1;
            const double r = grid.radius(i);
            const double ph = sc.phi(t, r), pt = sc.phi_t(t, r), pr = sc.phi_r(t, r);
            const double h = sc.h(t, r), hr = sc.h_r(t, r), F = sc.F(t, r);
            const double lam = -pt * pt + pr * pr;
            C[i] = pr * pr - 0.5 * lam - 0.5 * h * pr * pr;
            D[i] = (1.0 - h) * ph * pr;
            E[i] = ph * ph;
            const CoeffSample cs = CoeffSample::isotropic(h, 0.0, hr);
            const TensorSample ts = assemble_densities(ph, pt, pr, cs, F, mf, r);
            rhs[i] = 0.5 * mf.fp(r) * (pr * pr + pt * pt) -
                     0.5 * c * mf.laplacian_f_over_r(r) * ph * ph + ts.rbar;
        });
        par::parallel_for(i_hi - i_lo + 1, [&](std::int64_t k) {
            const int i = i_lo + static_cast<int>(k);
            const double r = grid.radius(i);
            const double f = mf.f(r), fr_ = mf.f_over_r(r), fp = mf.fp(r);
            const double dfr = mf.dr_f_over_r(r), lap_fr = mf.laplacian_f_over_r(r);
            const double dA = (A[(m + 1) * n + i] - A[(m - 1) * n + i]) / (2.0 * dt);
            const double dB = (B[(m + 1) * n + i] - B[(m - 1) * n + i]) / (2.0 * dt);
            const double dC = (C[i + 1] - C[i - 1]) / (2.0 * dr);
            const double dD = (D[i + 1] - D[i - 1]) / (2.0 * dr);
            const double dE = (E[i + 1] - E[i - 1]) / (2.0 * dr);
            const double lhs = -(f * dA + c * fr_ * dB) // -d_t Pbar_0
                               + (fp + 2.0 * fr_) * C[i] + f * dC
                               + c * ((dfr + 2.0 * fr_ / r) * D[i] + fr_ * dD)
                               - 0.5 * c * (lap_fr * E[i] + dfr * dE);
            res[i] = lhs - rhs[i];
        });
        for (int i = i_lo; i <= i_hi; ++i) {
            const double r = grid.radius(i);
            l2 += res[i] * res[i] * 4.0 * M_PI * r * r * dr * dt;
            mx = std::max(mx, std::abs(res[i]));
            ++count;
        }
    }
    rep.max_residual = mx;
    rep.l2_residual = std::sqrt(l2);
    rep.samples = count;
    return rep;
}

std::string ResidualReport::to_json(double refinement_ratio) const
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"variant\":\"%s\",\"parameter\":%.17g,\"samples\":%ld,"
                  "\"min_margin\":null,\"max_residual\":%.17g,\"l2_residual\":%.17g,"
                  "\"refinement_ratio\":%.17g}",
                  variant.c_str(), parameter, samples, max_residual, l2_residual,
                  refinement_ratio);
    return buf;
}

} // namespace wavelab
