#include "wavelab/initial_data.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

#include "wavelab/common.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

namespace {

double bump_shape(double s) // exp(-1/(1-s^2)) on |s|<1, extended by zero
{
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

// One symmetrized lobe: G(r) = base((r-c)/w) + (c > 0 ? base((r+c)/w) : 0).
template <class F>
double sym_eval(const F& base, double r, double c, double w)
{
    double v = base((r - c) / w);
    if (c != 0.0) v += base((r + c) / w);
    return v;
}

} // namespace

double RadialProfile::value(double r) const
{
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Gaussian: {
        auto base = [](double s) { return std::exp(-s * s); };
        return amplitude * sym_eval(base, r, center, width);
    }
    case Kind::Bump: {
        auto base = [](double s) { return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0; };
        return amplitude * sym_eval(base, r, center, width);
    }
    case Kind::Ripple: {
        auto base = [](double s) { return std::exp(-s * s) * std::cos(4.0 * M_PI * s); };
        return amplitude * sym_eval(base, r, center, width);
    }
    }
    return 0.0;
}

double RadialProfile::deriv(double r) const
{
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Gaussian: {
        auto base = [](double s) { return -2.0 * s * std::exp(-s * s); };
        return amplitude / width * sym_eval(base, r, center, width);
    }
    case Kind::Bump: {
        auto base = [](double s) {
            if (std::abs(s) >= 1.0) return 0.0;
            const double q = 1.0 - s * s;
            return std::exp(1.0 - 1.0 / q) * (-2.0 * s / (q * q));
        };
        return amplitude / width * sym_eval(base, r, center, width);
    }
    case Kind::Ripple: {
        auto base = [](double s) {
            return std::exp(-s * s) *
                   (-2.0 * s * std::cos(4.0 * M_PI * s) - 4.0 * M_PI * std::sin(4.0 * M_PI * s));
        };
        return amplitude / width * sym_eval(base, r, center, width);
    }
    }
    return 0.0;
}

double RadialProfile::deriv2(double r) const
{
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Gaussian: {
        auto base = [](double s) { return (4.0 * s * s - 2.0) * std::exp(-s * s); };
        return amplitude / (width * width) * sym_eval(base, r, center, width);
    }
    case Kind::Bump: {
        auto base = [](double s) {
            if (std::abs(s) >= 1.0) return 0.0;
            const double q = 1.0 - s * s;
            const double a = -2.0 * s / (q * q);
            const double b = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
            return std::exp(1.0 - 1.0 / q) * (a * a + b);
        };
        return amplitude / (width * width) * sym_eval(base, r, center, width);
    }
    case Kind::Ripple: {
        auto base = [](double s) {
            const double c = std::cos(4.0 * M_PI * s), sn = std::sin(4.0 * M_PI * s);
            const double e = std::exp(-s * s);
            return e * ((4.0 * s * s - 2.0 - 16.0 * M_PI * M_PI) * c +
                        16.0 * M_PI * s * sn);
        };
        return amplitude / (width * width) * sym_eval(base, r, center, width);
    }
    }
    return 0.0;
}

RadialProfile make_profile(const std::string& kind, double amplitude, double center,
                           double width)
{
    RadialProfile p;
    if (kind == "zero")
        p.kind = RadialProfile::Kind::Zero;
    else if (kind == "gaussian")
        p.kind = RadialProfile::Kind::Gaussian;
    else if (kind == "bump")
        p.kind = RadialProfile::Kind::Bump;
    else if (kind == "ripple")
        p.kind = RadialProfile::Kind::Ripple;
    else
        throw std::invalid_argument("profile: unknown kind '" + kind + "'");
    if (p.kind != RadialProfile::Kind::Zero && !(width > 0.0))
        throw std::invalid_argument("profile: width must be positive");
    if (center < 0.0)
        throw std::invalid_argument("profile: center must be nonnegative");
    p.amplitude = amplitude;
    p.center = center;
    p.width = width;
    return p;
}

DataPair profile_pair(const RadialProfile& f_prof, const RadialProfile& g_prof,
                      const RadialGrid& grid)
{
    DataPair pair;
    pair.f_prof = f_prof;
    pair.g_prof = g_prof;
    pair.analytic = true;
    const int n = grid.nodes();
    pair.f.resize(n);
    pair.g.resize(n);
    par::parallel_for(n, [&](std::int64_t i) {
        pair.f[i] = f_prof.value(grid.radius(static_cast<int>(i)));
        pair.g[i] = g_prof.value(grid.radius(static_cast<int>(i)));
    });
    return pair;
}

DataPair profile(const std::string& kind, double amplitude, double center, double width,
                 const RadialGrid& grid)
{
    RadialProfile f = make_profile(kind, amplitude, center, width);
    RadialProfile g; // zero
    return profile_pair(f, g, grid);
}

DataPair sampled_pair(std::vector<double> f, std::vector<double> g)
{
    DataPair pair;
    pair.f = std::move(f);
    pair.g = std::move(g);
    pair.analytic = false;
    return pair;
}

NormRecord sobolev_norms(const DataPair& pair, const RadialGrid& grid)
{
    const auto w2 = power_cell_weights(grid, 2.0);
    auto [fr, frr] = radial_derivatives(pair.f, grid);
    auto [gr, grr] = radial_derivatives(pair.g, grid);
    // For even data the origin gradient vanishes; stencils on sampled data
    // honor that only approximately, so pin it.
    fr[0] = 0.0;
    gr[0] = 0.0;
    const auto hess_f = hessian_frobenius_sq(fr, frr, grid);

    NormRecord rec;
    rec.l2_f = l2_norm_radial(pair.f, grid, w2);
    rec.h1dot_f = l2_norm_radial(fr, grid, w2);
    const double hess_int =
        4.0 * M_PI * weighted_sum(w2, hess_f); // ||Hess f||_L2^2
    rec.h1_grad_f = std::sqrt(rec.h1dot_f * rec.h1dot_f + hess_int);
    const double g_l2 = l2_norm_radial(pair.g, grid, w2);
    const double g_h1dot = l2_norm_radial(gr, grid, w2);
    rec.h1_g = std::sqrt(g_l2 * g_l2 + g_h1dot * g_h1dot);
    rec.epsilon = rec.h1_grad_f + rec.h1_g;
    return rec;
}

DataPair scale_to_epsilon(const DataPair& pair, const RadialGrid& grid, double eps_target)
{
    if (eps_target < 0.0)
        throw std::invalid_argument("scale_to_epsilon: eps_target must be nonnegative");
    DataPair out = pair;
    if (eps_target == 0.0) {
        for (auto& v : out.f) v = 0.0;
        for (auto& v : out.g) v = 0.0;
        out.f_prof.amplitude = 0.0;
        out.g_prof.amplitude = 0.0;
        return out;
    }
    const double eps0 = sobolev_norms(pair, grid).epsilon;
    if (!(eps0 > 0.0))
        throw CannotScaleError("scale_to_epsilon: pair has zero data norm");
    const double m = eps_target / eps0;
    for (auto& v : out.f) v *= m;
    for (auto& v : out.g) v *= m;
    out.f_prof.amplitude *= m;
    out.g_prof.amplitude *= m;
    return out;
}

// ---------------------------------------------------------------------------
// Mollifier
// ---------------------------------------------------------------------------

namespace {

// Cumulative P(x) = int_0^x t rho_base(t) dt on [0, 1], dense table with
// per-cell Gauss-Legendre and Catmull-Rom evaluation.
class BasePrimitive {
public:
    BasePrimitive()
    {
        const int n = 4096;
        table_.resize(n + 1, 0.0);
        dx_ = 1.0 / n;
        for (int i = 0; i < n; ++i) {
            const double a = i * dx_, b = (i + 1) * dx_;
            table_[i + 1] =
                table_[i] + gauss_legendre([](double t) { return t * bump_shape(t); }, a, b, 1);
        }
    }

    double operator()(double x) const
    {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return table_.back();
        const double s = x / dx_;
        int i = static_cast<int>(s);
        if (i >= static_cast<int>(table_.size()) - 1) i = static_cast<int>(table_.size()) - 2;
        const double u = s - i;
        const double p0 = i > 0 ? table_[i - 1] : 2.0 * table_[0] - table_[1];
        const double p1 = table_[i];
        const double p2 = table_[i + 1];
        const double p3 = i + 2 < static_cast<int>(table_.size())
                              ? table_[i + 2]
                              : 2.0 * table_.back() - table_[table_.size() - 2];
        const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
        const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
        const double c = -0.5 * p0 + 0.5 * p2;
        return ((a * u + b) * u + c) * u + p1;
    }

private:
    std::vector<double> table_;
    double dx_ = 0.0;
};

const BasePrimitive& base_primitive()
{
    static BasePrimitive p;
    return p;
}

double base_normalization()
{
    static std::once_flag flag;
    static double z = 0.0;
    std::call_once(flag, [] {
        const double m =
            integrate([](double t) { return t * t * bump_shape(t); }, 0.0, 1.0, 1e-15, 1e-13);
        z = 1.0 / (4.0 * M_PI * m);
    });
    return z;
}

} // namespace

double MollifierKernel::normalization() { return base_normalization(); }

double MollifierKernel::density(double radius) const
{
    const double jd = j;
    return base_normalization() * jd * jd * jd * bump_shape(jd * radius);
}

double MollifierKernel::shell_weight(double a, double b) const
{
    // int_a^b t rho_j(t) dt = Z * j * [P(j b) - P(j a)]
    const auto& P = base_primitive();
    const double lo = std::max(0.0, a) * j;
    const double hi = std::max(0.0, b) * j;
    if (hi <= lo) return 0.0;
    return base_normalization() * j * (P(hi) - P(lo));
}

double MollifierKernel::mass_by_quadrature() const
{
    const double jd = j;
    return integrate(
        [this, jd](double t) { return 4.0 * M_PI * t * t * density(t); }, 0.0, 1.0 / jd,
        1e-14, 1e-12);
}

double MollifierKernel::second_moment() const
{
    const double jd = j;
    return integrate(
        [this](double t) { return 4.0 * M_PI * t * t * t * t * density(t); }, 0.0, 1.0 / jd,
        1e-15, 1e-12);
}

MollifierKernel mollifier_kernel(int j)
{
    if (j < 1)
        throw std::invalid_argument("mollifier_kernel: scale index must be >= 1");
    MollifierKernel k;
    k.j = j;
    return k;
}

namespace {

// Shell-formula convolution at one node against an arbitrary evaluator of f.
double mollify_at(const std::function<double(double)>& f, const MollifierKernel& kern,
                  double r)
{
    const double eps = kern.support_radius();
    if (r <= 0.0) {
        return 4.0 * M_PI *
               gauss_legendre([&](double s) { return s * s * kern.density(s) * f(s); }, 0.0,
                              eps, 8);
    }
    const double lo = std::max(0.0, r - eps);
    const double hi = r + eps;
    auto integrand = [&](double s) {
        return s * f(s) * kern.shell_weight(std::abs(r - s), r + s);
    };
    // integrand is smooth across s = r; split there anyway to keep panels short
    double v = 0.0;
    if (r < hi && r > lo) {
        v = gauss_legendre(integrand, lo, r, 6) + gauss_legendre(integrand, r, hi, 6);
    } else {
        v = gauss_legendre(integrand, lo, hi, 12);
    }
    return 2.0 * M_PI / r * v;
}

} // namespace

std::vector<double> mollify_profile(const std::function<double(double)>& f, int j,
                                    const RadialGrid& grid)
{
    const MollifierKernel kern = mollifier_kernel(j);
    const int n = grid.nodes();
    std::vector<double> out(n);
    par::parallel_for(n, [&](std::int64_t i) {
        out[i] = mollify_at(f, kern, grid.radius(static_cast<int>(i)));
    });
    return out;
}

std::vector<double> mollify_samples(std::span<const double> f, int j, const RadialGrid& grid)
{
    if (static_cast<int>(f.size()) != grid.nodes())
        throw std::invalid_argument("mollify_samples: length mismatch");
    if (!(grid.dr < 1.0 / (4.0 * j)))
        throw ResolutionError("mollify_samples: grid too coarse for scale index (need dr < 1/(4j))");
    auto interp = [&](double s) {
        if (s <= 0.0) return f[0];
        const double x = s / grid.dr;
        int i = static_cast<int>(x);
        if (i >= grid.nr) return f[grid.nr];
        const double u = x - i;
        return (1.0 - u) * f[i] + u * f[i + 1];
    };
    const MollifierKernel kern = mollifier_kernel(j);
    const int n = grid.nodes();
    std::vector<double> out(n);
    par::parallel_for(n, [&](std::int64_t i) {
        out[i] = mollify_at(interp, kern, grid.radius(static_cast<int>(i)));
    });
    return out;
}

DataPair mollify_pair(const DataPair& pair, int j, const RadialGrid& grid)
{
    DataPair out;
    out.analytic = false;
    if (pair.analytic) {
        out.f = pair.f_prof.is_zero()
                    ? std::vector<double>(grid.nodes(), 0.0)
                    : mollify_profile([&](double s) { return pair.f_prof.value(s); }, j, grid);
        out.g = pair.g_prof.is_zero()
                    ? std::vector<double>(grid.nodes(), 0.0)
                    : mollify_profile([&](double s) { return pair.g_prof.value(s); }, j, grid);
    } else {
        out.f = mollify_samples(pair.f, j, grid);
        out.g = mollify_samples(pair.g, j, grid);
    }
    return out;
}

void write_pair_csv(const DataPair& pair, const RadialGrid& grid, const std::string& path)
{
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp)
        throw std::runtime_error("write_pair_csv: cannot open " + path);
    std::fprintf(fp, "r,f,g\n");
    for (int i = 0; i < grid.nodes(); ++i)
        std::fprintf(fp, "%.17g,%.17g,%.17g\n", grid.radius(i), pair.f[i], pair.g[i]);
    std::fclose(fp);
}

} // namespace wavelab
