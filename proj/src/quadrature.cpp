#include "wavelab/quadrature.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "wavelab/parallel.hpp"

namespace wavelab {

std::vector<double> power_cell_weights(const RadialGrid& grid, double p)
{
    if (p <= -1.0)
        throw std::invalid_argument("power_cell_weights: exponent must exceed -1");
    const int n = grid.nodes();
    std::vector<double> w(n, 0.0);
    const double dr = grid.dr;
    auto powp = [p](double r, double q) { return r <= 0.0 ? 0.0 : std::pow(r, p + q); };
    for (int i = 0; i + 1 < n; ++i) {
        const double a = grid.radius(i), b = grid.radius(i + 1);
        const double m1 = (powp(b, 1.0) - powp(a, 1.0)) / (p + 1.0);
        const double m2 = (powp(b, 2.0) - powp(a, 2.0)) / (p + 2.0);
        w[i] += (b * m1 - m2) / dr;
        w[i + 1] += (m2 - a * m1) / dr;
    }
    return w;
}

double weighted_sum(std::span<const double> weights, std::span<const double> values)
{
    if (weights.size() != values.size())
        throw std::invalid_argument("weighted_sum: length mismatch");
    return par::parallel_sum(static_cast<std::int64_t>(weights.size()),
                             [&](std::int64_t i) { return weights[i] * values[i]; });
}

double l2_norm_radial(std::span<const double> values, const RadialGrid& grid,
                      std::span<const double> r2w)
{
    if (static_cast<int>(values.size()) != grid.nodes())
        throw std::invalid_argument("l2_norm_radial: length mismatch");
    const double s = par::parallel_sum(static_cast<std::int64_t>(values.size()),
                                       [&](std::int64_t i) {
                                           return r2w[i] * values[i] * values[i];
                                       });
    return std::sqrt(4.0 * M_PI * s);
}

namespace {

struct GslGuard {
    gsl_error_handler_t* old;
    GslGuard() : old(gsl_set_error_handler_off()) {}
    ~GslGuard() { gsl_set_error_handler(old); }
};

double call_fn(double x, void* params)
{
    auto* f = static_cast<const std::function<double(double)>*>(params);
    return (*f)(x);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs, double epsrel)
{
    GslGuard guard;
    gsl_function gf;
    gf.function = &call_fn;
    gf.params = const_cast<std::function<double(double)>*>(&f);
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)>
        ws(gsl_integration_workspace_alloc(4096), &gsl_integration_workspace_free);
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qag(&gf, a, b, epsabs, epsrel, 4096, GSL_INTEG_GAUSS61,
                                     ws.get(), &result, &abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error("integrate: GSL QAG failed");
    return result;
}

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double epsabs, double epsrel)
{
    GslGuard guard;
    gsl_function gf;
    gf.function = &call_fn;
    gf.params = const_cast<std::function<double(double)>*>(&f);
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)>
        ws(gsl_integration_workspace_alloc(8192), &gsl_integration_workspace_free);
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qags(&gf, a, b, epsabs, epsrel, 8192, ws.get(), &result,
                                      &abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error("integrate_singular: GSL QAGS failed");
    return result;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

} // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels)
{
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        const double half = 0.5 * h;
        double s = 0.0;
        for (int k = 0; k < 8; ++k)
            s += kGlw[k] * (f(mid - half * kGlx[k]) + f(mid + half * kGlx[k]));
        total += s * half;
    }
    return total;
}

} // namespace wavelab
