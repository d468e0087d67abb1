#ifndef WAVELAB_QUADRATURE_HPP
#define WAVELAB_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "wavelab/grid.hpp"

namespace wavelab {

// Nodal weights for int_0^rmax r^p L(r) dr with L the piecewise-linear
// interpolant of nodal values. Each cell moment int r^p and int r^{p+1} is
// closed-form, so integrable singularities (p > -1) at the origin cost nothing.
std::vector<double> power_cell_weights(const RadialGrid& grid, double p);

// Fixed-order dot product of weights and values; reduction order follows the
// process execution policy.
double weighted_sum(std::span<const double> weights, std::span<const double> values);

// sqrt(4 pi * int r^2 v^2 dr) on the grid.
double l2_norm_radial(std::span<const double> values, const RadialGrid& grid,
                      std::span<const double> r2_weights);

// Adaptive 1-D integration (GSL QAG / QAGS behind the scenes).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs = 1e-12, double epsrel = 1e-10);
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double epsabs = 1e-12, double epsrel = 1e-10);

// Composite Gauss-Legendre (16-point panels), for smooth integrands on small
// intervals where adaptivity is overkill.
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int panels = 1);

} // namespace wavelab

#endif
