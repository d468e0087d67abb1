#ifndef WAVELAB_INITIAL_DATA_HPP
#define WAVELAB_INITIAL_DATA_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wavelab/grid.hpp"

namespace wavelab {

// Analytic descriptor of a radial profile; all kinds are smooth and even.
// For center > 0 the profile is symmetrized (image term at -center) so the
// extension through the origin stays smooth.
struct RadialProfile {
    enum class Kind { Zero, Gaussian, Bump, Ripple };

    Kind kind = Kind::Zero;
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;

    double value(double r) const;
    double deriv(double r) const;
    double deriv2(double r) const;
    bool is_zero() const { return kind == Kind::Zero || amplitude == 0.0; }
};

RadialProfile make_profile(const std::string& kind, double amplitude, double center,
                           double width);

// The data pair (f, g): analytic descriptors plus samples on a grid. Pairs
// produced by restarts carry samples only.
struct DataPair {
    RadialProfile f_prof, g_prof;
    std::vector<double> f, g;
    bool analytic = false;
};

DataPair profile(const std::string& kind, double amplitude, double center, double width,
                 const RadialGrid& grid);
DataPair profile_pair(const RadialProfile& f_prof, const RadialProfile& g_prof,
                      const RadialGrid& grid);
DataPair sampled_pair(std::vector<double> f, std::vector<double> g);

struct NormRecord {
    double l2_f = 0.0;      // ||f||_L2
    double h1dot_f = 0.0;   // ||grad f||_L2
    double h1_grad_f = 0.0; // ||grad f||_H1
    double h1_g = 0.0;      // ||g||_H1
    double epsilon = 0.0;   // ||grad f||_H1 + ||g||_H1
};

NormRecord sobolev_norms(const DataPair& pair, const RadialGrid& grid);

// Scalar multiplication to hit the target epsilon; the data norm is
// homogeneous of degree one, so the multiplier is eps_target / eps.
DataPair scale_to_epsilon(const DataPair& pair, const RadialGrid& grid, double eps_target);

// Unit-mass kernel rho_j(x) = j^3 rho(jx), rho the standard bump
// Z exp(-1/(1-|x|^2)) on |x| < 1.
struct MollifierKernel {
    int j = 1;

    double support_radius() const { return 1.0 / j; }
    double density(double radius) const;                // rho_j at |x| = radius
    double shell_weight(double a, double b) const;      // int_a^b t rho_j(t) dt
    double mass_by_quadrature() const;                  // independent check of unit mass
    double second_moment() const;                       // int |y|^2 rho_j dy

    static double normalization();                      // Z of the base bump
};

MollifierKernel mollifier_kernel(int j);

// Exact 3-D radial convolution by the shell formula
//   (rho_j * f)(r) = (2 pi / r) int s f(s) [int_{|r-s|}^{r+s} t rho_j(t) dt] ds,
// with the r -> 0 limit 4 pi int s^2 rho_j(s) f(s) ds.
std::vector<double> mollify_profile(const std::function<double(double)>& f, int j,
                                    const RadialGrid& grid);
// Sampled path: f known only at grid nodes (linear interpolation between them);
// requires dr < 1/(4j) so the kernel is resolved.
std::vector<double> mollify_samples(std::span<const double> f, int j, const RadialGrid& grid);

// Dispatch on whether the pair carries analytic descriptors; returns the
// mollified pair sampled on the grid.
DataPair mollify_pair(const DataPair& pair, int j, const RadialGrid& grid);

void write_pair_csv(const DataPair& pair, const RadialGrid& grid, const std::string& path);

} // namespace wavelab

#endif
