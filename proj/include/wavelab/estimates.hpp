#ifndef WAVELAB_ESTIMATES_HPP
#define WAVELAB_ESTIMATES_HPP

#include <string>
#include <vector>

#include "wavelab/norms.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {

// Separated sides of the space-time estimate at weight exponent mu:
//   lhs_y = (1+T)^{-2mu} ( ||r^{-3/2+mu} phi||^2 + ||r^{-1/2+mu} dphi||^2 )
//   lhs_z = (log(2+T))^{-1} (same with an extra <r>^{-mu})
//   rhs   = ||grad f||^2 + ||g||^2 + six-term interaction integral.
struct EstimateReport {
    double mu = 0.25;
    double T = 0.0;
    double lhs_y = 0.0, lhs_z = 0.0;
    double rhs_data = 0.0, rhs_interaction = 0.0;
    double ratio = 0.0;
    bool ratio_defined = false;

    std::string to_json() const;
};

EstimateReport kss_sides(const DataPair& pair, const CoefficientField& h, const Forcing& F,
                         double mu, double T, const RadialGrid& grid);

struct EnergyInequalityRecord {
    double lhs = 0.0;          // ||dphi(T)||^2
    double rhs_data = 0.0;     // ||dphi(0)||^2
    double rhs_integral = 0.0; // iint (|phi_t F| + |dh||dphi|^2)
    double implied_c = 0.0;
};

EnergyInequalityRecord energy_inequality_check(const DataPair& pair,
                                               const CoefficientField& h, const Forcing& F,
                                               double T, const RadialGrid& grid);

// Empirical constants of the radial Sobolev bounds, per snapshot and summed up:
// sup r^{1/2}|phi| / ||grad phi||, sup |phi| / E2, sup r^{1/2}<r>^{1/2}|dphi| / E2,
// plus the Hardy ratio ||phi/r|| / ||grad phi||.
struct SobolevRecord {
    double sup_weighted_value = 0.0;
    double sup_value_over_e2 = 0.0;
    double sup_weighted_gradient = 0.0;
    double hardy_ratio = 0.0;
    int flagged = 0; // zero-denominator snapshots skipped
    int counted = 0;
};

SobolevRecord sobolev_checks(const std::vector<LevelFields>& snapshots,
                             const RadialGrid& grid);

// sup_x |x|^alpha (rho_k * |.|^{-alpha})(x) over a log-spaced x grid scaled to
// the kernel, plus the worst far-field deviation of the ratio from 1 on
// |x| >= 10/k; and the line-average bound sup |x|^gamma int_0^1 |x+theta z|^-gamma.
struct ConvolutionEntry {
    int k = 1;
    double alpha = 0.0;
    double sup_ratio = 0.0;
    double far_field_dev = 0.0;
};

struct LineAverageEntry {
    double gamma = 0.0;
    double sup_ratio = 0.0;
};

struct ConvolutionRecord {
    std::vector<ConvolutionEntry> entries;
    std::vector<LineAverageEntry> line_entries;
};

double line_average(double x_norm, double z_norm, double cos_angle, double gamma);

ConvolutionRecord convolution_bound_check(const std::vector<int>& k_list,
                                          const std::vector<double>& alpha_list,
                                          const std::vector<double>& gamma_list = {0.25, 0.5,
                                                                                   0.75},
                                          int x_count = 64);

} // namespace wavelab

#endif
