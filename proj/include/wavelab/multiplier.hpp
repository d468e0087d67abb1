#ifndef WAVELAB_MULTIPLIER_HPP
#define WAVELAB_MULTIPLIER_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/initial_data.hpp"

namespace wavelab {

// Radial multiplier f(r) of the vector field X = f(r) x/r: either the
// near-origin choice f = (r/(1+r))^kappa, 0 < kappa < 1, or the dyadic choice
// f = r/(rho + r), rho > 0.
struct MultiplierField {
    enum class Variant { KSS, MS };
    Variant variant = Variant::KSS;
    double param = 0.5; // kappa or rho
    int n = 3;          // spatial dimension; the solver side is n = 3 only

    double f(double r) const;
    double fp(double r) const;
    double f_over_r(double r) const;
    double dr_f_over_r(double r) const;
    double laplacian_f_over_r(double r) const;
    double trace_pi(double r) const; // f' + (n-1) f / r
};

MultiplierField make_kss(double kappa, int n = 3);
MultiplierField make_ms(double rho, int n = 3);

struct MultiplierScalars {
    double f = 0.0, fp = 0.0;
    double f_over_r_minus_fp = 0.0;
    double dr_f_over_r = 0.0;
    double lap_f_over_r = 0.0;
    double trace_pi = 0.0;
};

MultiplierScalars multiplier_scalars(const MultiplierField& mf, double r);

// Pointwise lower/upper bounds the two multiplier choices satisfy:
// KSS: f/r - f' >= (1-k) r^{k-1}/(1+r)^k and Lap(f/r) <= -k(1-k)/(r^{3-k}(1+r)^{2+k});
// MS on the band rho/2 <= r <= rho: f' >= 1/(2(rho+r)),
// f/r - f' >= 1/(3(rho+r)), -Lap(f/r) >= (n-1)/(rho+r)^3.
struct InequalityViolation {
    double r = 0.0;
    int which = 0; // 1..3 within the variant's list
    double lhs = 0.0, rhs = 0.0;
};

struct InequalityReport {
    std::string variant;
    double parameter = 0.0;
    long samples = 0;
    double min_margin = 0.0;
    std::vector<InequalityViolation> violations;

    std::string to_json() const;
};

InequalityReport check_pointwise_inequalities(const MultiplierField& mf,
                                              std::span<const double> samples);

// Radial sample of a symmetric coefficient tensor h^{ab} = hrr xx + hang (I-xx),
// h^{0r} along x, plus the first derivatives the remainder needs. isotropic()
// is the default shape diag(0, h, h, h) of the h(phi) Lap phi application.
struct CoeffSample {
    double h00 = 0, h0r = 0, hrr = 0, hang = 0;
    double dt_h00 = 0, dt_h0r = 0, dt_hrr = 0, dt_hang = 0;
    double dr_h00 = 0, dr_h0r = 0, dr_hrr = 0, dr_hang = 0;

    static CoeffSample isotropic(double h, double h_t = 0.0, double h_r = 0.0);
    double sup_component() const;
};

// Energy-momentum tensor components in the (t, radial) block, the contracted
// momentum densities, the modified densities and the remainder.
struct TensorSample {
    double q00 = 0, q0r = 0, qr0 = 0, qrr = 0;
    double p0 = 0, p_rad = 0;
    double pbar0 = 0, pbar_rad = 0;
    double rbar = 0;
};

TensorSample assemble_densities(double phi, double phi_t, double phi_r,
                                const CoeffSample& h, double F, const MultiplierField& mf,
                                double r);

// Closed-form space-time fields feeding the divergence-identity check; F must
// be the wave-operator combination of (phi, h) so the fields genuinely solve
// the equation with that forcing.
struct Scenario {
    std::function<double(double, double)> phi, phi_t, phi_r;
    std::function<double(double, double)> h, h_r; // isotropic coefficient
    std::function<double(double, double)> F;
};

Scenario constant_scenario(double value);
Scenario mms_scenario(); // phi = e^{-t} e^{-r^2}, h = 0.1 e^{-r^2}
Scenario free_wave_scenario(const RadialProfile& f, const RadialProfile& g);

struct ResidualReport {
    std::string variant;
    double parameter = 0.0;
    long samples = 0;
    double max_residual = 0.0;
    double l2_residual = 0.0;

    std::string to_json(double refinement_ratio = 0.0) const;
};

// LHS d^alpha Pbar_alpha by finite differences of the assembled density fields
// (multiplier scalars differentiated in closed form), RHS from the identity;
// the scan excludes an origin collar of width 4 dr and the time endpoints.
ResidualReport divergence_residual(const Scenario& sc, const MultiplierField& mf,
                                   const RadialGrid& grid, double T);

} // namespace wavelab

#endif
