#ifndef WAVELAB_SOLVER_HPP
#define WAVELAB_SOLVER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/initial_data.hpp"

namespace wavelab {

// Variable coefficient h(t,r) of d^2_t phi - Lap phi + h Lap phi = F, with the
// pointwise derivative evaluators the estimate integrands need.
struct CoefficientField {
    std::function<double(double, double)> h;   // (t, r)
    std::function<double(double, double)> h_t; // may be null (treated as 0)
    std::function<double(double, double)> h_r;
    double sup_abs = 0.0;          // declared sup |h|
    double weighted_grad_sup = 0.0; // sup r^{1/2}<r>^{1/2}|dh|, reporting only

    static CoefficientField zero();
    static CoefficientField static_radial(std::function<double(double)> h_of_r,
                                          std::function<double(double)> hr_of_r,
                                          double sup_abs, double weighted_grad_sup = 0.0);
};

using Forcing = std::function<double(double, double)>; // F(t, r)

// Quadratic nonlinearity F = a (d_t phi)^2 + b |grad phi|^2 and the coefficient
// law h(phi), either lambda*phi or lambda*phi^2. h(0) = 0 by construction.
struct Nonlinearity {
    enum class HKind { Linear, Quadratic };
    double a = 0.0;
    double b = 0.0;
    HKind h_kind = HKind::Linear;
    double lambda = 0.0;

    double h_of(double phi) const
    {
        return h_kind == HKind::Linear ? lambda * phi : lambda * phi * phi;
    }
    bool trivial() const { return a == 0.0 && b == 0.0 && lambda == 0.0; }
};

enum class SolveStatus { Completed, Blowup, CflViolation };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Completed;
    double t_event = 0.0;               // blow-up / violation time, or T
    std::string criterion;              // which validity check fired
    FieldSnapshot final_state;
    double initial_energy_sq = 0.0;     // 1-D quadratic energy of u at t = 0
    double final_energy_sq = 0.0;
};

using LevelSink = std::function<void(const LevelFields&)>;

// Explicit leapfrog on u = r*phi: u^{n+1} = 2u^n - u^{n-1} + dt^2 [(1-h) u_rr + r F],
// first step by second-order Taylor using the PDE at t = 0. Every accepted time
// level is streamed to the sinks in order.
SolveOutcome solve_linear(const DataPair& pair, const CoefficientField& h, const Forcing& F,
                          double T, const RadialGrid& grid,
                          const std::vector<LevelSink>& sinks);

// Same update with h = h(phi^n) frozen at the current level and
// F = a phi_t^2 + b phi_r^2 extrapolated to the current level. Validity check
// per step: finite values, sup|h(phi)| <= 1/2, quadratic energy below 1e3x its
// initial value; first failure -> Blowup(t). extra_forcing, when set, is added
// to F (manufactured-solution hook).
SolveOutcome solve_quasilinear(const DataPair& pair, const Nonlinearity& nl, double T,
                               const RadialGrid& grid, const std::vector<LevelSink>& sinks,
                               const Forcing& extra_forcing = nullptr);

// Exact free-wave solution by d'Alembert on u = r*phi with odd extension;
// value plus first derivatives, usable both as an error oracle and as a smooth
// field source for identity checks.
class DalembertOracle {
public:
    DalembertOracle(RadialProfile f, RadialProfile g);

    double phi(double t, double r) const;
    double phi_t(double t, double r) const;
    double phi_r(double t, double r) const;

private:
    double u0(double s) const;   // odd extension of r f(r)
    double u0p(double s) const;
    double u0pp(double s) const;
    double u1(double s) const;   // odd extension of r g(r)
    double u1p(double s) const;
    double U1(double s) const;   // even primitive of u1
    RadialProfile f_, g_;
};

double dalembert_free(const DataPair& pair, double t, double r);

} // namespace wavelab

#endif
