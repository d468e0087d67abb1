#ifndef WAVELAB_NORMS_HPP
#define WAVELAB_NORMS_HPP

#include <array>
#include <string>

#include "wavelab/grid.hpp"

namespace wavelab {

// Streaming accumulator for the energy sups and the weighted space-time
// integrals
//   I1 = iint r^{-5/2} phi^2 dx dt          I2 = iint r^{-1/2} |dphi|^2 dx dt
//   J1, J2 = the <r>^{-1/2}-weighted copies
// plus the second-order copies with dphi in place of phi. Accumulators over
// adjacent time slabs merge associatively: the bridging trapezoid term is
// reconstructed from the stored boundary-level integrands.
class NormAccumulator {
public:
    explicit NormAccumulator(const RadialGrid& grid);

    void accumulate_level(const LevelFields& level);
    void merge(const NormAccumulator& later);

    bool empty() const { return empty_; }
    double first_t() const { return first_t_; }
    double last_t() const { return last_t_; }

    // raw running integrals (4 pi included): I1, I2, J1, J2, I1', I2', J1', J2'
    const std::array<double, 8>& integrals() const { return integral_; }
    // running sups: |grad phi|, |phi_t|, |Hess phi|, |phi_tr|, |phi_tt| (L2 norms)
    const std::array<double, 5>& sups() const { return sup_; }

    const RadialGrid& grid() const { return grid_; }

private:
    std::array<double, 8> level_integrands(const LevelFields& level) const;

    RadialGrid grid_;
    std::vector<double> w_m_, w_p_, w_2_; // cell weights for r^{-1/2}, r^{3/2}, r^2
    std::vector<double> zeta_;            // <r>^{-1/2} at nodes
    bool empty_ = true;
    double first_t_ = 0.0, last_t_ = 0.0;
    std::array<double, 8> first_vals_{}, last_vals_{};
    std::array<double, 8> integral_{};
    std::array<double, 5> sup_{};
};

struct NormReport {
    double E1 = 0.0, E2 = 0.0;
    double Y1 = 0.0, Y2 = 0.0, Z1 = 0.0, Z2 = 0.0;
    double I1 = 0.0, I2 = 0.0, J1 = 0.0, J2 = 0.0;
    double T = 0.0;

    std::string to_json() const;
};

NormReport finalize(const NormAccumulator& acc);

// Instantaneous E_m candidate: order 1 is ||grad phi|| + ||phi_t||, order 2
// adds ||Hess phi|| + 2 ||phi_tr|| + ||phi_tt||.
double energy(const LevelFields& level, const RadialGrid& grid, int order);

// Conserved quadratic form (||phi_t||^2 + ||grad phi||^2)^{1/2}; this is the
// quantity whose drift the free-wave conservation checks bound.
double quadratic_energy(const LevelFields& level, const RadialGrid& grid);

} // namespace wavelab

#endif
