#ifndef WAVELAB_EXPERIMENTS_HPP
#define WAVELAB_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/norms.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {

struct LifespanPoint {
    double eps = 0.0;
    std::optional<double> t_star; // empty = budget exhausted
    std::string criterion;        // which validity check fired
    int nr = 0;
    double r_max = 0.0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool defined = false;
};

// Per-run mesh sizing: r_max covers the data support plus the worst-case
// numerical domain of influence over the budget.
struct GridPolicy {
    double dr = 0.025;
    double cfl = 0.9;
    double coeff_bound = 0.5;
    double support_radius = 6.0;
    double pad = 2.0;

    RadialGrid grid_for(double t_horizon) const;
};

struct LifespanSweep {
    std::vector<LifespanPoint> points;
    FitResult fit;
};

LifespanSweep lifespan_sweep(const std::vector<double>& eps_list, const Nonlinearity& nl,
                             double t_budget, const GridPolicy& policy,
                             const RadialProfile& f_shape, const RadialProfile& g_shape);

FitResult fit_log_lifespan(const std::vector<LifespanPoint>& points);

struct ContinuationResult {
    SolveStatus status = SolveStatus::Completed;
    std::string criterion;
    int failed_segment = -1;
    double t_event = 0.0;
    NormReport norms;
    FieldSnapshot final_state;
};

// Splits [0, T] into equal segments, restarting the solver from the previous
// segment's final snapshot; remollify_log2_base >= 0 smooths restart data at
// scale 2^{-(base + segment)}. Norm accumulation is merged across segments.
ContinuationResult continuation_run(const DataPair& pair, const Nonlinearity& nl,
                                    int segments, double T, const RadialGrid& grid,
                                    int remollify_log2_base = -1);

struct LipschitzEntry {
    double delta = 0.0;
    double diff_norm = 0.0; // E1 + Y1 of the solution difference
    double data_norm = 0.0; // Hdot1 x L2 distance of the data
    double ratio = 0.0;
    bool admissible = true;
};

struct LipschitzReport {
    std::vector<LipschitzEntry> entries;
    double base_eps = 0.0;
};

LipschitzReport continuity_probe(const DataPair& base, const DataPair& perturbation,
                                 const std::vector<double>& delta_list,
                                 const Nonlinearity& nl, double T, const RadialGrid& grid);

// Random radial directions for the Lipschitz stability property; seeded and
// reproducible.
DataPair random_direction(std::uint64_t seed, const RadialGrid& grid);

struct ConstantEntry {
    std::string name;
    double value = 0.0;
    std::string experiment_id;
    std::string note;
};

struct ConstantsLedger {
    std::vector<ConstantEntry> entries;

    void add(const std::string& name, double value, const std::string& experiment_id,
             const std::string& note);
    std::string to_json() const;
};

} // namespace wavelab

#endif
