#ifndef WAVELAB_CONFIG_HPP
#define WAVELAB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "wavelab/solver.hpp"

namespace wavelab {

struct ProfileConfig {
    std::string kind = "zero";
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
};

// One fully validated run description; every numeric field is checked against
// the owning module's preconditions before dispatch.
struct RunConfig {
    std::string command;
    std::string out_dir = "out";
    std::uint64_t seed = 0;

    double T = 10.0;
    double mu = 0.25;
    double h_bound = 1.0 / 6.0;

    // grid
    double dr = 0.02;
    double cfl = 0.9;
    double coeff_bound = 0.5;
    std::optional<double> r_max; // absent -> sized from support and horizon
    double pad = 2.0;

    // data
    ProfileConfig f, g;
    std::optional<double> eps;

    Nonlinearity nl;

    // multiplier
    std::string multiplier_variant = "kss";
    double multiplier_parameter = 0.5;

    // static coefficient for linear instances: none or a Gaussian profile
    std::string coefficient_kind = "none";
    double coefficient_amplitude = 0.1;
    double coefficient_width = 1.0;

    // sweeps
    std::vector<double> eps_list;
    std::vector<double> T_list;
    std::vector<double> delta_list;
    double t_budget = 200.0;
    int segments = 2;
    int k_max = 12;
    double tol = 1e-8;

    // optional trace decimation
    int trace_stride_t = 0; // 0 = no trace
    int trace_stride_r = 1;

    std::string to_json() const;
};

RunConfig parse_config(const std::string& source);

// Runs the configured command, writing its artifacts under out_dir. Returns
// the process exit status: 0 success, 1 run-level failure (a blow-up is not a
// failure for lifespan sweeps). Configuration errors throw ConfigError.
int dispatch(const RunConfig& cfg);

} // namespace wavelab

#endif
