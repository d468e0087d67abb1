#include "wavelab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wavelab/quadrature.hpp"

namespace wavelab {

RadialGrid GridPolicy::grid_for(double t_horizon) const
{
    const double speed = std::sqrt(1.0 + coeff_bound);
    const double r_max = support_radius + speed * t_horizon + pad;
    const int nr = std::max(16, static_cast<int>(std::ceil(r_max / dr)));
    return build_grid(nr * dr, nr, cfl, coeff_bound);
}

LifespanSweep lifespan_sweep(const std::vector<double>& eps_list, const Nonlinearity& nl,
                             double t_budget, const GridPolicy& policy,
                             const RadialProfile& f_shape, const RadialProfile& g_shape)
{
    for (size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("lifespan_sweep: eps_list must be decreasing");

    LifespanSweep sweep;
    sweep.points.resize(eps_list.size());
    // sweep points are independent; each run writes only its own slot
    for (size_t idx = 0; idx < eps_list.size(); ++idx) {
        const double eps = eps_list[idx];
        const RadialGrid g = policy.grid_for(t_budget);
        DataPair pair = profile_pair(f_shape, g_shape, g);
        pair = scale_to_epsilon(pair, g, eps);
        const SolveOutcome out = solve_quasilinear(pair, nl, t_budget, g, {});
        LifespanPoint& pt = sweep.points[idx];
        pt.eps = eps;
        pt.nr = g.nr;
        pt.r_max = g.r_max;
        if (out.status == SolveStatus::Completed) {
            pt.criterion = "budget";
        } else {
            pt.t_star = out.t_event;
            pt.criterion = out.criterion;
        }
    }
    sweep.fit = fit_log_lifespan(sweep.points);
    return sweep;
}

FitResult fit_log_lifespan(const std::vector<LifespanPoint>& points)
{
    FitResult fit;
    std::vector<double> x, y;
    for (const auto& p : points)
        if (p.t_star && *p.t_star > 0.0) {
            x.push_back(1.0 / p.eps);
            y.push_back(std::log(*p.t_star));
        }
    if (x.size() < 3) return fit; // fit-undefined, points still carried
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (size_t i = 0; i < n; ++i) {
        const double pred = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.defined = true;
    return fit;
}

ContinuationResult continuation_run(const DataPair& pair, const Nonlinearity& nl,
                                    int segments, double T, const RadialGrid& grid,
                                    int remollify_log2_base)
{
    if (segments < 1)
        throw std::invalid_argument("continuation_run: segments must be >= 1");
    const double t_seg = T / segments;

    ContinuationResult result;
    NormAccumulator total(grid);
    DataPair cur = pair;
    double t_offset = 0.0;

    for (int seg = 0; seg < segments; ++seg) {
        NormAccumulator acc(grid);
        std::vector<LevelSink> sinks;
        const bool skip_first = seg > 0; // restart level equals the previous final level
        bool first_seen = false;
        sinks.push_back([&](const LevelFields& lv) {
            if (skip_first && !first_seen) {
                first_seen = true;
                return;
            }
            LevelFields shifted = lv;
            shifted.t += t_offset;
            acc.accumulate_level(shifted);
        });
        const SolveOutcome out = solve_quasilinear(cur, nl, t_seg, grid, sinks);
        if (out.status != SolveStatus::Completed) {
            result.status = out.status;
            result.criterion = out.criterion;
            result.failed_segment = seg;
            result.t_event = t_offset + out.t_event;
            result.final_state = out.final_state;
            return result;
        }
        total.merge(acc);
        t_offset += t_seg;
        result.final_state = out.final_state;
        result.final_state.t = t_offset;

        if (seg + 1 < segments) {
            const LevelFields lf = make_level_fields(out.final_state, grid);
            std::vector<double> f = lf.phi, g2 = lf.phi_t;
            if (remollify_log2_base >= 0) {
                const int j = 1 << (remollify_log2_base + seg);
                f = mollify_samples(f, j, grid);
                g2 = mollify_samples(g2, j, grid);
            }
            cur = sampled_pair(std::move(f), std::move(g2));
        }
    }
    result.t_event = T;
    result.norms = finalize(total);
    return result;
}

LipschitzReport continuity_probe(const DataPair& base, const DataPair& perturbation,
                                 const std::vector<double>& delta_list,
                                 const Nonlinearity& nl, double T, const RadialGrid& grid)
{
    LipschitzReport rep;
    rep.base_eps = sobolev_norms(base, grid).epsilon;

    // base run stored at full time resolution
    StageTable base_table(grid, 1);
    double base_sup_h = 0.0;
    std::vector<LevelSink> base_sinks;
    base_sinks.push_back([&](const LevelFields& lv) {
        base_table.push_level(lv);
        for (double p : lv.phi)
            base_sup_h = std::max(base_sup_h, std::abs(nl.h_of(p)));
    });
    const SolveOutcome base_out = solve_quasilinear(base, nl, T, grid, base_sinks);
    if (base_out.status != SolveStatus::Completed)
        throw std::runtime_error("continuity_probe: base run left the admissible regime");
    const bool base_admissible = base_sup_h <= 1.0 / 6.0 + 1e-15;

    const auto w2 = power_cell_weights(grid, 2.0);
    auto [pr, prr] = radial_derivatives(perturbation.f, grid);
    pr[0] = 0.0;
    const double pert_grad = l2_norm_radial(pr, grid, w2);
    const double pert_g = l2_norm_radial(perturbation.g, grid, w2);

    for (double delta : delta_list) {
        LipschitzEntry e;
        e.delta = delta;
        if (delta == 0.0) {
            e.diff_norm = 0.0;
            e.data_norm = 0.0;
            e.ratio = 0.0;
            e.admissible = base_admissible;
            rep.entries.push_back(e);
            continue;
        }
        DataPair shifted = base;
        for (int i = 0; i < grid.nodes(); ++i) {
            shifted.f[i] += delta * perturbation.f[i];
            shifted.g[i] += delta * perturbation.g[i];
        }
        shifted.analytic = false;

        DiffAccumulator diff(grid, base_table);
        double sup_h = 0.0;
        std::vector<LevelSink> sinks;
        sinks.push_back([&](const LevelFields& lv) {
            diff.add_level(lv);
            for (double p : lv.phi)
                sup_h = std::max(sup_h, std::abs(nl.h_of(p)));
        });
        const SolveOutcome out = solve_quasilinear(shifted, nl, T, grid, sinks);
        e.admissible = base_admissible && out.status == SolveStatus::Completed &&
                       sup_h <= 1.0 / 6.0 + 1e-15;
        e.diff_norm = diff.e1() + diff.y1();
        e.data_norm = delta * (pert_grad + pert_g);
        e.ratio = e.data_norm > 0.0 ? e.diff_norm / e.data_norm : 0.0;
        rep.entries.push_back(e);
    }
    return rep;
}

DataPair random_direction(std::uint64_t seed, const RadialGrid& grid)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> cen(0.0, 2.5);
    std::uniform_real_distribution<double> wid(0.6, 1.8);
    const RadialProfile f = make_profile("gaussian", amp(rng), cen(rng), wid(rng));
    const RadialProfile g = make_profile("gaussian", amp(rng), cen(rng), wid(rng));
    return profile_pair(f, g, grid);
}

void ConstantsLedger::add(const std::string& name, double value,
                          const std::string& experiment_id, const std::string& note)
{
    entries.push_back({name, value, experiment_id, note});
}

std::string ConstantsLedger::to_json() const
{
    std::ostringstream os;
    os << "{\"constants\":[";
    char buf[512];
    for (size_t i = 0; i < entries.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%s{\"name\":\"%s\",\"value\":%.17g,\"experiment_id\":\"%s\","
                      "\"note\":\"%s\"}",
                      i ? "," : "", entries[i].name.c_str(), entries[i].value,
                      entries[i].experiment_id.c_str(), entries[i].note.c_str());
        os << buf;
    }
    os << "]}";
    return os.str();
}

} // namespace wavelab
