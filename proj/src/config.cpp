#include "wavelab/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wavelab/common.hpp"
#include "wavelab/estimates.hpp"
#include "wavelab/experiments.hpp"
#include "wavelab/initial_data.hpp"
#include "wavelab/multiplier.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") +
                              it.key() + "'");
}

ProfileConfig parse_profile(const json& j, const std::string& where)
{
    check_keys(j, {"kind", "amplitude", "center", "width"}, where);
    ProfileConfig p;
    p.kind = j.value("kind", "zero");
    p.amplitude = j.value("amplitude", p.kind == "zero" ? 0.0 : 1.0);
    p.center = j.value("center", 0.0);
    p.width = j.value("width", 1.0);
    make_profile(p.kind, p.amplitude, p.center, p.width); // validates
    return p;
}

} // namespace

RunConfig parse_config(const std::string& source)
{
    json j;
    try {
        j = json::parse(source);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not well-formed JSON: ") + e.what());
    }
    check_keys(j,
               {"command", "out_dir", "seed", "T", "mu", "h_bound", "grid", "data", "nl",
                "multiplier", "coefficient", "sweep", "trace"},
               "");
    RunConfig cfg;
    cfg.command = j.value("command", "");
    cfg.out_dir = j.value("out_dir", "out");
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.T = j.value("T", 10.0);
    cfg.mu = j.value("mu", 0.25);
    cfg.h_bound = j.value("h_bound", 1.0 / 6.0);

    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, {"dr", "cfl", "coeff_bound", "r_max", "pad"}, "grid");
        cfg.dr = g.value("dr", cfg.dr);
        cfg.cfl = g.value("cfl", cfg.cfl);
        cfg.coeff_bound = g.value("coeff_bound", cfg.coeff_bound);
        if (g.contains("r_max")) cfg.r_max = g["r_max"].get<double>();
        cfg.pad = g.value("pad", cfg.pad);
    }
    if (j.contains("data")) {
        const json& d = j["data"];
        check_keys(d, {"f", "g", "eps"}, "data");
        if (d.contains("f")) cfg.f = parse_profile(d["f"], "data.f");
        if (d.contains("g")) cfg.g = parse_profile(d["g"], "data.g");
        if (d.contains("eps")) cfg.eps = d["eps"].get<double>();
    }
    if (j.contains("nl")) {
        const json& n = j["nl"];
        check_keys(n, {"a", "b", "h_kind", "lambda"}, "nl");
        cfg.nl.a = n.value("a", 0.0);
        cfg.nl.b = n.value("b", 0.0);
        const std::string hk = n.value("h_kind", "linear");
        if (hk == "linear")
            cfg.nl.h_kind = Nonlinearity::HKind::Linear;
        else if (hk == "quadratic")
            cfg.nl.h_kind = Nonlinearity::HKind::Quadratic;
        else
            throw ConfigError("nl.h_kind must be 'linear' or 'quadratic'");
        cfg.nl.lambda = n.value("lambda", 0.0);
    }
    if (j.contains("multiplier")) {
        const json& m = j["multiplier"];
        check_keys(m, {"variant", "parameter"}, "multiplier");
        cfg.multiplier_variant = m.value("variant", "kss");
        cfg.multiplier_parameter = m.value("parameter", 0.5);
    }
    if (j.contains("coefficient")) {
        const json& c = j["coefficient"];
        check_keys(c, {"kind", "amplitude", "width"}, "coefficient");
        cfg.coefficient_kind = c.value("kind", "none");
        cfg.coefficient_amplitude = c.value("amplitude", 0.1);
        cfg.coefficient_width = c.value("width", 1.0);
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        check_keys(s, {"eps_list", "T_list", "delta_list", "t_budget", "segments", "k_max",
                       "tol"},
                   "sweep");
        if (s.contains("eps_list")) cfg.eps_list = s["eps_list"].get<std::vector<double>>();
        if (s.contains("T_list")) cfg.T_list = s["T_list"].get<std::vector<double>>();
        if (s.contains("delta_list"))
            cfg.delta_list = s["delta_list"].get<std::vector<double>>();
        cfg.t_budget = s.value("t_budget", cfg.t_budget);
        cfg.segments = s.value("segments", cfg.segments);
        cfg.k_max = s.value("k_max", cfg.k_max);
        cfg.tol = s.value("tol", cfg.tol);
    }
    if (j.contains("trace")) {
        const json& t = j["trace"];
        check_keys(t, {"stride_t", "stride_r"}, "trace");
        cfg.trace_stride_t = t.value("stride_t", 0);
        cfg.trace_stride_r = t.value("stride_r", 1);
    }

    // range validation, phrased by the owning constraint
    if (!(cfg.mu > 0.0 && cfg.mu < 0.5)) throw ConfigError("mu must lie in (0, 1/2)");
    if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0)) throw ConfigError("grid.cfl must lie in (0, 1)");
    if (cfg.coeff_bound < 0.0 || cfg.coeff_bound > 0.5)
        throw ConfigError("grid.coeff_bound must lie in [0, 1/2]");
    if (!(cfg.dr > 0.0)) throw ConfigError("grid.dr must be positive");
    if (!(cfg.T > 0.0)) throw ConfigError("T must be positive");
    if (cfg.h_bound <= 0.0 || cfg.h_bound > 0.5)
        throw ConfigError("h_bound must lie in (0, 1/2]");
    if (cfg.multiplier_variant == "kss") {
        if (!(cfg.multiplier_parameter > 0.0 && cfg.multiplier_parameter < 1.0))
            throw ConfigError("multiplier.parameter (kappa) must lie in (0, 1)");
    } else if (cfg.multiplier_variant == "ms") {
        if (!(cfg.multiplier_parameter > 0.0))
            throw ConfigError("multiplier.parameter (rho) must be positive");
    } else {
        throw ConfigError("multiplier.variant must be 'kss' or 'ms'");
    }
    if (cfg.coefficient_kind != "none" && cfg.coefficient_kind != "gaussian")
        throw ConfigError("coefficient.kind must be 'none' or 'gaussian'");
    if (cfg.coefficient_kind == "gaussian" &&
        std::abs(cfg.coefficient_amplitude) > 1.0 / 6.0 + 1e-15)
        throw ConfigError("coefficient.amplitude must respect |h| <= 1/6");
    if (cfg.segments < 1) throw ConfigError("sweep.segments must be >= 1");
    if (cfg.k_max < 0) throw ConfigError("sweep.k_max must be nonnegative");
    if (cfg.eps && !(*cfg.eps >= 0.0)) throw ConfigError("data.eps must be nonnegative");
    if (cfg.trace_stride_t < 0 || cfg.trace_stride_r < 1)
        throw ConfigError("trace strides must be positive");
    return cfg;
}

namespace {

json profile_json(const ProfileConfig& p)
{
    return json{{"kind", p.kind},
                {"amplitude", p.amplitude},
                {"center", p.center},
                {"width", p.width}};
}

} // namespace

std::string RunConfig::to_json() const
{
    json j;
    j["command"] = command;
    j["out_dir"] = out_dir;
    j["seed"] = seed;
    j["T"] = T;
    j["mu"] = mu;
    j["h_bound"] = h_bound;
    j["grid"] = json{{"dr", dr}, {"cfl", cfl}, {"coeff_bound", coeff_bound}, {"pad", pad}};
    if (r_max) j["grid"]["r_max"] = *r_max;
    j["data"] = json{{"f", profile_json(f)}, {"g", profile_json(g)}};
    if (eps) j["data"]["eps"] = *eps;
    j["nl"] = json{{"a", nl.a},
                   {"b", nl.b},
                   {"h_kind", nl.h_kind == Nonlinearity::HKind::Linear ? "linear"
                                                                       : "quadratic"},
                   {"lambda", nl.lambda}};
    j["multiplier"] = json{{"variant", multiplier_variant}, {"parameter", multiplier_parameter}};
    j["coefficient"] = json{{"kind", coefficient_kind},
                            {"amplitude", coefficient_amplitude},
                            {"width", coefficient_width}};
    j["sweep"] = json{{"eps_list", eps_list}, {"T_list", T_list},
                      {"delta_list", delta_list}, {"t_budget", t_budget},
                      {"segments", segments}, {"k_max", k_max}, {"tol", tol}};
    j["trace"] = json{{"stride_t", trace_stride_t}, {"stride_r", trace_stride_r}};
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

namespace {

double profile_support(const ProfileConfig& p)
{
    if (p.kind == "zero" || p.amplitude == 0.0) return 1.0;
    return p.center + 8.0 * p.width;
}

RadialGrid grid_for(const RunConfig& cfg, double horizon)
{
    double r_max;
    if (cfg.r_max) {
        r_max = *cfg.r_max;
    } else {
        const double support = std::max(profile_support(cfg.f), profile_support(cfg.g));
        r_max = support + std::sqrt(1.0 + cfg.coeff_bound) * horizon + cfg.pad;
    }
    const int nr = std::max(16, static_cast<int>(std::ceil(r_max / cfg.dr)));
    return build_grid(nr * cfg.dr, nr, cfg.cfl, cfg.coeff_bound);
}

DataPair data_for(const RunConfig& cfg, const RadialGrid& grid)
{
    DataPair pair = profile_pair(make_profile(cfg.f.kind, cfg.f.amplitude, cfg.f.center,
                                              cfg.f.width),
                                 make_profile(cfg.g.kind, cfg.g.amplitude, cfg.g.center,
                                              cfg.g.width),
                                 grid);
    if (cfg.eps) pair = scale_to_epsilon(pair, grid, *cfg.eps);
    return pair;
}

CoefficientField coefficient_for(const RunConfig& cfg)
{
    if (cfg.coefficient_kind == "none") return CoefficientField::zero();
    const double a = cfg.coefficient_amplitude;
    const double w = cfg.coefficient_width;
    return CoefficientField::static_radial(
        [a, w](double r) { return a * std::exp(-r * r / (w * w)); },
        [a, w](double r) { return -2.0 * r / (w * w) * a * std::exp(-r * r / (w * w)); },
        std::abs(a));
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string outcome_json(const SolveOutcome& out)
{
    const char* st = out.status == SolveStatus::Completed     ? "completed"
                     : out.status == SolveStatus::Blowup      ? "blowup"
                                                              : "cfl_violation";
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"status\":\"%s\",\"t_event\":%.17g,\"criterion\":\"%s\"}", st,
                  out.t_event, out.criterion.c_str());
    return buf;
}

int run_solve(const RunConfig& cfg)
{
    const RadialGrid grid = grid_for(cfg, cfg.T);
    const DataPair pair = data_for(cfg, grid);
    NormAccumulator acc(grid);
    std::FILE* trace = nullptr;
    if (cfg.trace_stride_t > 0) {
        trace = std::fopen((cfg.out_dir + "/trace.csv").c_str(), "w");
        if (!trace) throw std::runtime_error("cannot write trace.csv");
        std::fprintf(trace, "t,r,phi,phi_t\n");
    }
    long level_index = 0;
    std::vector<LevelSink> sinks;
    sinks.push_back([&](const LevelFields& lv) {
        acc.accumulate_level(lv);
        if (trace && level_index % cfg.trace_stride_t == 0) {
            for (int i = 0; i < grid.nodes(); i += cfg.trace_stride_r)
                std::fprintf(trace, "%.17g,%.17g,%.17g,%.17g\n", lv.t, grid.radius(i),
                             lv.phi[i], lv.phi_t[i]);
        }
        ++level_index;
    });
    const SolveOutcome out = solve_quasilinear(pair, cfg.nl, cfg.T, grid, sinks);
    if (trace) std::fclose(trace);
    write_text(cfg.out_dir + "/outcome.json", outcome_json(out));
    if (!acc.empty() && acc.last_t() > acc.first_t())
        write_text(cfg.out_dir + "/norm_report.json", finalize(acc).to_json());
    return out.status == SolveStatus::Completed ? 0 : 1;
}

int run_norms(const RunConfig& cfg)
{
    const RadialGrid grid = grid_for(cfg, 0.0);
    const DataPair pair = data_for(cfg, grid);
    const NormRecord rec = sobolev_norms(pair, grid);
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"l2_f\":%.17g,\"h1dot_f\":%.17g,\"h1_grad_f\":%.17g,"
                  "\"h1_g\":%.17g,\"epsilon\":%.17g}",
                  rec.l2_f, rec.h1dot_f, rec.h1_grad_f, rec.h1_g, rec.epsilon);
    write_text(cfg.out_dir + "/data_norms.json", buf);
    write_pair_csv(pair, grid, cfg.out_dir + "/data.csv");
    return 0;
}

int run_iterate(const RunConfig& cfg)
{
    const RadialGrid grid = grid_for(cfg, cfg.T);
    const DataPair pair = data_for(cfg, grid);
    const IterationReport rep = picard_run(pair, cfg.nl, cfg.T, grid, cfg.k_max, cfg.tol);
    write_text(cfg.out_dir + "/iteration_report.json", rep.to_json());

    ConstantsLedger ledger;
    if (rep.m1_proxy > 0.0) {
        ledger.add("M1", rep.m1_proxy, "iterate", "max_k (E2+Y2+Z2)/eps over the stages");
        ledger.add("C3", rep.m1_proxy / 4.0, "iterate", "via M1 = 4 C3");
    }
    if (rep.c4_proxy > 0.0) {
        ledger.add("C4", rep.c4_proxy, "iterate",
                   "data-response coefficient of the difference recursion fit");
        if (rep.m1_proxy > 0.0)
            ledger.add("A2", 1.0 / (128.0 * rep.c4_proxy * rep.c4_proxy * rep.m1_proxy *
                                    rep.m1_proxy),
                       "iterate", "A2 = 1/(2*8^2*C4^2*M1^2) with the empirical stand-ins");
    }
    if (!rep.records.empty() && rep.records.back().sup_h > 0.0) {
        const auto& last = rep.records.back();
        ledger.add("c0", last.e2 / last.sup_h / 6.0, "iterate",
                   "E2 level at which sup|h(phi)| would reach 1/6, by linear response");
    }
    write_text(cfg.out_dir + "/constants_ledger.json", ledger.to_json());
    return rep.failure_stage ? 1 : 0;
}

MultiplierField multiplier_for(const RunConfig& cfg)
{
    return cfg.multiplier_variant == "kss" ? make_kss(cfg.multiplier_parameter)
                                           : make_ms(cfg.multiplier_parameter);
}

int run_verify_identity(const RunConfig& cfg)
{
    const MultiplierField mf = multiplier_for(cfg);
    const Scenario sc = mms_scenario();
    const RadialGrid fine = grid_for(cfg, 0.0);
    const RadialGrid coarse = build_grid(fine.r_max, fine.nr / 2, cfg.cfl, cfg.coeff_bound);
    const ResidualReport rc = divergence_residual(sc, mf, coarse, cfg.T);
    const ResidualReport rf = divergence_residual(sc, mf, fine, cfg.T);
    const double ratio = rf.l2_residual > 0.0 ? rc.l2_residual / rf.l2_residual : 0.0;
    write_text(cfg.out_dir + "/identity_report.json", rf.to_json(ratio));
    return 0;
}

int run_check_inequalities(const RunConfig& cfg)
{
    const MultiplierField mf = multiplier_for(cfg);
    std::vector<double> samples;
    const int count = 10000;
    if (cfg.multiplier_variant == "kss") {
        for (int i = 0; i < count; ++i)
            samples.push_back(1e-4 * std::pow(1e7, i / double(count - 1)));
    } else {
        const double rho = cfg.multiplier_parameter;
        for (int i = 0; i < count; ++i)
            samples.push_back(0.5 * rho + 0.5 * rho * i / double(count - 1));
    }
    const InequalityReport rep = check_pointwise_inequalities(mf, samples);
    write_text(cfg.out_dir + "/inequality_report.json", rep.to_json());
    return rep.violations.empty() ? 0 : 1;
}

int run_verify_estimate(const RunConfig& cfg)
{
    const std::vector<double> eps_list =
        cfg.eps_list.empty() ? std::vector<double>{cfg.eps.value_or(0.05)} : cfg.eps_list;
    const std::vector<double> T_list =
        cfg.T_list.empty() ? std::vector<double>{cfg.T} : cfg.T_list;

    std::ostringstream csv;
    csv << "instance_id,mu,T,eps,lhs_y,lhs_z,rhs_data,rhs_interaction,ratio\n";
    std::string last_json;
    double max_ratio = 0.0;
    int id = 0;
    char buf[512];
    for (double T : T_list) {
        const RadialGrid grid = grid_for(cfg, T);
        const CoefficientField h = coefficient_for(cfg);
        for (double eps : eps_list) {
            RunConfig inst = cfg;
            inst.eps = eps;
            const DataPair pair = data_for(inst, grid);
            const EstimateReport rep = kss_sides(pair, h, nullptr, cfg.mu, T, grid);
            std::snprintf(buf, sizeof buf,
                          "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", id,
                          rep.mu, rep.T, eps, rep.lhs_y, rep.lhs_z, rep.rhs_data,
                          rep.rhs_interaction, rep.ratio);
            csv << buf;
            last_json = rep.to_json();
            if (rep.ratio_defined) max_ratio = std::max(max_ratio, rep.ratio);
            ++id;
        }
    }
    write_text(cfg.out_dir + "/estimate_sweep.csv", csv.str());
    write_text(cfg.out_dir + "/estimate_report.json", last_json);

    ConstantsLedger ledger;
    if (max_ratio > 0.0)
        ledger.add("C1", max_ratio, "verify-estimate",
                   "max (lhs_y+lhs_z)/(rhs) over the configured instances");
    {
        // Sobolev stand-ins from the configured data snapshot
        const RadialGrid grid = grid_for(cfg, 0.0);
        const DataPair pair = data_for(cfg, grid);
        FieldSnapshot snap;
        snap.t = 0.0;
        snap.u.resize(grid.nodes());
        snap.u_t.resize(grid.nodes());
        for (int i = 0; i < grid.nodes(); ++i) {
            snap.u[i] = grid.radius(i) * pair.f[i];
            snap.u_t[i] = grid.radius(i) * pair.g[i];
        }
        snap.u[0] = 0.0;
        const SobolevRecord rec = sobolev_checks({make_level_fields(snap, grid)}, grid);
        if (rec.counted > 0) {
            ledger.add("C_S", rec.sup_weighted_value, "verify-estimate",
                       "sup r^{1/2}|phi| / ||grad phi|| of the data snapshot");
            ledger.add("hardy_ratio", rec.hardy_ratio, "verify-estimate",
                       "||phi/r|| / ||grad phi||, bounded by 2");
        }
    }
    write_text(cfg.out_dir + "/constants_ledger.json", ledger.to_json());
    return 0;
}

int run_lifespan(const RunConfig& cfg)
{
    if (cfg.eps_list.empty())
        throw ConfigError("lifespan requires sweep.eps_list");
    GridPolicy policy;
    policy.dr = cfg.dr;
    policy.cfl = cfg.cfl;
    policy.coeff_bound = cfg.coeff_bound;
    policy.support_radius = std::max(profile_support(cfg.f), profile_support(cfg.g));
    policy.pad = cfg.pad;

    const LifespanSweep sweep = lifespan_sweep(
        cfg.eps_list, cfg.nl, cfg.t_budget, policy,
        make_profile(cfg.f.kind, cfg.f.amplitude, cfg.f.center, cfg.f.width),
        make_profile(cfg.g.kind, cfg.g.amplitude, cfg.g.center, cfg.g.width));

    std::ostringstream csv;
    csv << "epsilon,t_star,criterion\n";
    char buf[256];
    for (const auto& p : sweep.points) {
        if (p.t_star)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", p.eps, *p.t_star,
                          p.criterion.c_str());
        else
            std::snprintf(buf, sizeof buf, "%.17g,,%s\n", p.eps, p.criterion.c_str());
        csv << buf;
    }
    write_text(cfg.out_dir + "/lifespan.csv", csv.str());

    std::snprintf(buf, sizeof buf,
                  "{\"slope\":%.17g,\"intercept\":%.17g,\"r_squared\":%.17g,"
                  "\"defined\":%s}",
                  sweep.fit.slope, sweep.fit.intercept, sweep.fit.r_squared,
                  sweep.fit.defined ? "true" : "false");
    write_text(cfg.out_dir + "/lifespan_fit.json", buf);

    ConstantsLedger ledger;
    if (sweep.fit.defined)
        ledger.add("A1", sweep.fit.slope, "lifespan",
                   "slope of log T* vs 1/eps; empirical stand-in for an existential constant");
    write_text(cfg.out_dir + "/constants_ledger.json", ledger.to_json());
    return 0; // blow-up is data here, not a failure
}

int run_continuity(const RunConfig& cfg)
{
    const RadialGrid grid = grid_for(cfg, cfg.T);
    const DataPair base = data_for(cfg, grid);
    const DataPair pert = random_direction(cfg.seed, grid);
    const std::vector<double> deltas =
        cfg.delta_list.empty() ? std::vector<double>{1e-2, 5e-3, 2.5e-3} : cfg.delta_list;
    const LipschitzReport rep = continuity_probe(base, pert, deltas, cfg.nl, cfg.T, grid);

    std::ostringstream os;
    os << "{\"base_eps\":";
    char buf[320];
    std::snprintf(buf, sizeof buf, "%.17g", rep.base_eps);
    os << buf << ",\"entries\":[";
    double max_ratio = 0.0;
    for (size_t i = 0; i < rep.entries.size(); ++i) {
        const auto& e = rep.entries[i];
        std::snprintf(buf, sizeof buf,
                      "%s{\"delta\":%.17g,\"diff_norm\":%.17g,\"data_norm\":%.17g,"
                      "\"ratio\":%.17g,\"admissible\":%s}",
                      i ? "," : "", e.delta, e.diff_norm, e.data_norm, e.ratio,
                      e.admissible ? "true" : "false");
        os << buf;
        max_ratio = std::max(max_ratio, e.ratio);
    }
    os << "]}";
    write_text(cfg.out_dir + "/continuity_report.json", os.str());

    ConstantsLedger ledger;
    ledger.add("lipschitz_ratio", max_ratio, "continuity",
               "max (E1+Y1 diff)/(Hdot1xL2 data diff) over the delta sweep");
    write_text(cfg.out_dir + "/constants_ledger.json", ledger.to_json());
    return 0;
}

int run_continue(const RunConfig& cfg)
{
    const RadialGrid grid = grid_for(cfg, cfg.T);
    const DataPair pair = data_for(cfg, grid);
    const ContinuationResult seg = continuation_run(pair, cfg.nl, cfg.segments, cfg.T, grid);

    std::ostringstream os;
    os << "{\"segments\":" << cfg.segments;
    if (seg.status != SolveStatus::Completed) {
        os << ",\"status\":\"failed\",\"failed_segment\":" << seg.failed_segment
           << ",\"criterion\":\"" << seg.criterion << "\"}";
        write_text(cfg.out_dir + "/continuation_report.json", os.str());
        return 1;
    }
    os << ",\"status\":\"completed\",\"norms\":" << seg.norms.to_json();
    const ContinuationResult direct = continuation_run(pair, cfg.nl, 1, cfg.T, grid);
    if (direct.status == SolveStatus::Completed) {
        char buf[128];
        std::snprintf(buf, sizeof buf, ",\"direct_e1\":%.17g,\"segmented_e1\":%.17g",
                      direct.norms.E1, seg.norms.E1);
        os << buf;
    }
    os << "}";
    write_text(cfg.out_dir + "/continuation_report.json", os.str());
    return 0;
}

} // namespace

int dispatch(const RunConfig& cfg)
{
    std::filesystem::create_directories(cfg.out_dir);
    {
        // echoed config omits the output location so artifacts are a pure
        // function of configuration and seed
        RunConfig echo = cfg;
        echo.out_dir = "out";
        write_text(cfg.out_dir + "/config_resolved.json", echo.to_json());
    }
    if (cfg.command == "solve") return run_solve(cfg);
    if (cfg.command == "norms") return run_norms(cfg);
    if (cfg.command == "iterate") return run_iterate(cfg);
    if (cfg.command == "verify-identity") return run_verify_identity(cfg);
    if (cfg.command == "check-inequalities") return run_check_inequalities(cfg);
    if (cfg.command == "verify-estimate") return run_verify_estimate(cfg);
    if (cfg.command == "lifespan") return run_lifespan(cfg);
    if (cfg.command == "continuity") return run_continuity(cfg);
    if (cfg.command == "continue") return run_continue(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

} // namespace wavelab
