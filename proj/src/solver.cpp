#include "wavelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavelab/common.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

CoefficientField CoefficientField::zero()
{
    CoefficientField c;
    c.h = nullptr;
    c.h_t = nullptr;
    c.h_r = nullptr;
    return c;
}

CoefficientField CoefficientField::static_radial(std::function<double(double)> h_of_r,
                                                 std::function<double(double)> hr_of_r,
                                                 double sup_abs, double weighted_grad_sup)
{
    CoefficientField c;
    c.h = [h_of_r](double, double r) { return h_of_r(r); };
    if (hr_of_r)
        c.h_r = [hr_of_r](double, double r) { return hr_of_r(r); };
    c.sup_abs = sup_abs;
    c.weighted_grad_sup = weighted_grad_sup;
    return c;
}

namespace {

struct StepBuffers {
    std::vector<double> u_prev2, u_prev, u_cur, u_next, h, force, u_tt;
};

// Quadratic energy of the reduced 1-D problem, sum (u_t^2 + u_r^2) dr; equal to
// the 3-D energy integral over 4 pi by the u = r*phi substitution.
double u_energy_sq(std::span<const double> u, std::span<const double> u_t, double dr)
{
    const int n = static_cast<int>(u.size());
    return par::parallel_sum(n - 1, [&](std::int64_t i) {
        const double ur = (u[i + 1] - u[i]) / dr;
        const double ut = 0.5 * (u_t[i] + u_t[i + 1]);
        return (ur * ur + ut * ut) * dr;
    });
}

void leapfrog_update(const std::vector<double>& u_prev, const std::vector<double>& u_cur,
                     const std::vector<double>& h, const std::vector<double>& force,
                     const RadialGrid& grid, double dt, std::vector<double>& u_next,
                     std::vector<double>* u_tt_out)
{
    const int n = grid.nodes();
    const double dr2 = grid.dr * grid.dr;
    const double dt2 = dt * dt;
    par::parallel_for(n - 2, [&](std::int64_t k) {
        const int i = static_cast<int>(k) + 1;
        const double lap = (u_cur[i + 1] - 2.0 * u_cur[i] + u_cur[i - 1]) / dr2;
        const double acc = (1.0 - h[i]) * lap + grid.radius(i) * force[i];
        u_next[i] = 2.0 * u_cur[i] - u_prev[i] + dt2 * acc;
        if (u_tt_out) (*u_tt_out)[i] = acc;
    });
    u_next[0] = 0.0;
    u_next[n - 1] = 0.0;
    if (u_tt_out) {
        (*u_tt_out)[0] = 0.0;
        (*u_tt_out)[n - 1] = 0.0;
    }
}

struct Monitors {
    bool quasilinear = false;
    const Nonlinearity* nl = nullptr;
    double energy_cap_sq = 0.0;
};

} // namespace

// Shared driver for the linear and frozen-coefficient quasilinear runs. The
// quasilinear path re-evaluates h and F from the current level each step.
static SolveOutcome run_leapfrog(const DataPair& pair, const CoefficientField* hfield,
                                 const Forcing& F, const Nonlinearity* nl, double T,
                                 const RadialGrid& grid, const std::vector<LevelSink>& sinks,
                                 const Forcing& extra_forcing)
{
    const int n = grid.nodes();
    if (static_cast<int>(pair.f.size()) != n || static_cast<int>(pair.g.size()) != n)
        throw std::invalid_argument("solve: data pair not sampled on this grid");
    if (!(T > 0.0))
        throw std::invalid_argument("solve: T must be positive");

    const int nsteps = std::max(1, static_cast<int>(std::ceil(T / grid.dt - 1e-12)));
    const double dt = T / nsteps;
    const double dr = grid.dr;
    const double stability_sq = (dr / dt) * (dr / dt);

    StepBuffers b;
    b.u_prev2.assign(n, 0.0);
    b.u_prev.assign(n, 0.0);
    b.u_cur.assign(n, 0.0);
    b.u_next.assign(n, 0.0);
    b.h.assign(n, 0.0);
    b.force.assign(n, 0.0);
    b.u_tt.assign(n, 0.0);
    std::vector<double> u_t(n, 0.0), phi(n, 0.0), phi_t(n, 0.0), phi_r(n, 0.0), u_r(n, 0.0);

    par::parallel_for(n, [&](std::int64_t i) {
        b.u_cur[i] = grid.radius(static_cast<int>(i)) * pair.f[i];
        u_t[i] = grid.radius(static_cast<int>(i)) * pair.g[i];
    });
    b.u_cur[0] = 0.0;

    // level-n coefficient and forcing arrays
    auto eval_level = [&](double t, const std::vector<double>& u,
                          const std::vector<double>& u_before,
                          const std::vector<double>& u_before2, int level) {
        if (nl) {
            phi = phi_from_u(u, grid);
            if (nl->a != 0.0 || nl->b != 0.0 || extra_forcing) {
                // phi_t from levels behind us: exact at 0, first-order at 1,
                // second-order extrapolation afterwards
                if (level == 0) {
                    par::parallel_for(n, [&](std::int64_t i) { phi_t[i] = pair.g[i]; });
                } else if (level == 1) {
                    par::parallel_for(n, [&](std::int64_t i) {
                        phi_t[i] = (u[i] - u_before[i]) / dt;
                    });
                    phi_t = phi_from_u(phi_t, grid);
                } else {
                    par::parallel_for(n, [&](std::int64_t i) {
                        phi_t[i] = (3.0 * u[i] - 4.0 * u_before[i] + u_before2[i]) / (2.0 * dt);
                    });
                    phi_t = phi_from_u(phi_t, grid);
                }
                par::parallel_for(n - 2, [&](std::int64_t k) {
                    const int i = static_cast<int>(k) + 1;
                    u_r[i] = (u[i + 1] - u[i - 1]) / (2.0 * dr);
                });
                u_r[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dr);
                u_r[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dr);
                par::parallel_for(n, [&](std::int64_t i) {
                    const double r = grid.radius(static_cast<int>(i));
                    phi_r[i] = i == 0 ? 0.0 : (u_r[i] - phi[i]) / r;
                    b.force[i] = nl->a * phi_t[i] * phi_t[i] + nl->b * phi_r[i] * phi_r[i];
                    if (extra_forcing) b.force[i] += extra_forcing(t, r);
                });
            } else if (extra_forcing) {
                par::parallel_for(n, [&](std::int64_t i) {
                    b.force[i] = extra_forcing(t, grid.radius(static_cast<int>(i)));
                });
            } else {
                std::fill(b.force.begin(), b.force.end(), 0.0);
            }
            par::parallel_for(n, [&](std::int64_t i) { b.h[i] = nl->h_of(phi[i]); });
        } else {
            if (hfield && hfield->h) {
                par::parallel_for(n, [&](std::int64_t i) {
                    b.h[i] = hfield->h(t, grid.radius(static_cast<int>(i)));
                });
            } else {
                std::fill(b.h.begin(), b.h.end(), 0.0);
            }
            if (F) {
                par::parallel_for(n, [&](std::int64_t i) {
                    b.force[i] = F(t, grid.radius(static_cast<int>(i)));
                });
            } else {
                std::fill(b.force.begin(), b.force.end(), 0.0);
            }
        }
    };

    auto sup_abs_h = [&]() {
        return par::parallel_max(n, [&](std::int64_t i) { return std::abs(b.h[i]); });
    };
    // the destabilizing direction: wave speed^2 = 1 - h exceeds 1 only for h < 0
    auto sup_speed_sq = [&]() {
        return par::parallel_max(n, [&](std::int64_t i) { return 1.0 - b.h[i]; });
    };

    SolveOutcome out;
    out.initial_energy_sq = u_energy_sq(b.u_cur, u_t, dr);
    const double energy_cap = 1e3 * std::max(out.initial_energy_sq, 1e-300);

    auto finish = [&](SolveStatus st, double t_ev, const std::string& why,
                      const std::vector<double>& u, const std::vector<double>& ut) {
        out.status = st;
        out.t_event = t_ev;
        out.criterion = why;
        out.final_state.t = t_ev;
        out.final_state.u = u;
        out.final_state.u_t = ut;
        out.final_state.u_tt = b.u_tt;
        out.final_energy_sq = u_energy_sq(u, ut, dr);
        return out;
    };

    auto emit = [&](double t, const std::vector<double>& u, const std::vector<double>& ut,
                    const std::vector<double>& utt) {
        if (sinks.empty()) return;
        FieldSnapshot snap;
        snap.t = t;
        snap.u = u;
        snap.u_t = ut;
        snap.u_tt = utt;
        const LevelFields lf = make_level_fields(snap, grid);
        for (const auto& s : sinks) s(lf);
    };

    // Validity checks on the level about to be advanced (quasilinear only).
    auto check_level = [&](double t, const std::vector<double>& u,
                           const std::vector<double>& ut) -> std::optional<std::string> {
        bool finite = true;
        for (int i = 0; i < n; ++i)
            if (!std::isfinite(u[i])) { finite = false; break; }
        if (!finite) return std::string("nonfinite");
        if (nl) {
            const double sh = sup_abs_h();
            if (sh > 0.5) return std::string("h-bound");
            if (u_energy_sq(u, ut, dr) > energy_cap) return std::string("energy-cap");
            if (sup_speed_sq() > stability_sq) return std::string("cfl");
        } else {
            if (sup_abs_h() > 0.5)
                throw CoefficientBoundError("solve_linear: sup|h| exceeds 1/2 at t=" +
                                            std::to_string(t));
            if (sup_speed_sq() > stability_sq) return std::string("cfl");
        }
        (void)t;
        return std::nullopt;
    };

    // t = 0: coefficients, PDE acceleration, first Taylor step
    eval_level(0.0, b.u_cur, b.u_prev, b.u_prev2, 0);
    if (auto why = check_level(0.0, b.u_cur, u_t)) {
        const bool cfl = *why == "cfl";
        return finish(cfl ? SolveStatus::CflViolation : SolveStatus::Blowup, 0.0, *why,
                      b.u_cur, u_t);
    }
    {
        const double dr2 = dr * dr;
        par::parallel_for(n - 2, [&](std::int64_t k) {
            const int i = static_cast<int>(k) + 1;
            const double lap = (b.u_cur[i + 1] - 2.0 * b.u_cur[i] + b.u_cur[i - 1]) / dr2;
            b.u_tt[i] = (1.0 - b.h[i]) * lap + grid.radius(i) * b.force[i];
            b.u_next[i] = b.u_cur[i] + dt * u_t[i] + 0.5 * dt * dt * b.u_tt[i];
        });
        b.u_tt[0] = 0.0;
        b.u_tt[n - 1] = 0.0;
        b.u_next[0] = 0.0;
        b.u_next[n - 1] = 0.0;
    }
    emit(0.0, b.u_cur, u_t, b.u_tt);

    b.u_prev2 = b.u_cur; // placeholder; overwritten before first use at level 2
    b.u_prev = b.u_cur;
    b.u_cur = b.u_next;
    b.u_next.assign(n, 0.0);

    for (int step = 1; step <= nsteps; ++step) {
        const double t = step * dt;
        eval_level(t, b.u_cur, b.u_prev, b.u_prev2, step);

        // staggered u_t for monitoring; the emitted central value comes later
        par::parallel_for(n, [&](std::int64_t i) { u_t[i] = (b.u_cur[i] - b.u_prev[i]) / dt; });
        if (auto why = check_level(t, b.u_cur, u_t)) {
            const bool cfl = *why == "cfl";
            return finish(cfl ? SolveStatus::CflViolation : SolveStatus::Blowup, t, *why,
                          b.u_cur, u_t);
        }

        leapfrog_update(b.u_prev, b.u_cur, b.h, b.force, grid, dt, b.u_next, &b.u_tt);

        if (!sinks.empty() || step == nsteps) {
            par::parallel_for(n, [&](std::int64_t i) {
                u_t[i] = (b.u_next[i] - b.u_prev[i]) / (2.0 * dt);
            });
            emit(t, b.u_cur, u_t, b.u_tt);
        }

        if (step == nsteps)
            return finish(SolveStatus::Completed, T, "", b.u_cur, u_t);

        std::swap(b.u_prev2, b.u_prev);
        std::swap(b.u_prev, b.u_cur);
        std::swap(b.u_cur, b.u_next);
    }
    return finish(SolveStatus::Completed, T, "", b.u_cur, u_t); // unreachable
}

SolveOutcome solve_linear(const DataPair& pair, const CoefficientField& h, const Forcing& F,
                          double T, const RadialGrid& grid,
                          const std::vector<LevelSink>& sinks)
{
    return run_leapfrog(pair, &h, F, nullptr, T, grid, sinks, nullptr);
}

SolveOutcome solve_quasilinear(const DataPair& pair, const Nonlinearity& nl, double T,
                               const RadialGrid& grid, const std::vector<LevelSink>& sinks,
                               const Forcing& extra_forcing)
{
    return run_leapfrog(pair, nullptr, nullptr, &nl, T, grid, sinks, extra_forcing);
}

// ---------------------------------------------------------------------------
// d'Alembert oracle
// ---------------------------------------------------------------------------

DalembertOracle::DalembertOracle(RadialProfile f, RadialProfile g) : f_(f), g_(g) {}

double DalembertOracle::u0(double s) const { return s * f_.value(std::abs(s)); }

double DalembertOracle::u0p(double s) const
{
    const double a = std::abs(s);
    return f_.value(a) + a * f_.deriv(a);
}

double DalembertOracle::u0pp(double s) const
{
    const double a = std::abs(s);
    const double v = 2.0 * f_.deriv(a) + a * f_.deriv2(a);
    return s < 0.0 ? -v : v;
}

double DalembertOracle::u1(double s) const { return s * g_.value(std::abs(s)); }

double DalembertOracle::u1p(double s) const
{
    const double a = std::abs(s);
    return g_.value(a) + a * g_.deriv(a);
}

double DalembertOracle::U1(double s) const
{
    const double a = std::abs(s);
    if (g_.is_zero() || a == 0.0) return 0.0;
    if (g_.kind == RadialProfile::Kind::Gaussian && g_.center == 0.0) {
        const double w = g_.width;
        return g_.amplitude * 0.5 * w * w * (1.0 - std::exp(-(a / w) * (a / w)));
    }
    return integrate([this](double x) { return u1(x); }, 0.0, a, 1e-13, 1e-11);
}

double DalembertOracle::phi(double t, double r) const
{
    if (r < 1e-9 * std::max(1.0, t)) return u0p(t) + u1(t);
    return (u0(r + t) + u0(r - t) + U1(r + t) - U1(r - t)) / (2.0 * r);
}

double DalembertOracle::phi_t(double t, double r) const
{
    if (r < 1e-9 * std::max(1.0, t)) return u0pp(t) + u1p(t);
    return (u0p(r + t) - u0p(r - t) + u1(r + t) + u1(r - t)) / (2.0 * r);
}

double DalembertOracle::phi_r(double t, double r) const
{
    if (r < 1e-9 * std::max(1.0, t)) return 0.0;
    const double ph = phi(t, r);
    return (u0p(r + t) + u0p(r - t) + u1(r + t) - u1(r - t)) / (2.0 * r) - ph / r;
}

double dalembert_free(const DataPair& pair, double t, double r)
{
    if (r < 0.0)
        throw std::invalid_argument("dalembert_free: r must be nonnegative");
    if (!pair.analytic)
        throw std::invalid_argument("dalembert_free: pair has no analytic descriptors");
    DalembertOracle oracle(pair.f_prof, pair.g_prof);
    return oracle.phi(t, r);
}

} // namespace wavelab
