#include "wavelab/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wavelab/common.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

NormAccumulator::NormAccumulator(const RadialGrid& grid)
    : grid_(grid),
      w_m_(power_cell_weights(grid, -0.5)),
      w_p_(power_cell_weights(grid, 1.5)),
      w_2_(power_cell_weights(grid, 2.0))
{
    zeta_.resize(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i) {
        const double r = grid.radius(i);
        zeta_[i] = 1.0 / std::sqrt(std::sqrt(1.0 + r * r));
    }
}

std::array<double, 8> NormAccumulator::level_integrands(const LevelFields& lv) const
{
    const int n = grid_.nodes();
    const auto hess = hessian_frobenius_sq(lv.phi_r, lv.phi_rr, grid_);
    std::array<double, 8> s{};
    // fixed-order loop keeps merging/streaming bitwise reproducible
    for (int i = 0; i < n; ++i) {
        const double p2 = lv.phi[i] * lv.phi[i];
        const double d2 = lv.phi_t[i] * lv.phi_t[i] + lv.phi_r[i] * lv.phi_r[i];
        const double dd2 =
            lv.phi_tt[i] * lv.phi_tt[i] + 2.0 * lv.phi_tr[i] * lv.phi_tr[i] + hess[i];
        s[0] += w_m_[i] * p2;
        s[1] += w_p_[i] * d2;
        s[2] += w_m_[i] * zeta_[i] * p2;
        s[3] += w_p_[i] * zeta_[i] * d2;
        s[4] += w_m_[i] * d2;
        s[5] += w_p_[i] * dd2;
        s[6] += w_m_[i] * zeta_[i] * d2;
        s[7] += w_p_[i] * zeta_[i] * dd2;
    }
    for (auto& v : s) v *= 4.0 * M_PI;
    return s;
}

void NormAccumulator::accumulate_level(const LevelFields& lv)
{
    if (!empty_ && !(lv.t > last_t_))
        throw SequencingError("accumulate_level: levels must arrive in increasing t");

    const auto vals = level_integrands(lv);
    const auto hess = hessian_frobenius_sq(lv.phi_r, lv.phi_rr, grid_);

    const int n = grid_.nodes();
    double g2 = 0, t2 = 0, h2 = 0, tr2 = 0, tt2 = 0;
    for (int i = 0; i < n; ++i) {
        g2 += w_2_[i] * lv.phi_r[i] * lv.phi_r[i];
        t2 += w_2_[i] * lv.phi_t[i] * lv.phi_t[i];
        h2 += w_2_[i] * hess[i];
        tr2 += w_2_[i] * lv.phi_tr[i] * lv.phi_tr[i];
        tt2 += w_2_[i] * lv.phi_tt[i] * lv.phi_tt[i];
    }
    const double fourpi = 4.0 * M_PI;
    sup_[0] = std::max(sup_[0], std::sqrt(fourpi * g2));
    sup_[1] = std::max(sup_[1], std::sqrt(fourpi * t2));
    sup_[2] = std::max(sup_[2], std::sqrt(fourpi * h2));
    sup_[3] = std::max(sup_[3], std::sqrt(fourpi * tr2));
    sup_[4] = std::max(sup_[4], std::sqrt(fourpi * tt2));

    if (empty_) {
        empty_ = false;
        first_t_ = last_t_ = lv.t;
        first_vals_ = last_vals_ = vals;
        return;
    }
    const double half_dt = 0.5 * (lv.t - last_t_);
    for (int k = 0; k < 8; ++k)
        integral_[k] += half_dt * (last_vals_[k] + vals[k]);
    last_t_ = lv.t;
    last_vals_ = vals;
}

void NormAccumulator::merge(const NormAccumulator& later)
{
    if (later.empty_) return;
    if (empty_) {
        *this = later;
        return;
    }
    if (!(later.first_t_ > last_t_))
        throw SequencingError("merge: slabs must be disjoint and ordered");
    const double half_dt = 0.5 * (later.first_t_ - last_t_);
    for (int k = 0; k < 8; ++k)
        integral_[k] += half_dt * (last_vals_[k] + later.first_vals_[k]) + later.integral_[k];
    for (int k = 0; k < 5; ++k)
        sup_[k] = std::max(sup_[k], later.sup_[k]);
    last_t_ = later.last_t_;
    last_vals_ = later.last_vals_;
}

NormReport finalize(const NormAccumulator& acc)
{
    if (acc.empty() || !(acc.last_t() - acc.first_t() > 0.0))
        throw std::invalid_argument("finalize: accumulator spans no time");
    NormReport rep;
    rep.T = acc.last_t() - acc.first_t();
    const auto& I = acc.integrals();
    rep.I1 = I[0];
    rep.I2 = I[1];
    rep.J1 = I[2];
    rep.J2 = I[3];
    const double wy = 1.0 / std::sqrt(1.0 + rep.T);
    const double wz = 1.0 / std::log(2.0 + rep.T);
    rep.Y1 = std::sqrt(wy * (I[0] + I[1]));
    rep.Z1 = std::sqrt(wz * (I[2] + I[3]));
    rep.Y2 = std::sqrt(rep.Y1 * rep.Y1 + wy * (I[4] + I[5]));
    rep.Z2 = std::sqrt(rep.Z1 * rep.Z1 + wz * (I[6] + I[7]));
    const auto& s = acc.sups();
    rep.E1 = s[0] + s[1];
    rep.E2 = rep.E1 + s[2] + 2.0 * s[3] + s[4];
    return rep;
}

std::string NormReport::to_json() const
{
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "{\"E1\":%.17g,\"E2\":%.17g,\"Y1\":%.17g,\"Y2\":%.17g,"
                  "\"Z1\":%.17g,\"Z2\":%.17g,\"I1\":%.17g,\"I2\":%.17g,"
                  "\"J1\":%.17g,\"J2\":%.17g,\"T\":%.17g}",
                  E1, E2, Y1, Y2, Z1, Z2, I1, I2, J1, J2, T);
    return buf;
}

double energy(const LevelFields& lv, const RadialGrid& grid, int order)
{
    if (order != 1 && order != 2)
        throw std::invalid_argument("energy: order must be 1 or 2");
    const auto w2 = power_cell_weights(grid, 2.0);
    const double g = l2_norm_radial(lv.phi_r, grid, w2);
    const double t = l2_norm_radial(lv.phi_t, grid, w2);
    double e = g + t;
    if (order == 2) {
        const auto hess = hessian_frobenius_sq(lv.phi_r, lv.phi_rr, grid);
        const double h2 = weighted_sum(w2, hess);
        const double tr = l2_norm_radial(lv.phi_tr, grid, w2);
        const double tt = l2_norm_radial(lv.phi_tt, grid, w2);
        e += std::sqrt(4.0 * M_PI * h2) + 2.0 * tr + tt;
    }
    return e;
}

double quadratic_energy(const LevelFields& lv, const RadialGrid& grid)
{
    const auto w2 = power_cell_weights(grid, 2.0);
    const double g = l2_norm_radial(lv.phi_r, grid, w2);
    const double t = l2_norm_radial(lv.phi_t, grid, w2);
    return std::sqrt(g * g + t * t);
}

} // namespace wavelab
