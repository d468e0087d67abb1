#include "wavelab/picard.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "wavelab/common.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

StageTable::StageTable(const RadialGrid& grid, int stride)
    : stride_(stride < 1 ? 1 : stride), nodes_(grid.nodes())
{
}

bool StageTable::pending_last() const
{
    return !rows_t_.empty() && (seen_ - 1) % stride_ != 0;
}

void StageTable::push_level(const LevelFields& lv)
{
    // keep every stride-th row, and always track the most recent level so the
    // table covers the whole interval up to T
    if (seen_ % stride_ == 0 || !pending_last()) {
        rows_t_.push_back(lv.t);
        phi_.push_back(lv.phi);
        phi_t_.push_back(lv.phi_t);
        phi_r_.push_back(lv.phi_r);
    } else {
        rows_t_.back() = lv.t;
        phi_.back() = lv.phi;
        phi_t_.back() = lv.phi_t;
        phi_r_.back() = lv.phi_r;
    }
    ++seen_;
}

StageTable::Locator StageTable::locate(double t) const
{
    Locator loc;
    if (rows_t_.size() == 1 || t <= rows_t_.front()) {
        loc.lo = 0;
        loc.w = 0.0;
        return loc;
    }
    if (t >= rows_t_.back()) {
        loc.lo = static_cast<int>(rows_t_.size()) - 2;
        loc.w = 1.0;
        return loc;
    }
    int lo = 0, hi = static_cast<int>(rows_t_.size()) - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (rows_t_[mid] <= t ? lo : hi) = mid;
    }
    loc.lo = lo;
    loc.w = (t - rows_t_[lo]) / (rows_t_[lo + 1] - rows_t_[lo]);
    return loc;
}

double StageTable::phi_at(double t, int node) const
{
    if (is_zero()) return 0.0;
    const Locator l = locate(t);
    return (1.0 - l.w) * phi_[l.lo][node] + l.w * phi_[l.lo + 1][node];
}

double StageTable::phi_t_at(double t, int node) const
{
    if (is_zero()) return 0.0;
    const Locator l = locate(t);
    return (1.0 - l.w) * phi_t_[l.lo][node] + l.w * phi_t_[l.lo + 1][node];
}

double StageTable::phi_r_at(double t, int node) const
{
    if (is_zero()) return 0.0;
    const Locator l = locate(t);
    return (1.0 - l.w) * phi_r_[l.lo][node] + l.w * phi_r_[l.lo + 1][node];
}

DiffAccumulator::DiffAccumulator(const RadialGrid& grid, const StageTable& reference)
    : grid_(grid), ref_(&reference),
      w_m_(power_cell_weights(grid, -0.5)),
      w_p_(power_cell_weights(grid, 1.5)),
      w_2_(power_cell_weights(grid, 2.0))
{
}

void DiffAccumulator::add_level(const LevelFields& lv)
{
    const int n = grid_.nodes();
    double g2 = 0, t2 = 0, i1 = 0, i2 = 0;
    for (int i = 0; i < n; ++i) {
        const double dphi = lv.phi[i] - ref_->phi_at(lv.t, i);
        const double dt_ = lv.phi_t[i] - ref_->phi_t_at(lv.t, i);
        const double dr_ = lv.phi_r[i] - ref_->phi_r_at(lv.t, i);
        g2 += w_2_[i] * dr_ * dr_;
        t2 += w_2_[i] * dt_ * dt_;
        i1 += w_m_[i] * dphi * dphi;
        i2 += w_p_[i] * (dt_ * dt_ + dr_ * dr_);
    }
    const double fourpi = 4.0 * M_PI;
    sup_g_ = std::max(sup_g_, std::sqrt(fourpi * g2));
    sup_t_ = std::max(sup_t_, std::sqrt(fourpi * t2));
    const double v1 = fourpi * i1, v2 = fourpi * i2;
    if (started_) {
        const double half = 0.5 * (lv.t - last_t_);
        acc1_ += half * (last1_ + v1);
        acc2_ += half * (last2_ + v2);
    } else {
        started_ = true;
        first_t_ = lv.t;
    }
    last_t_ = lv.t;
    last1_ = v1;
    last2_ = v2;
}

double DiffAccumulator::e1() const { return sup_g_ + sup_t_; }

double DiffAccumulator::y1() const
{
    const double T = last_t_ - first_t_;
    return std::sqrt((acc1_ + acc2_) / std::sqrt(1.0 + T));
}

IterationReport picard_run(const DataPair& pair, const Nonlinearity& nl, double T,
                           const RadialGrid& grid, int k_max, double tol,
                           StageTable* final_table)
{
    if (k_max < 0)
        throw std::invalid_argument("picard_run: k_max must be nonnegative");
    IterationReport rep;
    rep.T = T;
    rep.tol = tol;
    rep.eps = sobolev_norms(pair, grid).epsilon;

    // full-resolution tables while they fit, stride 4 beyond that
    const long levels = static_cast<long>(std::ceil(T / grid.dt)) + 1;
    const long full_cost = levels * grid.nodes() * 3;
    const int stride = full_cost <= 64L * 1000 * 1000 ? 1 : 4;

    StageTable prev; // phi_{-1} == 0
    DataPair data_prev;
    const auto w2 = power_cell_weights(grid, 2.0);

    for (int k = 0; k <= k_max; ++k) {
        const DataPair data_k = mollify_pair(pair, 1 << k, grid);
        double data_diff = 0.0;
        if (k > 0) {
            std::vector<double> df(grid.nodes()), dg(grid.nodes());
            for (int i = 0; i < grid.nodes(); ++i) {
                df[i] = data_k.f[i] - data_prev.f[i];
                dg[i] = data_k.g[i] - data_prev.g[i];
            }
            auto [dfr, dfrr] = radial_derivatives(df, grid);
            dfr[0] = 0.0;
            data_diff = l2_norm_radial(dfr, grid, w2) + l2_norm_radial(dg, grid, w2);
        }

        CoefficientField h;
        h.h = [&prev, &nl, &grid](double t, double r) {
            const int i = static_cast<int>(std::lround(r / grid.dr));
            return nl.h_of(prev.phi_at(t, i));
        };
        h.sup_abs = 0.5; // declared bound; stages abort on the 1/6 check anyway
        Forcing F;
        if (nl.a != 0.0 || nl.b != 0.0) {
            F = [&prev, &nl, &grid](double t, double r) {
                const int i = static_cast<int>(std::lround(r / grid.dr));
                const double pt = prev.phi_t_at(t, i);
                const double pr = prev.phi_r_at(t, i);
                return nl.a * pt * pt + nl.b * pr * pr;
            };
        }

        NormAccumulator norms(grid);
        DiffAccumulator diff(grid, prev);
        StageTable next(grid, stride);
        double sup_h = 0.0;
        std::vector<LevelSink> sinks;
        sinks.push_back([&](const LevelFields& lv) {
            norms.accumulate_level(lv);
            diff.add_level(lv);
            next.push_level(lv);
            for (double p : lv.phi)
                sup_h = std::max(sup_h, std::abs(nl.h_of(p)));
        });

        SolveOutcome out;
        try {
            out = solve_linear(data_k, h, F, T, grid, sinks);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "picard stage " << k << ": " << e.what();
            throw std::runtime_error(os.str());
        }
        if (out.status != SolveStatus::Completed) {
            rep.failure_stage = k;
            rep.failure_kind = out.criterion.empty() ? "solver" : out.criterion;
            break;
        }

        const NormReport nr = finalize(norms);
        IterationRecord rec;
        rec.k = k;
        rec.e1_diff = diff.e1();
        rec.y1_diff = diff.y1();
        rec.data_diff = data_diff;
        rec.e2 = nr.E2;
        rec.y2 = nr.Y2;
        rec.z2 = nr.Z2;
        rec.sup_h = sup_h;
        rec.admissible = sup_h <= 1.0 / 6.0 + 1e-15;
        rep.records.push_back(rec);

        if (!rec.admissible) {
            rep.failure_stage = k;
            rep.failure_kind = "admissibility";
            break;
        }
        prev = std::move(next);
        data_prev = data_k;
        if (rec.e1_diff + rec.y1_diff < tol) break;
    }

    if (rep.eps > 0.0) {
        for (const auto& r : rep.records)
            rep.m1_proxy = std::max(rep.m1_proxy, (r.e2 + r.y2 + r.z2) / rep.eps);
    }
    for (size_t i = 2; i < rep.records.size(); ++i) {
        const double den = rep.records[i - 1].e1_diff + rep.records[i - 1].y1_diff;
        const double num = rep.records[i].e1_diff + rep.records[i].y1_diff;
        if (den > 0.0) rep.max_ratio = std::max(rep.max_ratio, num / den);
    }
    // two-term least squares d_k = alpha * ddata_k + beta * d_{k-1} over k >= 1
    if (rep.records.size() >= 4) {
        double saa = 0, sab = 0, sbb = 0, say = 0, sby = 0;
        for (size_t i = 1; i < rep.records.size(); ++i) {
            const double a = rep.records[i].data_diff;
            const double b = rep.records[i - 1].e1_diff + rep.records[i - 1].y1_diff;
            const double y = rep.records[i].e1_diff + rep.records[i].y1_diff;
            saa += a * a;
            sab += a * b;
            sbb += b * b;
            say += a * y;
            sby += b * y;
        }
        const double det = saa * sbb - sab * sab;
        if (det > 1e-30 * saa * sbb || (saa > 0 && sbb > 0 && det > 0)) {
            const double alpha = (say * sbb - sab * sby) / det;
            const double beta = (saa * sby - sab * say) / det;
            rep.c4_proxy = 0.75 * std::max(alpha, 0.0);
            rep.contraction_factor = std::max(beta, 0.0);
        }
    }
    if (rep.m1_proxy > 0.0 && rep.eps > 0.0 && rep.c4_proxy > 0.0)
        rep.configured_check =
            rep.c4_proxy * 2.0 * rep.m1_proxy * rep.eps * std::sqrt(1.0 + T);
    if (final_table) *final_table = std::move(prev);
    return rep;
}

std::vector<RatioEntry> contraction_ratios(const IterationReport& report)
{
    if (report.records.size() < 3)
        throw std::invalid_argument("contraction_ratios: need at least 3 records");
    std::vector<RatioEntry> out;
    for (size_t i = 1; i < report.records.size(); ++i) {
        const double den = report.records[i - 1].e1_diff + report.records[i - 1].y1_diff;
        const double num = report.records[i].e1_diff + report.records[i].y1_diff;
        RatioEntry e;
        e.defined = den > 0.0;
        e.value = e.defined ? num / den : 0.0;
        out.push_back(e);
    }
    return out;
}

std::string IterationReport::to_json() const
{
    std::ostringstream os;
    char buf[512];
    std::snprintf(buf, sizeof buf, "{\"eps\":%.17g,\"T\":%.17g,\"tol\":%.17g,\"records\":[",
                  eps, T, tol);
    os << buf;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        std::snprintf(buf, sizeof buf,
                      "%s{\"k\":%d,\"e1_diff\":%.17g,\"y1_diff\":%.17g,\"data_diff\":%.17g,"
                      "\"e2\":%.17g,\"y2\":%.17g,\"z2\":%.17g,\"sup_h\":%.17g,"
                      "\"admissible\":%s}",
                      i ? "," : "", r.k, r.e1_diff, r.y1_diff, r.data_diff, r.e2, r.y2,
                      r.z2, r.sup_h, r.admissible ? "true" : "false");
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "],\"m1_proxy\":%.17g,\"max_ratio\":%.17g,\"contraction_factor\":%.17g,"
                  "\"c4_proxy\":%.17g,\"configured_check\":%.17g",
                  m1_proxy, max_ratio, contraction_factor, c4_proxy, configured_check);
    os << buf;
    if (failure_stage)
        os << ",\"failure_stage\":" << *failure_stage << ",\"failure_kind\":\""
           << failure_kind << "\"";
    os << "}";
    return os.str();
}

} // namespace wavelab
