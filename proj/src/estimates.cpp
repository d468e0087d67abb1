#include "wavelab/estimates.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wavelab/initial_data.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

namespace {

// Streaming trapezoid accumulator for the mu-weighted sides.
class KssAccumulator {
public:
    KssAccumulator(const RadialGrid& grid, double mu, const CoefficientField& h,
                   const Forcing& F)
        : grid_(grid), mu_(mu), h_(&h), F_(&F),
          w_phi_(power_cell_weights(grid, 2.0 * mu - 1.0)),
          w_dphi_(power_cell_weights(grid, 2.0 * mu + 1.0)),
          w_mid_(power_cell_weights(grid, 2.0 * mu)),
          w_2_(power_cell_weights(grid, 2.0))
    {
        zeta_.resize(grid.nodes());
        for (int i = 0; i < grid.nodes(); ++i) {
            const double r = grid.radius(i);
            zeta_[i] = std::pow(1.0 + r * r, -mu); // <r>^{-2 mu}
        }
    }

    void add_level(const LevelFields& lv)
    {
        const int n = grid_.nodes();
        double ly1 = 0, ly2 = 0, lz1 = 0, lz2 = 0, inter = 0;
        for (int i = 0; i < n; ++i) {
            const double r = grid_.radius(i);
            const double p2 = lv.phi[i] * lv.phi[i];
            const double d2 = lv.phi_t[i] * lv.phi_t[i] + lv.phi_r[i] * lv.phi_r[i];
            ly1 += w_phi_[i] * p2;
            ly2 += w_dphi_[i] * d2;
            lz1 += w_phi_[i] * zeta_[i] * p2;
            lz2 += w_dphi_[i] * zeta_[i] * d2;

            const double Fv = F_ && *F_ ? (*F_)(lv.t, r) : 0.0;
            const double hv = h_->h ? h_->h(lv.t, r) : 0.0;
            const double ht = h_->h_t ? h_->h_t(lv.t, r) : 0.0;
            const double hr = h_->h_r ? h_->h_r(lv.t, r) : 0.0;
            if (Fv != 0.0 || hv != 0.0 || ht != 0.0 || hr != 0.0) {
                const double ad = std::sqrt(d2);
                const double ap = std::abs(lv.phi[i]);
                const double adh = std::sqrt(ht * ht + hr * hr);
                const double ah = std::abs(hv);
                const double aF = std::abs(Fv);
                inter += w_2_[i] * ad * aF;                     // |dphi||F|
                inter += w_dphi_[i] * zeta_[i] * ap * aF;       // |phi||F| weighted
                inter += w_2_[i] * adh * d2;                    // |dh||dphi|^2
                inter += w_dphi_[i] * zeta_[i] * adh * ap * ad; // |dh||phi dphi| w.
                inter += w_dphi_[i] * zeta_[i] * ah * d2;       // |h||dphi|^2 w.
                inter += w_mid_[i] * zeta_[i] * ah * ap * ad;   // |h||phi dphi| w.
            }
        }
        const double fourpi = 4.0 * M_PI;
        std::array<double, 5> vals{fourpi * ly1, fourpi * ly2, fourpi * lz1, fourpi * lz2,
                                   fourpi * inter};
        if (!started_) {
            started_ = true;
            first_t_ = last_t_ = lv.t;
            last_vals_ = vals;
            return;
        }
        const double half = 0.5 * (lv.t - last_t_);
        for (int k = 0; k < 5; ++k)
            acc_[k] += half * (last_vals_[k] + vals[k]);
        last_t_ = lv.t;
        last_vals_ = vals;
    }

    EstimateReport finalize(double rhs_data) const
    {
        EstimateReport rep;
        rep.mu = mu_;
        rep.T = last_t_ - first_t_;
        rep.lhs_y = std::pow(1.0 + rep.T, -2.0 * mu_) * (acc_[0] + acc_[1]);
        rep.lhs_z = (acc_[2] + acc_[3]) / std::log(2.0 + rep.T);
        rep.rhs_data = rhs_data;
        rep.rhs_interaction = acc_[4];
        const double rhs = rep.rhs_data + rep.rhs_interaction;
        rep.ratio_defined = rhs > 0.0;
        rep.ratio = rep.ratio_defined ? (rep.lhs_y + rep.lhs_z) / rhs : 0.0;
        return rep;
    }

private:
    RadialGrid grid_;
    double mu_;
    const CoefficientField* h_;
    const Forcing* F_;
    std::vector<double> w_phi_, w_dphi_, w_mid_, w_2_, zeta_;
    bool started_ = false;
    double first_t_ = 0.0, last_t_ = 0.0;
    std::array<double, 5> last_vals_{};
    std::array<double, 5> acc_{};
};

double data_gradient_sq(const DataPair& pair, const RadialGrid& grid)
{
    auto [fr, frr] = radial_derivatives(pair.f, grid);
    fr[0] = 0.0;
    const auto w2 = power_cell_weights(grid, 2.0);
    const double gf = l2_norm_radial(fr, grid, w2);
    const double gg = l2_norm_radial(pair.g, grid, w2);
    return gf * gf + gg * gg;
}

} // namespace

EstimateReport kss_sides(const DataPair& pair, const CoefficientField& h, const Forcing& F,
                         double mu, double T, const RadialGrid& grid)
{
    if (!(mu > 0.0 && mu < 0.5))
        throw std::invalid_argument("kss_sides: mu must lie in (0, 1/2)");
    KssAccumulator acc(grid, mu, h, F);
    std::vector<LevelSink> sinks;
    sinks.push_back([&acc](const LevelFields& lv) { acc.add_level(lv); });
    solve_linear(pair, h, F, T, grid, sinks);
    return acc.finalize(data_gradient_sq(pair, grid));
}

std::string EstimateReport::to_json() const
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"mu\":%.17g,\"T\":%.17g,\"lhs_y\":%.17g,\"lhs_z\":%.17g,"
                  "\"rhs_data\":%.17g,\"rhs_interaction\":%.17g,\"ratio\":%.17g,"
                  "\"ratio_defined\":%s}",
                  mu, T, lhs_y, lhs_z, rhs_data, rhs_interaction, ratio,
                  ratio_defined ? "true" : "false");
    return buf;
}

EnergyInequalityRecord energy_inequality_check(const DataPair& pair,
                                               const CoefficientField& h, const Forcing& F,
                                               double T, const RadialGrid& grid)
{
    const auto w2 = power_cell_weights(grid, 2.0);
    EnergyInequalityRecord rec;
    double acc = 0.0, last_t = 0.0, last_val = 0.0;
    bool started = false;
    double final_energy = 0.0;

    std::vector<LevelSink> sinks;
    sinks.push_back([&](const LevelFields& lv) {
        double row = 0.0, en = 0.0;
        for (int i = 0; i < grid.nodes(); ++i) {
            const double r = grid.radius(i);
            const double d2 = lv.phi_t[i] * lv.phi_t[i] + lv.phi_r[i] * lv.phi_r[i];
            const double Fv = F ? F(lv.t, r) : 0.0;
            const double ht = h.h_t ? h.h_t(lv.t, r) : 0.0;
            const double hr = h.h_r ? h.h_r(lv.t, r) : 0.0;
            row += w2[i] * (std::abs(lv.phi_t[i] * Fv) + std::sqrt(ht * ht + hr * hr) * d2);
            en += w2[i] * d2;
        }
        row *= 4.0 * M_PI;
        en *= 4.0 * M_PI;
        if (!started) {
            started = true;
            rec.rhs_data = en;
        } else {
            acc += 0.5 * (lv.t - last_t) * (last_val + row);
        }
        last_t = lv.t;
        last_val = row;
        final_energy = en;
    });
    solve_linear(pair, h, F, T, grid, sinks);
    rec.lhs = final_energy;
    rec.rhs_integral = acc;
    const double rhs = rec.rhs_data + rec.rhs_integral;
    rec.implied_c = rhs > 0.0 ? rec.lhs / rhs : 0.0;
    return rec;
}

SobolevRecord sobolev_checks(const std::vector<LevelFields>& snapshots,
                             const RadialGrid& grid)
{
    SobolevRecord rec;
    const auto w2 = power_cell_weights(grid, 2.0);
    const auto w0 = power_cell_weights(grid, 0.0);
    for (const LevelFields& lv : snapshots) {
        const double grad = l2_norm_radial(lv.phi_r, grid, w2);
        const double e2 = energy(lv, grid, 2);
        if (grad < 1e-14 || e2 < 1e-14) {
            ++rec.flagged;
            continue;
        }
        double s1 = 0.0, s2 = 0.0, s3 = 0.0, hardy_num = 0.0;
        for (int i = 0; i < grid.nodes(); ++i) {
            const double r = grid.radius(i);
            const double ap = std::abs(lv.phi[i]);
            const double ad = std::hypot(lv.phi_t[i], lv.phi_r[i]);
            if (i > 0) {
                s1 = std::max(s1, std::sqrt(r) * ap);
                s3 = std::max(s3, std::sqrt(r) * std::sqrt(std::sqrt(1.0 + r * r)) * ad);
            }
            s2 = std::max(s2, ap);
            hardy_num += w0[i] * lv.phi[i] * lv.phi[i];
        }
        rec.sup_weighted_value = std::max(rec.sup_weighted_value, s1 / grad);
        rec.sup_value_over_e2 = std::max(rec.sup_value_over_e2, s2 / e2);
        rec.sup_weighted_gradient = std::max(rec.sup_weighted_gradient, s3 / e2);
        rec.hardy_ratio =
            std::max(rec.hardy_ratio, std::sqrt(4.0 * M_PI * hardy_num) / grad);
        ++rec.counted;
    }
    return rec;
}

namespace {

// (rho_k * |.|^{-alpha})(r) by the shell formula; when r sits inside the kernel
// ball the s^{1-alpha} endpoint singularity goes to the QAGS path.
double convolve_power(const MollifierKernel& kern, double alpha, double r)
{
    const double eps = kern.support_radius();
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        return std::pow(s, 1.0 - alpha) * kern.shell_weight(std::abs(r - s), r + s);
    };
    const double lo = std::max(0.0, r - eps);
    const double hi = r + eps;
    double v;
    if (lo == 0.0) {
        v = integrate_singular(integrand, 0.0, hi, 1e-13, 1e-10);
    } else {
        v = gauss_legendre(integrand, lo, r, 6) + gauss_legendre(integrand, r, hi, 6);
    }
    return 2.0 * M_PI / r * v;
}

} // namespace

double line_average(double x_norm, double z_norm, double cos_angle, double gamma)
{
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("line_average: gamma must lie in [0, 1)");
    if (z_norm > 1.0 + 1e-12)
        throw std::invalid_argument("line_average: |z| must be <= 1");
    auto integrand = [&](double th) {
        const double q = x_norm * x_norm + 2.0 * th * x_norm * z_norm * cos_angle +
                         th * th * z_norm * z_norm;
        return std::pow(std::max(q, 0.0), -0.5 * gamma);
    };
    // an interior zero happens only in the exactly antipodal geometry
    if (cos_angle <= -1.0 + 1e-14 && z_norm > 0.0 && x_norm < z_norm) {
        const double th0 = x_norm / z_norm;
        return integrate_singular(integrand, 0.0, th0, 1e-12, 1e-9) +
               integrate_singular(integrand, th0, 1.0, 1e-12, 1e-9);
    }
    return integrate_singular(integrand, 0.0, 1.0, 1e-12, 1e-9);
}

ConvolutionRecord convolution_bound_check(const std::vector<int>& k_list,
                                          const std::vector<double>& alpha_list,
                                          const std::vector<double>& gamma_list, int x_count)
{
    for (double a : alpha_list)
        if (!(a >= 0.0 && a < 3.0))
            throw std::invalid_argument("convolution_bound_check: alpha must lie in [0, 3)");

    ConvolutionRecord rec;
    for (int k : k_list) {
        const MollifierKernel kern = mollifier_kernel(k);
        for (double alpha : alpha_list) {
            ConvolutionEntry e;
            e.k = k;
            e.alpha = alpha;
            // near field scaled to the kernel plus explicit far-field probes
            std::vector<double> xs;
            for (int i = 0; i < x_count; ++i)
                xs.push_back(0.02 / k * std::pow(400.0, i / double(x_count - 1)));
            for (double m : {10.0, 20.0, 50.0, 100.0})
                xs.push_back(m / k);
            std::vector<double> ratios(xs.size());
            par::parallel_for(static_cast<std::int64_t>(xs.size()), [&](std::int64_t i) {
                ratios[i] = std::pow(xs[i], alpha) * convolve_power(kern, alpha, xs[i]);
            });
            double sup = 0.0, far = 0.0;
            for (size_t i = 0; i < xs.size(); ++i) {
                sup = std::max(sup, ratios[i]);
                if (xs[i] >= 10.0 / k - 1e-12)
                    far = std::max(far, std::abs(ratios[i] - 1.0));
            }
            e.sup_ratio = sup;
            e.far_field_dev = far;
            rec.entries.push_back(e);
        }
    }
    for (double gamma : gamma_list) {
        LineAverageEntry le;
        le.gamma = gamma;
        double sup = 0.0;
        for (double xn : {0.05, 0.2, 0.5, 1.0, 2.0})
            for (double zn : {0.25, 0.6, 1.0})
                for (double ca : {-1.0, -0.5, 0.0, 0.5, 1.0})
                    sup = std::max(sup, std::pow(xn, gamma) * line_average(xn, zn, ca, gamma));
        le.sup_ratio = sup;
        rec.line_entries.push_back(le);
    }
    return rec;
}

} // namespace wavelab
