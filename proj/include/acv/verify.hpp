#ifndef ACV_VERIFY_HPP
#define ACV_VERIFY_HPP

#include "curve.hpp"
#include "problem.hpp"

#include <cmath>

namespace acv {

struct OrderCheckRow {
    size_t j = 0;        // 0-based
    long min_spread = 0; // min_{i != j} <(q',0), w_i - w_j>
    long ord = -1;       // ord_t <mu_j, theta_u f^W>(Q(t)); -1 = beyond truncation
    bool in_j_set = false;
    bool pass = false;   // min_spread + ord > 0
};

struct SlopeFit {
    double slope = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<double> t_grid;
    std::vector<double> norm_growth;      // max_i |x_i(t)|
    std::vector<double> malgrange_max;    // max_{i != j} |x_i df/dx_j|
    std::vector<Cplx> f_values;
    SlopeFit cond_i;   // log ||X|| vs log(1/t), slope >= 0.9
    SlopeFit cond_ii;  // log max|x_i d_j f| vs log t, slope >= 0.9
    Cplx limit_estimate;
    bool limit_pass = false;
    bool truncated = false; // grid cut short on overflow
    std::vector<OrderCheckRow> symbolic;
    bool symbolic_pass = false;
    double fw_consistency = 0.0; // max rel. deviation of f(X(t)) vs f^W(Q(t))
};

/// Exact order bookkeeping: substitute the curve into each mu-jet, read off
/// the t-order, and assert min_{i != j} <(q',0), w_i - w_j> + ord > 0.
/// Throws OrderShortfall on failure unless `throwing` is false.
inline std::vector<OrderCheckRow> symbolic_order_check(
    const CurveJet& curve, const std::vector<JetSeries>& jets, const FacetData& fd,
    const Chart& chart, bool throwing = true) {
    size_t n = chart.n();
    long tmax = fd.l0 + 2;
    double scale = detail::g_scale(jets);
    std::vector<OrderCheckRow> rows;
    for (size_t j = 0; j < n; ++j) {
        OrderCheckRow row;
        row.j = j;
        row.in_j_set =
            std::find(fd.j_set.begin(), fd.j_set.end(), j) != fd.j_set.end();
        long mn = 0;
        bool first = true;
        for (size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            long v = fd.s[i] - fd.s[j];
            if (first || v < mn) mn = v, first = false;
        }
        row.min_spread = mn;
        auto g = detail::g_series(jets[j], curve, tmax);
        row.ord = -1;
        for (long p = 0; p <= tmax; ++p)
            if (abs(g[static_cast<size_t>(p)]).convert_to<double>() > 1e-30 * scale) {
                row.ord = p;
                break;
            }
        long effective = row.ord < 0 ? tmax + 1 : row.ord;
        row.pass = row.min_spread + effective > 0;
        rows.push_back(row);
        if (throwing && !row.pass)
            throw OrderShortfall("j = " + std::to_string(j + 1) + ": " +
                                 std::to_string(row.min_spread) + " + ord " +
                                 std::to_string(effective) + " <= 0");
    }
    return rows;
}

namespace detail {

inline SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                          int window, double threshold) {
    SlopeFit out;
    int m = static_cast<int>(xs.size());
    int w = std::min(window, m);
    if (w < 2) return out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = m - w; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = w * sxx - sx * sx;
    if (denom == 0) return out;
    out.slope = (w * sxy - sx * sy) / denom;
    out.pass = out.slope >= threshold;
    return out;
}

} // namespace detail

/// Numeric verification of conditions (I) and (II) and the limit along the
/// witness curve.  Evaluation runs in high precision: the pair products
/// cancel across dozens of digits at the small end of the grid.
inline VerificationReport numeric_verify(const SparsePoly& f, const SparsePoly& f_w,
                                         const WitnessCurve& x, const Cplx& target,
                                         const GridConfig& grid = {}) {
    VerificationReport rep;
    size_t n = f.n;
    double lg0 = std::log10(grid.t_max), lg1 = std::log10(grid.t_min);
    for (int i = 0; i < grid.points; ++i) {
        double lg = lg0 + (lg1 - lg0) * (grid.points == 1 ? 0 : double(i) / (grid.points - 1));
        MpReal t = pow(MpReal(10), MpReal(lg));
        auto xv = x.eval_x(t);
        // f and the log-gradient pairs at X(t)
        MpCplx fv;
        std::vector<MpCplx> grad(n); // df/dx_j
        MpReal maxx = 0;
        for (const auto& z : xv) maxx = std::max(maxx, abs(z));
        if (maxx > MpReal("1e200")) {
            rep.truncated = true; // keep the early part of the grid
            break;
        }
        for (const auto& [e, c] : f.terms) {
            MpCplx m = MpCplx::from(c);
            for (size_t v = 0; v < n; ++v)
                if (e[v] != 0) m = m * pow_int(xv[v], e[v]);
            fv += m;
            for (size_t j = 0; j < n; ++j)
                if (e[j] != 0) grad[j] += MpCplx(MpReal(e[j])) * (m / xv[j]);
        }
        MpReal mal = 0;
        for (size_t i2 = 0; i2 < n; ++i2)
            for (size_t j = 0; j < n; ++j) {
                if (i2 == j) continue;
                mal = std::max(mal, abs(xv[i2] * grad[j]));
            }
        auto clamp_d = [](const MpReal& v) {
            double d = v.convert_to<double>();
            if (!std::isfinite(d)) d = 1e300;
            return std::min(d, 1e300);
        };
        rep.t_grid.push_back(t.convert_to<double>());
        rep.norm_growth.push_back(clamp_d(maxx));
        rep.malgrange_max.push_back(clamp_d(mal));
        rep.f_values.push_back(fv.to_cplx());
        // f(X(t)) = f^W(Q(t)) along the curve (Laurent evaluation in u)
        std::vector<MpCplx> u(n);
        for (size_t v = 0; v < n; ++v) u[v] = x.jet.eval_u(v, t);
        MpCplx fwv = f_w.eval_mp(u);
        double rel = abs(fwv - fv).convert_to<double>() /
                     std::max(1.0, abs(fv).convert_to<double>());
        rep.fw_consistency = std::max(rep.fw_consistency, rel);
    }
    if (rep.t_grid.empty()) throw NumericOverflow("entire grid overflowed");

    std::vector<double> log_inv_t, log_norm, log_t, log_mal;
    for (size_t i = 0; i < rep.t_grid.size(); ++i) {
        log_inv_t.push_back(std::log(1.0 / rep.t_grid[i]));
        log_t.push_back(std::log(rep.t_grid[i]));
        log_norm.push_back(std::log(std::max(rep.norm_growth[i], 1e-300)));
        log_mal.push_back(std::log(std::max(rep.malgrange_max[i], 1e-300)));
    }
    rep.cond_i = detail::fit_slope(log_inv_t, log_norm, grid.fit_points, 0.9);
    rep.cond_ii = detail::fit_slope(log_t, log_mal, grid.fit_points, 0.9);

    rep.limit_estimate = rep.f_values.back();
    double err = std::abs(rep.limit_estimate - target);
    bool within = err <= 1e-4 * (1.0 + std::abs(target));
    // decreasing |f - target| over the last three decades of t
    bool decreasing = true;
    {
        std::vector<double> errs;
        for (size_t i = 0; i < rep.t_grid.size(); ++i)
            errs.push_back(std::abs(rep.f_values[i] - target));
        size_t m = errs.size();
        size_t third = std::max<size_t>(2, m / 3);
        for (size_t i = m - third; i + 1 < m; ++i)
            if (errs[i + 1] > errs[i] + 1e-12 * (1 + std::abs(target))) decreasing = false;
    }
    rep.limit_pass = within && decreasing;
    return rep;
}

/// Consistency of Eq.-style chain rule along the curve: at each sample,
/// <l, x> * df/dx_i computed in x-coordinates must match
/// <l, u^W> * <mu_i, theta_u f^W> / u^{w_i} computed in u-coordinates.
inline double chain_rule_consistency(const SparsePoly& f, const SparsePoly& f_w,
                                     const Chart& chart, const WitnessCurve& x,
                                     const std::vector<double>& lvec, double t) {
    size_t n = f.n;
    MpReal tt(t);
    auto xv = x.eval_x(tt);
    std::vector<MpCplx> u(n);
    for (size_t v = 0; v < n; ++v) u[v] = x.jet.eval_u(v, tt);
    // left: <l, x> df/dx_i
    MpCplx lx;
    for (size_t i = 0; i < n; ++i) lx += MpCplx(MpReal(lvec[i])) * xv[i];
    std::vector<MpCplx> grad(n);
    for (const auto& [e, c] : f.terms) {
        MpCplx m = MpCplx::from(c);
        for (size_t v = 0; v < n; ++v)
            if (e[v] != 0) m = m * pow_int(xv[v], e[v]);
        for (size_t j = 0; j < n; ++j)
            if (e[j] != 0) grad[j] += MpCplx(MpReal(e[j])) * (m / xv[j]);
    }
    // right: <l, u^W> * <mu_i, theta_u f^W>(u) / u^{w_i}
    auto theta = log_gradient(f_w);
    double worst = 0;
    for (size_t i = 0; i < n; ++i) {
        MpCplx lhs = lx * grad[i];
        MpCplx mu_theta;
        IntVec mu = chart.mu(i);
        for (size_t j = 0; j < n; ++j) {
            if (mu[j] == 0) continue;
            mu_theta += MpCplx(MpReal(mu[j].convert_to<long>())) * theta[j].eval_mp(u);
        }
        MpCplx uw(MpReal(1));
        for (size_t v = 0; v < n; ++v) {
            long e = chart.w[i][v].convert_to<long>();
            if (e != 0) uw = uw * pow_int(u[v], e);
        }
        MpCplx rhs = lx * (mu_theta / uw);
        double num = abs(lhs - rhs).convert_to<double>();
        double den = std::max(abs(lhs).convert_to<double>(), 1e-30);
        worst = std::max(worst, num / den);
    }
    return worst;
}

} // namespace acv

#endif
