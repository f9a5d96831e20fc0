#ifndef ACV_CRITICAL_HPP
#define ACV_CRITICAL_HPP

#include "chart.hpp"
#include "linalg.hpp"
#include "sparsepoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <vector>

namespace acv {

constexpr double kTorusEps = 1e-9;
constexpr double kDedupTol = 1e-8;

struct TorusCriticalPoint {
    std::vector<Cplx> u;       // toric coordinates, length n-k
    std::vector<MpCplx> u_mp;  // high-precision polish of the same point
    Cplx value;
    double residual = 0.0;
    bool isolated = true;
};

struct CandidateSet {
    std::vector<Cplx> values;           // deduplicated
    std::vector<size_t> source_face;    // index of a bad face producing values[i]
    bool zero_marker = false;           // appended {0} for nondegenerate inputs
};

namespace detail {

// restrict f_gamma^W (independent of the affine variables) to the toric block
inline SparsePoly toric_restriction(const SparsePoly& g, size_t k) {
    SparsePoly r(g.n - k);
    for (const auto& [e, c] : g.terms) {
        for (size_t i = 0; i < k; ++i)
            if (e[i] != 0) throw acv_error("toric_restriction: affine dependence");
        Expo t(e.begin() + k, e.end());
        r.add_term(t, c);
    }
    return r;
}

inline std::vector<Cplx> to_cplx(const std::vector<MpCplx>& v) {
    std::vector<Cplx> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_cplx();
    return out;
}

template <typename C>
inline C poly_eval(const SparsePoly& p, const std::vector<C>& x);

// damped Newton on theta g = 0 for a polynomial g on the torus
template <typename C>
inline bool newton_theta(const std::vector<SparsePoly>& theta,
                         const std::vector<std::vector<SparsePoly>>& hess,
                         std::vector<C>& u, int iters, double tol) {
    size_t m = u.size();
    auto eval_vec = [&](const std::vector<C>& x) {
        std::vector<C> f(m);
        for (size_t j = 0; j < m; ++j) f[j] = poly_eval<C>(theta[j], x);
        return f;
    };
    auto norm_of = [&](const std::vector<C>& f) {
        double s = 0;
        for (const auto& z : f) s = std::max(s, static_cast<double>(cmod(z)));
        return s;
    };
    auto f = eval_vec(u);
    for (int it = 0; it < iters; ++it) {
        double fn = norm_of(f);
        if (fn < tol) return true;
        CMat<C> jac(m, std::vector<C>(m));
        for (size_t j = 0; j < m; ++j)
            for (size_t l = 0; l < m; ++l)
                jac[j][l] = poly_eval<C>(hess[j][l], u) / u[l];
        std::vector<C> rhs(m);
        for (size_t j = 0; j < m; ++j) rhs[j] = -f[j];
        auto step = lu_solve(jac, rhs);
        std::vector<C> dx;
        if (!step)
            dx = lstsq_ridge(jac, rhs, 1e-36);
        else
            dx = *step;
        double lam = 1.0;
        bool moved = false;
        while (lam > 1e-12) {
            std::vector<C> cand(m);
            bool on_torus = true;
            for (size_t j = 0; j < m; ++j) {
                cand[j] = u[j] + C(lam) * dx[j];
                if (static_cast<double>(cmod(cand[j])) < kTorusEps) on_torus = false;
            }
            if (on_torus) {
                auto fc = eval_vec(cand);
                if (norm_of(fc) < fn) {
                    u = cand;
                    f = fc;
                    moved = true;
                    break;
                }
            }
            lam /= 2;
        }
        if (!moved) return norm_of(f) < tol;
    }
    return norm_of(f) < tol;
}

template <>
inline Cplx poly_eval<Cplx>(const SparsePoly& p, const std::vector<Cplx>& x) {
    Cplx s{};
    for (const auto& [e, c] : p.terms) {
        Cplx m(to_double(c), 0.0);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) m *= pow_int(x[i], e[i]);
        s += m;
    }
    return s;
}

template <>
inline MpCplx poly_eval<MpCplx>(const SparsePoly& p, const std::vector<MpCplx>& x) {
    return p.eval_mp(x);
}

} // namespace detail

/// Critical points of g (a genuine polynomial in the toric variables) on the
/// torus.  Univariate face polynomials use exact-degree companion-matrix root
/// finding on g'; multivariate ones use multistart damped Newton on the
/// logarithmic gradient.  Points sharing a critical value in clusters of 5+
/// are flagged as a non-isolated locus with one representative.
inline std::vector<TorusCriticalPoint> face_critical_points(const SparsePoly& g_toric,
                                                            uint64_t seed = 1,
                                                            int starts = 64) {
    size_t m = g_toric.n;
    std::vector<TorusCriticalPoint> found;

    auto theta = log_gradient(g_toric);
    std::vector<std::vector<SparsePoly>> hess(m);
    for (size_t j = 0; j < m; ++j) hess[j] = log_gradient(theta[j]);

    std::vector<std::vector<Cplx>> raw_points;

    if (m == 1) {
        // derivative as dense univariate coefficients
        long dmax = 0;
        for (const auto& [e, c] : g_toric.terms) dmax = std::max(dmax, e[0]);
        std::vector<Cplx> dc(static_cast<size_t>(std::max<long>(dmax, 1)), Cplx{});
        for (const auto& [e, c] : g_toric.terms)
            if (e[0] >= 1) dc[static_cast<size_t>(e[0] - 1)] += Cplx(to_double(c) * e[0], 0);
        while (dc.size() > 1 && std::abs(dc.back()) == 0.0) dc.pop_back();
        size_t deg = dc.size() - 1;
        if (deg >= 1) {
            Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
            for (size_t i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
            for (size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -dc[i] / dc[deg];
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
                Cplx r = es.eigenvalues()(i);
                if (std::abs(r) > kTorusEps) raw_points.push_back({r});
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> logu(-1.0, 1.0), phase(0.0, 2 * M_PI);
        int converged = 0;
        for (int s = 0; s < starts; ++s) {
            std::vector<Cplx> u(m);
            for (size_t j = 0; j < m; ++j) {
                double r = std::pow(10.0, logu(rng));
                double ph = phase(rng);
                u[j] = Cplx(r * std::cos(ph), r * std::sin(ph));
            }
            if (detail::newton_theta(theta, hess, u, 200, 1e-10)) {
                raw_points.push_back(u);
                ++converged;
            }
        }
        (void)converged;
    }

    // cluster multiple roots (universal for the univariate path: the
    // companion matrix reports an m-fold critical point as m nearby
    // eigenvalues, and plain Newton stalls there)
    std::vector<int> multiplicity(raw_points.size(), 1);
    if (m == 1) {
        std::vector<std::vector<Cplx>> merged;
        std::vector<int> counts;
        for (const auto& p : raw_points) {
            bool hit = false;
            for (size_t i = 0; i < merged.size(); ++i)
                if (std::abs(p[0] - merged[i][0]) <=
                    1e-4 * (1 + std::abs(merged[i][0]))) {
                    ++counts[i];
                    hit = true;
                    break;
                }
            if (!hit) {
                merged.push_back(p);
                counts.push_back(1);
            }
        }
        raw_points = merged;
        multiplicity = counts;
    }

    // polish in high precision and dedup
    for (size_t ri = 0; ri < raw_points.size(); ++ri) {
        auto& u0 = raw_points[ri];
        std::vector<MpCplx> u(u0.size());
        for (size_t j = 0; j < u0.size(); ++j) u[j] = MpCplx(u0[j]);
        if (m == 1 && multiplicity[ri] > 1) {
            // multiplicity-corrected Newton on g': u <- u - mult * g'/g''
            const SparsePoly& gp = theta[0];        // u g'(u)
            auto gpp = log_gradient(gp)[0];          // u (u g')' ... use hess
            for (int it = 0; it < 120; ++it) {
                MpCplx f1 = gp.eval_mp(u);           // u g'
                MpCplx f2 = hess[0][0].eval_mp(u);   // theta(theta g)
                // theta g = u g'; theta(theta g) = u g' + u^2 g''
                MpCplx ug = u[0];
                MpCplx gprime = f1 / ug;
                MpCplx gsecond = (f2 - f1) / (ug * ug);
                if (abs(gsecond) == 0) break;
                MpCplx step = MpCplx(MpReal(multiplicity[ri])) * gprime / gsecond;
                u[0] = u[0] - step;
                if (abs(step).convert_to<double>() < 1e-60) break;
            }
            (void)gpp;
        } else {
            detail::newton_theta(theta, hess, u, 90, 1e-48);
        }
        std::vector<Cplx> ud = detail::to_cplx(u);
        bool dup = false;
        for (const auto& p : found) {
            double dist = 0, scale = 1;
            for (size_t j = 0; j < ud.size(); ++j) {
                dist = std::max(dist, std::abs(ud[j] - p.u[j]));
                scale = std::max(scale, std::abs(p.u[j]));
            }
            if (dist <= kDedupTol * scale) { dup = true; break; }
        }
        if (dup) continue;
        TorusCriticalPoint cp;
        cp.u = ud;
        cp.u_mp = u;
        cp.value = g_toric.eval_mp(u).to_cplx();
        double res = 0;
        for (size_t j = 0; j < g_toric.n; ++j)
            res = std::max(res, static_cast<double>(abs(theta[j].eval_mp(u))));
        cp.residual = res;
        // scale-relative acceptance: a tiny absolute residual at a point
        // where every monomial is tiny is not a critical point
        MpReal term_scale = 0;
        for (const auto& [e, c] : g_toric.terms) {
            MpCplx mterm = MpCplx::from(c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) mterm = mterm * pow_int(u[i], e[i]);
            term_scale = std::max(term_scale, abs(mterm));
        }
        if (MpReal(res) > MpReal("1e-9") * std::max(MpReal(1e-30), term_scale))
            continue;
        found.push_back(std::move(cp));
    }

    // non-isolated detection: 5+ distinct points sharing a value
    for (auto& p : found) {
        int same = 0;
        for (const auto& q : found)
            if (std::abs(q.value - p.value) <= kDedupTol * (1 + std::abs(p.value))) ++same;
        if (same >= 5) p.isolated = false;
    }

    // deterministic order
    std::sort(found.begin(), found.end(), [](const TorusCriticalPoint& a,
                                             const TorusCriticalPoint& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
        for (size_t i = 0; i < a.u.size(); ++i) {
            if (a.u[i].real() != b.u[i].real()) return a.u[i].real() < b.u[i].real();
            if (a.u[i].imag() != b.u[i].imag()) return a.u[i].imag() < b.u[i].imag();
        }
        return false;
    });
    return found;
}

/// Distinct critical values of the face polynomial, with one representative
/// point each (the first in deterministic order).
inline std::vector<TorusCriticalPoint> distinct_critical_values(
    const std::vector<TorusCriticalPoint>& pts) {
    std::vector<TorusCriticalPoint> reps;
    for (const auto& p : pts) {
        bool seen = false;
        for (auto& r : reps)
            if (std::abs(r.value - p.value) <= kDedupTol * (1 + std::abs(r.value))) {
                if (!p.isolated) r.isolated = false;
                seen = true;
                break;
            }
        if (!seen) reps.push_back(p);
    }
    return reps;
}

/// Critical values of f_gamma on the full torus (C*)^n, found by multistart
/// Newton on theta_x f_gamma = 0.  Used as the chart-independence cross-check.
inline std::vector<Cplx> x_side_critical_values(const SparsePoly& f_gamma,
                                                uint64_t seed = 7, int starts = 64) {
    auto pts = face_critical_points(f_gamma, seed, starts);
    std::vector<Cplx> vals;
    for (const auto& p : distinct_critical_values(pts)) vals.push_back(p.value);
    return vals;
}

} // namespace acv

#endif
