#ifndef ACV_CURVE_HPP
#define ACV_CURVE_HPP

#include "jets.hpp"
#include "linalg.hpp"
#include "tseries.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

namespace acv {

// Facet data of Delta* (the hull of the mu-jet supports): the minimizing
// primitive vector q with rho = min <q, ."> > 0, the spread L0 and index set J.
struct FacetData {
    IntVec q;           // coprime, minimizing convention
    long rho = 0;
    long l0 = 0;
    std::vector<size_t> j_set; // 0-based indices
    std::vector<IntVec> facet_vertices;
    std::vector<long> s;       // s_i = <(q',0), w_i>
};

struct CurveJet {
    std::vector<MpCplx> u_star;
    IntVec q;
    // coefficient table c[l][v], l = 0..L0-rho+1 (possibly longer if deepened)
    std::vector<std::vector<MpCplx>> coeff;
    size_t k = 0;
    bool degenerate_leading = false; // order-0 system admitted only solutions
                                     // with vanishing leading coefficients
    double residual = 0.0;
    size_t equation_count = 0;
    size_t parametric_length() const { return coeff.size(); }

    // series of the jet variable v (u'_v or U_v): sum_l c[l][v] t^{q_v + l}
    TSeries<MpCplx> series(size_t v) const {
        TSeries<MpCplx> s;
        s.off = q[v].convert_to<long>();
        s.c.resize(coeff.size());
        for (size_t l = 0; l < coeff.size(); ++l) s.c[l] = coeff[l][v];
        return s;
    }

    // u_v(t) itself: affine variables equal the series, toric ones add u*_v
    MpCplx eval_u(size_t v, const MpReal& t) const {
        MpCplx s = (v < k) ? MpCplx() : u_star[v];
        MpReal tp = pow(t, static_cast<int>(q[v].convert_to<long>()));
        for (size_t l = 0; l < coeff.size(); ++l) {
            s += coeff[l][v] * MpCplx(tp);
            tp *= t;
        }
        return s;
    }
};

struct WitnessCurve {
    CurveJet jet;
    IntMat w;                       // chart rows, x_i = u^{w_i}
    Cplx target;                    // critical value the curve approaches
    std::vector<long> x_leading;    // ord_t x_i(t) = <(q',0), w_i> (nominal)

    std::vector<MpCplx> eval_x(const MpReal& t) const {
        size_t n = w.size();
        std::vector<MpCplx> u(n);
        for (size_t v = 0; v < n; ++v) u[v] = jet.eval_u(v, t);
        std::vector<MpCplx> x(n, MpCplx(MpReal(1)));
        for (size_t i = 0; i < n; ++i)
            for (size_t v = 0; v < n; ++v) {
                long e = w[i][v].convert_to<long>();
                if (e != 0) x[i] = x[i] * pow_int(u[v], e);
            }
        return x;
    }
};

namespace detail {

// Lightweight jet view for a chosen scalar type, with terms of q-weight
// beyond the needed t-range dropped up front.
template <typename C>
struct JetView {
    size_t n = 0;
    std::vector<std::pair<Expo, C>> terms;
};

inline JetView<Cplx> jet_view_d(const JetSeries& jet, const IntVec& q, long tmax) {
    JetView<Cplx> v;
    v.n = jet.n;
    for (const auto& [e, c] : jet.terms) {
        long w = 0;
        for (size_t i = 0; i < jet.n; ++i) w += q[i].convert_to<long>() * e[i];
        if (w <= tmax) v.terms.emplace_back(e, c.to_cplx());
    }
    return v;
}

inline JetView<MpCplx> jet_view_mp(const JetSeries& jet, const IntVec& q, long tmax) {
    JetView<MpCplx> v;
    v.n = jet.n;
    for (const auto& [e, c] : jet.terms) {
        long w = 0;
        for (size_t i = 0; i < jet.n; ++i) w += q[i].convert_to<long>() * e[i];
        if (w <= tmax) v.terms.emplace_back(e, c);
    }
    return v;
}

// substitute the curve (coefficient table, exponents q_v + l) into a jet;
// returns coefficients of t^0..t^tmax.  Intermediate products carry slack:
// factors with negative exponent offsets shift high powers back below tmax.
template <typename C>
inline std::vector<C> g_series_tpl(const JetView<C>& jet, const IntVec& q,
                                   const std::vector<std::vector<C>>& coeff,
                                   long tmax) {
    size_t n = jet.n;
    long slack = 0;
    {
        std::vector<long> max_exp(n, 0);
        for (const auto& [e, c] : jet.terms)
            for (size_t v = 0; v < n; ++v) max_exp[v] = std::max(max_exp[v], e[v]);
        for (size_t v = 0; v < n; ++v) {
            long qv = q[v].convert_to<long>();
            if (qv < 0) slack += -qv * max_exp[v];
        }
    }
    long bound = tmax + slack;
    std::vector<std::vector<TSeries<C>>> pow_cache(n);
    auto var_series = [&](size_t v) {
        TSeries<C> s;
        s.off = q[v].convert_to<long>();
        s.c.resize(coeff.size());
        for (size_t l = 0; l < coeff.size(); ++l) s.c[l] = coeff[l][v];
        return s;
    };
    auto var_pow = [&](size_t v, long e) -> const TSeries<C>& {
        auto& cache = pow_cache[v];
        if (cache.empty()) cache.push_back(var_series(v));
        while (static_cast<long>(cache.size()) < e)
            cache.push_back(ts_mul(cache.back(), cache.front(), bound));
        return cache[static_cast<size_t>(e - 1)];
    };
    TSeries<C> acc;
    acc.off = 0;
    acc.c.assign(static_cast<size_t>(tmax) + 1, C{});
    for (const auto& [e, coef] : jet.terms) {
        TSeries<C> prod;
        prod.off = 0;
        prod.c = {C(1.0)};
        for (size_t v = 0; v < n; ++v)
            if (e[v] > 0) prod = ts_mul(prod, var_pow(v, e[v]), bound);
        ts_add_into(acc, prod, coef, tmax);
    }
    std::vector<C> out(static_cast<size_t>(tmax) + 1);
    for (long p = 0; p <= tmax; ++p) out[static_cast<size_t>(p)] = acc.coeff(p);
    return out;
}

inline std::vector<MpCplx> g_series(const JetSeries& jet, const CurveJet& curve,
                                    long tmax) {
    return g_series_tpl(jet_view_mp(jet, curve.q, tmax), curve.q, curve.coeff, tmax);
}

inline double g_scale(const std::vector<JetSeries>& jets) {
    MpReal m = 0;
    for (const auto& j : jets)
        for (const auto& [e, c] : j.terms) m = std::max(m, abs(c));
    double d = m.convert_to<double>();
    return d > 1 ? d : 1.0;
}

} // namespace detail

/// Facet search on the truncated Delta*.  Qualifying facets have rho > 0,
/// strictly positive toric components q'' (the curve ansatz needs u'' -> u*),
/// and dim(facet cap {beta' = 0}) = n-k-1.  Ties break to the
/// lexicographically smallest q.
inline std::optional<FacetData> find_facet(const std::vector<JetSeries>& jets,
                                           size_t k) {
    size_t n = jets[0].n;
    std::set<IntVec> supp_set;
    for (const auto& j : jets)
        for (const auto& [e, c] : j.terms) supp_set.insert(to_intvec(e));
    std::vector<IntVec> supp(supp_set.begin(), supp_set.end());
    if (supp.size() < n + 1) return std::nullopt;

    Polytope hull = convex_hull(supp);
    if (hull.intrinsic_dim != static_cast<int>(n)) return std::nullopt;

    std::vector<FacetData> qual;
    for (const auto& f : hull.facets) {
        IntVec q = f.normal;
        BigInt rho = f.offset;
        if (rho <= 0) continue;
        bool toric_pos = true;
        for (size_t v = k; v < n; ++v)
            if (q[v] <= 0) { toric_pos = false; break; }
        if (!toric_pos) continue;
        std::vector<IntVec> on_axis;
        std::vector<IntVec> fverts;
        for (size_t i : f.vertex_subset) {
            fverts.push_back(hull.vertices[i]);
            bool aff0 = true;
            for (size_t v = 0; v < k; ++v)
                if (hull.vertices[i][v] != 0) { aff0 = false; break; }
            if (aff0) on_axis.push_back(hull.vertices[i]);
        }
        int d = on_axis.empty() ? -1 : detail::affine_dim(on_axis);
        if (d != static_cast<int>(n - k) - 1) continue;
        FacetData fd;
        fd.q = q;
        fd.rho = rho.convert_to<long>();
        fd.facet_vertices = fverts;
        qual.push_back(std::move(fd));
    }
    if (qual.empty()) return std::nullopt;
    std::sort(qual.begin(), qual.end(),
              [](const FacetData& a, const FacetData& b) { return a.q < b.q; });
    return qual[0];
}

/// L0 = max_{i != j} <(q',0), w_i - w_j> and
/// J = {j : min_{i != j} <(q',0), w_i - w_j> < 0}.  Requires the (mu)
/// condition, i.e. some s_i < 0.
inline void compute_l0_j(FacetData& fd, const Chart& chart) {
    size_t n = chart.n();
    IntVec q_pad(n, 0);
    for (size_t v = 0; v < chart.k; ++v) q_pad[v] = fd.q[v];
    if (!check_mu_condition(chart, q_pad))
        throw MuViolated("(q',0) lies in the span of the mu_j");
    fd.s.resize(n);
    for (size_t i = 0; i < n; ++i)
        fd.s[i] = dot(chart.w[i], q_pad).convert_to<long>();
    long l0 = 0;
    fd.j_set.clear();
    for (size_t j = 0; j < n; ++j) {
        long mn = 0;
        bool first = true;
        for (size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            long v = fd.s[i] - fd.s[j];
            if (first || v < mn) mn = v, first = false;
            if (v > l0) l0 = v;
        }
        if (mn < 0) fd.j_set.push_back(j);
    }
    fd.l0 = l0;
    if (fd.j_set.size() > n - 1)
        throw acv_error("|J| > n-1 (internal inconsistency)");
}

namespace detail {

struct StructuredResult {
    std::optional<std::vector<Cplx>> c0;
    bool provably_degenerate = false; // facet monomials independent, but every
                                      // kernel vector has a zero coordinate
};

// deterministic attempt: the order-rho equations are linear in the facet
// monomials; when those monomials have independent exponents, a coefficient
// vector y in the kernel of the equation matrix with all entries nonzero
// pulls back to a curve lead c with c^E = y.
inline StructuredResult structured_order0(const std::vector<JetSeries>& jets,
                                          const FacetData& fd, uint64_t seed) {
    StructuredResult res;
    size_t n = jets[0].n;
    std::set<Expo> mon_set;
    for (size_t j : fd.j_set)
        for (const auto& [e, c] : jets[j].terms) {
            long w = 0;
            for (size_t v = 0; v < n; ++v)
                w += fd.q[v].convert_to<long>() * e[v];
            if (w == fd.rho) mon_set.insert(e);
        }
    std::vector<Expo> mons(mon_set.begin(), mon_set.end());
    size_t m = mons.size();
    if (m == 0 || m > n) return res;
    IntMat emat;
    for (const auto& e : mons) emat.push_back(to_intvec(e));
    if (rank_of(emat) != m) return res;

    // kernel of the coefficient matrix over C
    size_t rows = fd.j_set.size();
    CMat<Cplx> L(rows, std::vector<Cplx>(m));
    double lscale = 0;
    for (size_t a = 0; a < rows; ++a)
        for (size_t b = 0; b < m; ++b) {
            auto it = jets[fd.j_set[a]].terms.find(mons[b]);
            L[a][b] = it == jets[fd.j_set[a]].terms.end() ? Cplx{} : it->second.to_cplx();
            lscale = std::max(lscale, std::abs(L[a][b]));
        }
    std::vector<int> pivot_of(m, -1);
    size_t r = 0;
    for (size_t c = 0; c < m && r < rows; ++c) {
        size_t p = r;
        double best = std::abs(L[r][c]);
        for (size_t i = r + 1; i < rows; ++i)
            if (std::abs(L[i][c]) > best) { best = std::abs(L[i][c]); p = i; }
        if (best < 1e-10 * lscale) continue;
        std::swap(L[r], L[p]);
        Cplx pv = L[r][c];
        for (size_t j2 = 0; j2 < m; ++j2) L[r][j2] /= pv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || std::abs(L[i][c]) == 0) continue;
            Cplx f = L[i][c];
            for (size_t j2 = 0; j2 < m; ++j2) L[i][j2] -= f * L[r][j2];
        }
        pivot_of[c] = static_cast<int>(r);
        ++r;
    }
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < m; ++c)
        if (pivot_of[c] < 0) free_cols.push_back(c);
    if (free_cols.empty()) {
        res.provably_degenerate = true; // only y = 0 solves the facet system
        return res;
    }
    // coordinates that vanish on the whole kernel
    {
        bool some_always_zero = false;
        for (size_t c = 0; c < m; ++c) {
            double row_norm = 0;
            if (pivot_of[c] < 0) continue; // free coordinate: not always zero
            for (size_t fc : free_cols)
                row_norm = std::max(row_norm, std::abs(L[pivot_of[c]][fc]));
            if (row_norm < 1e-10) some_always_zero = true;
        }
        if (some_always_zero) {
            res.provably_degenerate = true;
            return res;
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Cplx> y(m, Cplx{});
        for (size_t c : free_cols) {
            if (attempt == 0) {
                y[c] = 1.0;
            } else {
                double a = ph(rng);
                y[c] = Cplx(std::cos(a), std::sin(a));
            }
        }
        for (size_t c = 0; c < m; ++c)
            if (pivot_of[c] >= 0) {
                Cplx sum{};
                for (size_t fc : free_cols) sum -= L[pivot_of[c]][fc] * y[fc];
                y[c] = sum;
            }
        bool ok = true;
        for (const auto& v : y)
            if (std::abs(v) < 1e-8) { ok = false; break; }
        if (!ok) continue;
        // solve E logc = log y (consistent; E has full row rank)
        Eigen::MatrixXd E(m, n);
        for (size_t a = 0; a < m; ++a)
            for (size_t v = 0; v < n; ++v) E(a, v) = static_cast<double>(mons[a][v]);
        Eigen::VectorXcd logy(m);
        for (size_t a = 0; a < m; ++a)
            logy(a) = Cplx(std::log(std::abs(y[a])), std::arg(y[a]));
        Eigen::VectorXcd logc =
            E.cast<Cplx>().completeOrthogonalDecomposition().solve(logy);
        std::vector<Cplx> c0(n);
        for (size_t v = 0; v < n; ++v) c0[v] = std::exp(logc(v));
        double resid = 0;
        for (size_t a = 0; a < m; ++a) {
            Cplx prod{1.0, 0.0};
            for (size_t v = 0; v < n; ++v)
                if (mons[a][v] != 0) prod *= pow_int(c0[v], mons[a][v]);
            resid = std::max(resid, std::abs(prod - y[a]));
        }
        if (resid < 1e-7) {
            res.c0 = c0;
            return res;
        }
    }
    return res;
}

// Deterministic degenerate fallback: zero out a minimal set Z of variables
// so that the facet system restricted to the surviving monomials becomes
// solvable with all surviving monomial values nonzero.  Variables outside
// every surviving monomial default to 1.
inline std::optional<std::vector<Cplx>> degenerate_structured(
    const std::vector<JetSeries>& jets, const FacetData& fd) {
    size_t n = jets[0].n;
    std::set<Expo> mon_set;
    for (size_t j : fd.j_set)
        for (const auto& [e, c] : jets[j].terms) {
            long w = 0;
            for (size_t v = 0; v < n; ++v)
                w += fd.q[v].convert_to<long>() * e[v];
            if (w == fd.rho) mon_set.insert(e);
        }
    std::vector<Expo> mons(mon_set.begin(), mon_set.end());
    size_t m = mons.size();
    if (m == 0) return std::nullopt;
    size_t rows = fd.j_set.size();
    CMat<Cplx> L(rows, std::vector<Cplx>(m));
    for (size_t a = 0; a < rows; ++a)
        for (size_t b = 0; b < m; ++b) {
            auto it = jets[fd.j_set[a]].terms.find(mons[b]);
            L[a][b] = it == jets[fd.j_set[a]].terms.end() ? Cplx{} : it->second.to_cplx();
        }

    for (size_t zsize = 1; zsize <= n; ++zsize) {
        std::optional<std::vector<Cplx>> found;
        for_each_combination(n, zsize, [&](const std::vector<size_t>& z) {
            if (found) return;
            // surviving monomials: support disjoint from Z
            std::vector<size_t> keep;
            for (size_t b = 0; b < m; ++b) {
                bool hit = false;
                for (size_t v : z)
                    if (mons[b][v] != 0) { hit = true; break; }
                if (!hit) keep.push_back(b);
            }
            // all equations must be satisfiable: kernel of L restricted to
            // keep-columns with all-nonzero entries, and reduced exponent
            // rank equal to #keep over the non-Z variables
            std::vector<size_t> vars;
            for (size_t v = 0; v < n; ++v)
                if (std::find(z.begin(), z.end(), v) == z.end()) vars.push_back(v);
            if (keep.empty()) {
                // every monomial dies: equations hold identically
                std::vector<Cplx> c0(n, Cplx{1.0, 0.0});
                for (size_t v : z) c0[v] = Cplx{};
                found = c0;
                return;
            }
            IntMat emat;
            for (size_t b : keep) {
                IntVec row(vars.size());
                for (size_t i = 0; i < vars.size(); ++i) row[i] = mons[b][vars[i]];
                emat.push_back(row);
            }
            if (rank_of(emat) != keep.size()) return;
            // kernel of the reduced system
            CMat<Cplx> lr(rows, std::vector<Cplx>(keep.size()));
            for (size_t a = 0; a < rows; ++a)
                for (size_t bi = 0; bi < keep.size(); ++bi) lr[a][bi] = L[a][keep[bi]];
            // Gaussian elimination for the kernel
            size_t mm = keep.size();
            std::vector<int> pivot_of(mm, -1);
            size_t r = 0;
            double lscale = 1e-300;
            for (auto& rowv : lr)
                for (auto& zz : rowv) lscale = std::max(lscale, std::abs(zz));
            for (size_t c = 0; c < mm && r < rows; ++c) {
                size_t p = r;
                double best = std::abs(lr[r][c]);
                for (size_t i = r + 1; i < rows; ++i)
                    if (std::abs(lr[i][c]) > best) { best = std::abs(lr[i][c]); p = i; }
                if (best < 1e-10 * lscale) continue;
                std::swap(lr[r], lr[p]);
                Cplx pv = lr[r][c];
                for (size_t j2 = 0; j2 < mm; ++j2) lr[r][j2] /= pv;
                for (size_t i = 0; i < rows; ++i) {
                    if (i == r || std::abs(lr[i][c]) == 0) continue;
                    Cplx f = lr[i][c];
                    for (size_t j2 = 0; j2 < mm; ++j2) lr[i][j2] -= f * lr[r][j2];
                }
                pivot_of[c] = static_cast<int>(r);
                ++r;
            }
            std::vector<size_t> free_cols;
            for (size_t c = 0; c < mm; ++c)
                if (pivot_of[c] < 0) free_cols.push_back(c);
            if (free_cols.empty()) return;
            std::vector<Cplx> y(mm, Cplx{});
            for (size_t c : free_cols) y[c] = 1.0;
            for (size_t c = 0; c < mm; ++c)
                if (pivot_of[c] >= 0) {
                    Cplx sum{};
                    for (size_t fc : free_cols) sum -= lr[pivot_of[c]][fc] * y[fc];
                    y[c] = sum;
                }
            for (const auto& v : y)
                if (std::abs(v) < 1e-8) return;
            // invert the reduced monomial map
            Eigen::MatrixXd E(mm, vars.size());
            for (size_t a = 0; a < mm; ++a)
                for (size_t i = 0; i < vars.size(); ++i)
                    E(a, i) = static_cast<double>(mons[keep[a]][vars[i]]);
            Eigen::VectorXcd logy(mm);
            for (size_t a = 0; a < mm; ++a)
                logy(a) = Cplx(std::log(std::abs(y[a])), std::arg(y[a]));
            Eigen::VectorXcd logc =
                E.cast<Cplx>().completeOrthogonalDecomposition().solve(logy);
            std::vector<Cplx> c0(n, Cplx{1.0, 0.0});
            for (size_t v : z) c0[v] = Cplx{};
            for (size_t i = 0; i < vars.size(); ++i) c0[vars[i]] = std::exp(logc(i));
            double resid = 0;
            for (size_t a = 0; a < mm; ++a) {
                Cplx prod{1.0, 0.0};
                for (size_t i = 0; i < vars.size(); ++i)
                    if (mons[keep[a]][vars[i]] != 0)
                        prod *= pow_int(c0[vars[i]], mons[keep[a]][vars[i]]);
                resid = std::max(resid, std::abs(prod - y[a]));
            }
            if (resid < 1e-7) found = c0;
        });
        if (found) return found;
    }
    return std::nullopt;
}

} // namespace detail

struct SynthesisOptions {
    uint64_t seed = 1;
    int starts = 64;
    int newton_iters = 120;
    double tol = 1e-9;
    double genericity_floor = 1e-6;
};

namespace detail {

// pin patterns for the order-0 solve: the complement of J first (the spec's
// default), then every other subset of the same size
inline std::vector<std::vector<size_t>> pin_patterns(size_t n,
                                                     const std::vector<size_t>& j_set) {
    size_t npin = n - j_set.size();
    std::vector<size_t> notJ;
    for (size_t v = 0; v < n; ++v)
        if (std::find(j_set.begin(), j_set.end(), v) == j_set.end()) notJ.push_back(v);
    std::vector<std::vector<size_t>> out{notJ};
    if (npin > 0) {
        for_each_combination(n, npin, [&](const std::vector<size_t>& c) {
            if (c != notJ) out.push_back(c);
        });
    } else {
        out = {std::vector<size_t>{}};
    }
    return out;
}

// damped Newton for the order-0 block in double precision
inline bool order0_newton_d(const std::vector<JetView<Cplx>>& jviews, const IntVec& q,
                            std::vector<std::vector<Cplx>>& coeff,
                            const std::vector<size_t>& cols, long rho, long tmax,
                            double tol_abs, int iters) {
    auto res = [&]() {
        std::vector<Cplx> r(jviews.size());
        for (size_t a = 0; a < jviews.size(); ++a)
            r[a] = g_series_tpl(jviews[a], q, coeff, tmax)[static_cast<size_t>(rho)];
        return r;
    };
    auto nrm = [](const std::vector<Cplx>& v) {
        double m = 0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    };
    auto r = res();
    for (int it = 0; it < iters; ++it) {
        double rn = nrm(r);
        if (rn <= tol_abs) return true;
        if (rn > 1e14) return false;
        CMat<Cplx> jac(jviews.size(), std::vector<Cplx>(cols.size()));
        double h = 1e-7;
        for (size_t ci = 0; ci < cols.size(); ++ci) {
            Cplx old = coeff[0][cols[ci]];
            coeff[0][cols[ci]] = old + h;
            auto r2 = res();
            coeff[0][cols[ci]] = old;
            for (size_t a = 0; a < jviews.size(); ++a) jac[a][ci] = (r2[a] - r[a]) / h;
        }
        std::vector<Cplx> rhs(jviews.size());
        for (size_t a = 0; a < jviews.size(); ++a) rhs[a] = -r[a];
        auto step = lu_solve(jac, rhs);
        std::vector<Cplx> dx = step ? *step : lstsq_ridge(jac, rhs, 1e-20);
        double lam = 1.0;
        bool moved = false;
        std::vector<Cplx> saved(cols.size());
        for (size_t ci = 0; ci < cols.size(); ++ci) saved[ci] = coeff[0][cols[ci]];
        while (lam > 1e-12) {
            for (size_t ci = 0; ci < cols.size(); ++ci)
                coeff[0][cols[ci]] = saved[ci] + lam * dx[ci];
            auto rc = res();
            if (nrm(rc) < rn) {
                r = rc;
                moved = true;
                break;
            }
            lam /= 2;
        }
        if (!moved) {
            for (size_t ci = 0; ci < cols.size(); ++ci) coeff[0][cols[ci]] = saved[ci];
            return nrm(r) <= tol_abs;
        }
    }
    return nrm(r) <= tol_abs;
}

} // namespace detail

/// Solve the triangular g-system of the main theorem: g^j_{rho+l}(c) = 0 for
/// j in J and l = 0..L0-rho; the order-0 block is nonlinear in c(0), each
/// later order is linear in c(l).  One extra free order of coefficients is
/// appended (all ones).  Solutions are refined to high precision so that the
/// killed t-orders stay dead on the verifier grid.
inline CurveJet synthesize_curve(const Chart& chart,
                                 const std::vector<MpCplx>& u_star,
                                 const FacetData& fd,
                                 const std::vector<JetSeries>& jets,
                                 const SynthesisOptions& opt = {}) {
    size_t n = chart.n();
    long rho = fd.rho, l0 = fd.l0;
    long levels_l = std::max(0L, l0 - rho + 1); // equation orders
    size_t levels = static_cast<size_t>(levels_l);
    long tmax = std::max(l0, rho) + 2;
    const std::vector<size_t>& J = fd.j_set;
    double scale = detail::g_scale(jets);

    CurveJet curve;
    curve.u_star = u_star;
    curve.q = fd.q;
    curve.k = chart.k;
    curve.coeff.assign(levels + 1, std::vector<MpCplx>(n, MpCplx()));
    curve.equation_count = J.size() * levels;

    if (J.empty()) {
        for (size_t v = 0; v < n; ++v) curve.coeff[0][v] = MpCplx(MpReal(1));
        return curve;
    }

    std::vector<detail::JetView<Cplx>> jviews_d;
    for (size_t j : J) jviews_d.push_back(detail::jet_view_d(jets[j], fd.q, tmax));

    auto res_at = [&](long order) {
        std::vector<MpCplx> r(J.size());
        for (size_t a = 0; a < J.size(); ++a)
            r[a] = detail::g_series(jets[J[a]], curve, tmax)[static_cast<size_t>(order)];
        return r;
    };
    auto max_mod = [](const std::vector<MpCplx>& v) {
        MpReal m = 0;
        for (const auto& z : v) m = std::max(m, abs(z));
        return m.convert_to<double>();
    };

    // ---- order 0 ----
    bool have_c0 = false;
    std::vector<size_t> solve_cols(J.begin(), J.end());
    auto sres = detail::structured_order0(jets, fd, opt.seed);
    if (sres.c0) {
        for (size_t v = 0; v < n; ++v) curve.coeff[0][v] = MpCplx((*sres.c0)[v]);
        if (max_mod(res_at(rho)) <= 1e-5 * scale) {
            have_c0 = true;
            for (size_t v = 0; v < n; ++v) solve_cols.clear(), solve_cols = J;
        } else {
            for (size_t v = 0; v < n; ++v) curve.coeff[0][v] = MpCplx();
        }
    }
    if (!have_c0 && sres.provably_degenerate) {
        if (auto dc0 = detail::degenerate_structured(jets, fd)) {
            for (size_t v = 0; v < n; ++v) curve.coeff[0][v] = MpCplx((*dc0)[v]);
            if (max_mod(res_at(rho)) <= 1e-5 * scale) {
                have_c0 = true;
                curve.degenerate_leading = true;
            } else {
                for (size_t v = 0; v < n; ++v) curve.coeff[0][v] = MpCplx();
            }
        }
    }
    if (!have_c0) {
        auto patterns = detail::pin_patterns(n, J);
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> logu(-1.0, 1.0), ph(0.0, 2 * M_PI);
        std::vector<std::vector<Cplx>> cd(1, std::vector<Cplx>(n, Cplx{}));
        std::vector<Cplx> best_c0;
        double best_res = 1e300;
        bool best_generic = false;
        std::vector<size_t> best_cols;
        // a proven-degenerate system cannot have an all-nonzero solution:
        // run a reduced search just to land on some solution branch
        int starts_first = sres.provably_degenerate ? 16 : opt.starts;
        int starts_rest = sres.provably_degenerate ? 8 : std::max(8, opt.starts / 4);
        bool done = false;
        for (size_t pi = 0; pi < patterns.size() && !done; ++pi) {
            const auto& pins = patterns[pi];
            std::vector<size_t> cols;
            for (size_t v = 0; v < n; ++v)
                if (std::find(pins.begin(), pins.end(), v) == pins.end())
                    cols.push_back(v);
            int nstarts = pi == 0 ? starts_first : starts_rest;
            for (int st = 0; st < nstarts; ++st) {
                for (size_t v : pins) cd[0][v] = 1.0;
                for (size_t v : cols) {
                    double r0 = std::pow(10.0, logu(rng)), a = ph(rng);
                    cd[0][v] = Cplx(r0 * std::cos(a), r0 * std::sin(a));
                }
                bool conv = detail::order0_newton_d(jviews_d, fd.q, cd, cols, rho,
                                                    tmax, opt.tol * scale,
                                                    opt.newton_iters);
                if (!conv) continue;
                bool generic = true;
                double rn = 0;
                {
                    std::vector<Cplx> r(J.size());
                    for (size_t a = 0; a < J.size(); ++a)
                        r[a] = detail::g_series_tpl(jviews_d[a], fd.q, cd,
                                                    tmax)[static_cast<size_t>(rho)];
                    for (const auto& z : r) rn = std::max(rn, std::abs(z));
                }
                for (size_t v = 0; v < n; ++v)
                    if (std::abs(cd[0][v]) < opt.genericity_floor) generic = false;
                if (generic) {
                    best_c0 = cd[0];
                    best_generic = true;
                    best_cols = cols;
                    done = true;
                    break;
                }
                if (!best_generic && rn < best_res) {
                    best_c0 = cd[0];
                    best_res = rn;
                    best_cols = cols;
                }
            }
        }
        if (best_c0.empty()) throw Order0SolveFailed("no converged order-0 solution");
        for (size_t v = 0; v < n; ++v) curve.coeff[0][v] = MpCplx(best_c0[v]);
        curve.degenerate_leading = !best_generic;
        solve_cols = best_cols.empty() ? solve_cols : best_cols;
        have_c0 = true;
    }

    // MP polish of an order (Gauss-Newton with ridge for degenerate blocks)
    auto polish_order = [&](long order, size_t level, const std::vector<size_t>& cols,
                            int iters, double target) {
        for (int it = 0; it < iters; ++it) {
            auto r = res_at(order);
            if (max_mod(r) <= target * scale) break;
            CMat<MpCplx> jac(J.size(), std::vector<MpCplx>(cols.size()));
            MpReal h = MpReal("1e-30");
            for (size_t ci = 0; ci < cols.size(); ++ci) {
                MpCplx old = curve.coeff[level][cols[ci]];
                curve.coeff[level][cols[ci]] = old + MpCplx(h);
                auto r2 = res_at(order);
                curve.coeff[level][cols[ci]] = old;
                for (size_t a = 0; a < J.size(); ++a)
                    jac[a][ci] = (r2[a] - r[a]) / MpCplx(h);
            }
            std::vector<MpCplx> rhs(J.size());
            for (size_t a = 0; a < J.size(); ++a) rhs[a] = -r[a];
            auto step = cols.size() == J.size() ? lu_solve(jac, rhs) : std::nullopt;
            std::vector<MpCplx> dx = step ? *step : lstsq_ridge(jac, rhs, 1e-60);
            for (size_t ci = 0; ci < cols.size(); ++ci)
                curve.coeff[level][cols[ci]] += dx[ci];
        }
    };
    polish_order(rho, 0, solve_cols, 40, 1e-55);

    // ---- orders 1..L0-rho: linear in c(l) ----
    std::vector<size_t> notJ;
    for (size_t v = 0; v < n; ++v)
        if (std::find(J.begin(), J.end(), v) == J.end()) notJ.push_back(v);
    for (size_t level = 1; level < levels; ++level) {
        long order = rho + static_cast<long>(level);
        for (size_t v : notJ) curve.coeff[level][v] = MpCplx(MpReal(1));
        auto r0 = res_at(order);
        CMat<MpCplx> a(J.size(), std::vector<MpCplx>(J.size()));
        for (size_t ci = 0; ci < J.size(); ++ci) {
            curve.coeff[level][J[ci]] = MpCplx(MpReal(1));
            auto r1 = res_at(order);
            curve.coeff[level][J[ci]] = MpCplx();
            for (size_t ai = 0; ai < J.size(); ++ai) a[ai][ci] = r1[ai] - r0[ai];
        }
        std::vector<MpCplx> rhs(J.size());
        for (size_t ai = 0; ai < J.size(); ++ai) rhs[ai] = -r0[ai];
        auto sol = lu_solve(a, rhs);
        std::vector<MpCplx> x = sol ? *sol : lstsq_ridge(a, rhs, 1e-60);
        for (size_t ci = 0; ci < J.size(); ++ci) curve.coeff[level][J[ci]] = x[ci];
        double res = max_mod(res_at(order));
        if (!sol && res > 1e-6 * scale)
            throw LinearSolveInconsistent("order " + std::to_string(order) +
                                          " residual " + std::to_string(res));
        polish_order(order, level, J, 30, 1e-55);
    }

    // final free order: all ones (keeps every u_v(t) a nonzero polynomial)
    for (size_t v = 0; v < n; ++v) curve.coeff[levels][v] = MpCplx(MpReal(1));

    double worst = 0;
    for (size_t level = 0; level < levels; ++level)
        worst = std::max(worst, max_mod(res_at(rho + static_cast<long>(level))));
    curve.residual = worst;
    return curve;
}

/// Map the curve to x-space: x_i(t) = prod_v u_v(t)^{W_iv}.
inline WitnessCurve push_to_x(const CurveJet& curve, const Chart& chart,
                              const Cplx& target) {
    WitnessCurve wc;
    wc.jet = curve;
    wc.w = chart.w;
    wc.target = target;
    size_t n = chart.n();
    wc.x_leading.resize(n);
    for (size_t i = 0; i < n; ++i) {
        long s = 0;
        for (size_t v = 0; v < chart.k; ++v)
            s += chart.w[i][v].convert_to<long>() * curve.q[v].convert_to<long>();
        wc.x_leading[i] = s;
    }
    return wc;
}

} // namespace acv

#endif
