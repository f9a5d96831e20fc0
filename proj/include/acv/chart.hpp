#ifndef ACV_CHART_HPP
#define ACV_CHART_HPP

#include "newton.hpp"

#include <optional>

namespace acv {

// The unimodular pair of the toric chart: W has the supporting normals
// a_1..a_n of the chosen cone as columns (rows w_i give x_i = u^{w_i}),
// M = W^-1 (rows m_i), mu_j = column j of M (so <w_i, mu_j> = delta_ij and
// theta_x_j f = <mu_j, theta_u f^W>).
struct Chart {
    IntMat w;
    IntMat m;
    size_t k = 0; // codim of the bad face
    bool user_supplied = false;

    size_t n() const { return w.size(); }

    IntVec row_w(size_t i) const { return w[i]; }
    IntVec mu(size_t j) const {
        IntVec col(m.size());
        for (size_t i = 0; i < m.size(); ++i) col[i] = m[i][j];
        return col;
    }
    IntVec col_a(size_t j) const {
        IntVec col(w.size());
        for (size_t i = 0; i < w.size(); ++i) col[i] = w[i][j];
        return col;
    }
};

struct SubdividedFan {
    std::vector<ConeRep> cones; // simplicial unimodular, covering the input
};

namespace detail {

inline void validate_chart(const Chart& chart, const BadFace& gamma,
                           const std::vector<IntVec>& support) {
    size_t n = chart.n(), k = chart.k;
    BigInt d = det(chart.w);
    if (d != 1 && d != -1) throw ChartInvalid("W not unimodular");
    if (mat_mul(chart.w, chart.m) != identity_mat(n))
        throw ChartInvalid("W*M != I");
    for (size_t j = 0; j < k; ++j) {
        IntVec a = chart.col_a(j);
        for (const auto& v : gamma.vertices)
            if (dot(a, v) != 0)
                throw ChartInvalid("a_" + std::to_string(j + 1) +
                                   " does not vanish on the face");
        for (const auto& alpha : support)
            if (dot(a, alpha) < 0)
                throw ChartInvalid("lambda_" + std::to_string(j + 1) +
                                   "(alpha) < 0 on the support");
    }
    // the a_1..a_k must cut exactly gamma out of Delta: every support point
    // with all first k weights zero lies on the face
    for (const auto& alpha : support) {
        bool zero = true;
        for (size_t j = 0; j < k && zero; ++j)
            if (dot(chart.col_a(j), alpha) != 0) zero = false;
        if (zero && !in_convex_hull(alpha, gamma.vertices))
            throw ChartInvalid("a_1..a_k cut out a larger face than gamma");
    }
}

} // namespace detail

/// Star-subdivision refinement into unimodular simplicial cones.  The input
/// cone is first triangulated (if needed); each simplicial cone of
/// multiplicity > 1 is split at a primitive lattice point of its fundamental
/// parallelepiped with minimal coordinate sum.
inline SubdividedFan unimodular_subdivide(const ConeRep& cone, size_t budget = 4096) {
    if (cone.generators.empty()) throw acv_error("unimodular_subdivide: empty cone");
    size_t n = cone.generators[0].size();

    // triangulate the cone into simplicial subcones if necessary
    std::vector<std::vector<IntVec>> work;
    {
        IntMat gm(cone.generators.begin(), cone.generators.end());
        size_t r = rank_of(gm);
        if (cone.generators.size() == r) {
            work.push_back(cone.generators);
        } else {
            // fan from the first generator over the facets of the cone not
            // containing it; facets found via the dual description
            ConeRep dual = dual_cone(cone);
            const IntVec& apex = cone.generators[0];
            for (const auto& nrm : dual.generators) {
                if (dot(nrm, apex) == 0) continue;
                std::vector<IntVec> on;
                for (const auto& g : cone.generators)
                    if (dot(nrm, g) == 0) on.push_back(g);
                if (on.empty()) continue;
                IntMat om(on.begin(), on.end());
                if (rank_of(om) != r - 1) continue;
                // recurse on the facet cone, then cone with apex
                ConeRep fc;
                fc.generators = on;
                SubdividedFan ff = unimodular_subdivide(fc, budget);
                for (auto& c : ff.cones) {
                    std::vector<IntVec> gens = c.generators;
                    gens.push_back(apex);
                    IntMat t(gens.begin(), gens.end());
                    if (rank_of(t) == gens.size()) work.push_back(gens);
                }
            }
            if (work.empty()) work.push_back({cone.generators[0]});
        }
    }

    std::vector<ConeRep> done;
    size_t steps = 0;
    while (!work.empty()) {
        if (++steps > budget) throw SubdivisionBudgetExceeded(std::to_string(budget));
        auto gens = work.back();
        work.pop_back();
        for (auto& g : gens) g = primitive(g);
        size_t k = gens.size();
        // multiplicity: lattice index of the generator lattice in its
        // saturation = product of Smith invariant factors
        IntMat gm(gens.begin(), gens.end());
        SmithResult snf = smith_normal_form(gm);
        BigInt mult = 1;
        for (size_t i = 0; i < k; ++i) mult *= snf.s[i][i];
        if (mult < 0) mult = -mult;
        if (mult == 1) {
            ConeRep c;
            c.generators = gens;
            c.simplicial = true;
            c.unimodular = true;
            done.push_back(c);
            continue;
        }
        // find lattice points of the half-open fundamental parallelepiped
        // {sum t_i g_i : 0 <= t_i < 1}; pick the primitive one with minimal
        // coordinate sum (deterministic tie-break: lexicographic)
        // Enumerate via residues of the quotient Z^n / <gens saturation>:
        // solve with rational coordinates over a bounded integer box in the
        // generator coordinates of the SNF decomposition.
        std::optional<IntVec> best;
        Rat best_sum;
        // residue representatives: w = sum_i (r_i / s_i) * (s_i vinv_i)?  Use
        // direct search: x = V * y where y ranges over the box prod [0, s_i)
        // in the Smith coordinates of the generator lattice.
        IntMat vinv = invert_unimodular(snf.v);
        // lattice L = rows of gm; saturation basis: rows of vinv (first k),
        // L-basis: s_i * vinv_i.  Points of the parallelepiped correspond to
        // y in prod [0, s_i) expressed in the saturation basis: candidate
        // lattice points p = sum y_i vinv_i with fractional generator coords.
        std::vector<BigInt> svals(k);
        for (size_t i = 0; i < k; ++i) svals[i] = snf.s[i][i];
        std::vector<BigInt> y(k, 0);
        for (;;) {
            // p in ambient coordinates
            IntVec p(n, 0);
            for (size_t i = 0; i < k; ++i)
                if (y[i] != 0) p = p + (y[i] * vinv[i]);
            if (!is_zero(p)) {
                // generator coordinates t with p = sum t_i g_i
                RatMat a(n, RatVec(k));
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < k; ++j) a[i][j] = Rat(gens[j][i]);
                RatVec rhs(n);
                for (size_t i = 0; i < n; ++i) rhs[i] = Rat(p[i]);
                auto t = solve_rational(a, rhs);
                if (t) {
                    // shift into [0,1)
                    bool nonneg = true;
                    Rat sum = 0;
                    IntVec q = p;
                    for (size_t j = 0; j < k; ++j) {
                        Rat tj = (*t)[j];
                        BigInt fl = numerator(tj) / denominator(tj);
                        if (tj < 0 && tj != Rat(fl)) fl -= 1;
                        if (fl != 0) q = q - (fl * gens[j]);
                        Rat frac = tj - Rat(fl);
                        sum += frac;
                        if (frac < 0) nonneg = false;
                    }
                    if (nonneg && !is_zero(q) && sum > 0) {
                        IntVec qq = primitive(q);
                        // recompute the sum for the primitive representative
                        if (!best || sum < best_sum ||
                            (sum == best_sum && qq < *best)) {
                            best = qq;
                            best_sum = sum;
                        }
                    }
                }
            }
            // advance y
            size_t i = 0;
            while (i < k) {
                y[i] += 1;
                if (y[i] < svals[i]) break;
                y[i] = 0;
                ++i;
            }
            if (i == k) break;
        }
        if (!best) throw acv_error("unimodular_subdivide: no splitting point found");
        // star subdivision: replace one generator at a time by the new ray
        for (size_t j = 0; j < k; ++j) {
            auto sub = gens;
            sub[j] = *best;
            IntMat t(sub.begin(), sub.end());
            if (rank_of(t) == k) work.push_back(sub);
        }
    }
    SubdividedFan fan;
    fan.cones = done;
    return fan;
}

/// Build the chart for a bad face.  With user_w, validate it against the
/// chart invariants.  Automatic mode takes a unimodular simplicial subcone
/// of the normal cone of gamma for a_1..a_k, completes it to a unimodular
/// matrix, and then searches bounded GL(n-k, Z) corrections for strictly
/// positive rows m_{k+1..n}.
inline Chart build_chart(const BadFace& gamma, const Polytope& delta,
                         const std::vector<IntVec>& support,
                         const std::optional<IntMat>& user_w) {
    size_t n = delta.ambient_dim;
    size_t k = gamma.codim;

    if (user_w) {
        Chart chart;
        chart.w = *user_w;
        chart.m = invert_unimodular(chart.w);
        chart.k = k;
        chart.user_supplied = true;
        detail::validate_chart(chart, gamma, support);
        return chart;
    }

    // normal cone generators of gamma
    std::vector<IntVec> ncone;
    for (const auto& fac : delta.facets)
        if (std::includes(fac.vertex_subset.begin(), fac.vertex_subset.end(),
                          gamma.face.vertex_subset.begin(),
                          gamma.face.vertex_subset.end()))
            ncone.push_back(fac.normal);
    ConeRep nc;
    nc.generators = ncone;
    SubdividedFan fan = unimodular_subdivide(nc);
    // deterministic: first maximal cone
    std::vector<IntVec> as;
    for (const auto& c : fan.cones)
        if (c.generators.size() == k) { as = c.generators; break; }
    if (as.empty()) {
        // normal cone may itself be simplicial of dimension k
        for (const auto& c : fan.cones)
            if (c.generators.size() >= k) {
                as.assign(c.generators.begin(), c.generators.begin() + k);
                break;
            }
    }
    if (as.size() != k) throw ChartInvalid("automatic chart: no k-dim cone found");

    IntMat rows = unimodular_complete(as); // rows a_1..a_n
    // try bounded corrections to make rows m_{k+1..n} of M strictly positive:
    // replacing a_{k+1..n} by Z-combinations keeps the chart valid; the rows
    // m_{k+1..n} then run over the bases of the lattice orthogonal to
    // a_1..a_k.  Search small positive vectors of that lattice directly.
    std::vector<IntVec> a1k(rows.begin(), rows.begin() + k);
    auto lambda_ok = [&](const Chart& ch) {
        for (const auto& alpha : support) {
            bool zero = true;
            for (size_t j = 0; j < k && zero; ++j)
                if (dot(ch.col_a(j), alpha) != 0) zero = false;
            if (zero && !in_convex_hull(alpha, gamma.vertices)) return false;
        }
        return true;
    };
    auto assemble = [&](const std::vector<IntVec>& m_tail) -> std::optional<Chart> {
        // build M with rows m_{k+1..n} = m_tail and unknown first k rows:
        // the first k rows must satisfy <m_i, a_j> = delta_ij for j <= k and
        // together complete to a unimodular matrix.  Equivalently W has
        // columns a_1..a_k fixed and the remaining columns solve W M = I.
        // Work from W directly: columns a_{k+1..n} must be a basis dual to
        // m_tail on the orthogonal lattice.
        IntMat wt = transpose(IntMat(a1k.begin(), a1k.end())); // n x k: columns a_1..a_k
        // unknown columns: solve for integer matrix completing to det +-1 with
        // M rows tail = m_tail: W = M^-1, so instead assemble M first.
        // Rows 1..k of M: need <a_i, m_j> = delta_ij; take any integral
        // solution via the completion of m_tail.
        IntMat mtail(m_tail.begin(), m_tail.end());
        IntMat mfull;
        try {
            IntMat comp = unimodular_complete(m_tail); // rows: m_tail then extras
            // reorder: extras first (rows 1..k), tail last
            IntMat cand(n, IntVec(n));
            for (size_t i = 0; i < n - k; ++i) cand[k + i] = comp[i];
            for (size_t i = 0; i < k; ++i) cand[i] = comp[n - k + i];
            mfull = cand;
        } catch (const NotExtendable&) {
            return std::nullopt;
        }
        // correct rows 1..k so that W = M^-1 has first k columns a_1..a_k:
        // require M * a_j = e_j for j <= k, i.e. rows m_i with
        // <m_i, a_j> = delta_ij (i <= k) and <m_tail_i, a_j> = 0.
        for (const auto& mt : m_tail)
            for (size_t j = 0; j < k; ++j)
                if (dot(mt, a1k[j]) != 0) return std::nullopt;
        // solve integer correction: m_i := sum_j c_ij mext_j adjusting Gram
        // matrix <m_i, a_j>; do it by rational solve then integrality check
        // across the lattice generated by current rows.
        RatMat gram(k, RatVec(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(mfull[i], a1k[j]));
        // want new rows r_i = sum_l x_il m_i-block rows with <r_i, a_j> = delta_ij;
        // x = gram^-1 must be integral for the candidate to work
        RatMat inv(k, RatVec(k, Rat(0)));
        {
            RatMat a(k, RatVec(2 * k, Rat(0)));
            for (size_t i = 0; i < k; ++i) {
                for (size_t j = 0; j < k; ++j) a[i][j] = gram[i][j];
                a[i][k + i] = 1;
            }
            for (size_t c = 0; c < k; ++c) {
                size_t p = c;
                while (p < k && a[p][c] == 0) ++p;
                if (p == k) return std::nullopt;
                std::swap(a[c], a[p]);
                Rat pv = a[c][c];
                for (size_t j = 0; j < 2 * k; ++j) a[c][j] /= pv;
                for (size_t i = 0; i < k; ++i) {
                    if (i == c || a[i][c] == 0) continue;
                    Rat f = a[i][c];
                    for (size_t j = 0; j < 2 * k; ++j) a[i][j] -= f * a[c][j];
                }
            }
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) inv[i][j] = a[i][k + j];
        }
        IntMat newrows(k, IntVec(n, 0));
        for (size_t i = 0; i < k; ++i)
            for (size_t l = 0; l < k; ++l) {
                if (inv[i][l] == 0) continue;
                if (denominator(inv[i][l]) != 1) return std::nullopt;
                BigInt c = numerator(inv[i][l]);
                for (size_t j = 0; j < n; ++j) newrows[i][j] += c * mfull[l][j];
            }
        IntMat mm(n, IntVec(n));
        for (size_t i = 0; i < k; ++i) mm[i] = newrows[i];
        for (size_t i = 0; i < n - k; ++i) mm[k + i] = m_tail[i];
        BigInt d = det(mm);
        if (d != 1 && d != -1) return std::nullopt;
        Chart ch;
        ch.m = mm;
        ch.w = invert_unimodular(mm);
        ch.k = k;
        // verify W columns j<k equal a_j
        for (size_t j = 0; j < k; ++j)
            if (ch.col_a(j) != a1k[j]) return std::nullopt;
        if (!lambda_ok(ch)) return std::nullopt;
        return ch;
    };

    // search small all-positive bases of the orthogonal lattice
    auto latt = orthogonal_lattice(a1k); // n-k basis vectors
    size_t nk = n - k;
    std::vector<IntVec> positives;
    const long B = 4;
    std::vector<long> coef(nk, -B);
    for (;;) {
        IntVec v(n, 0);
        bool allzero = true;
        for (size_t i = 0; i < nk; ++i) {
            if (coef[i] != 0) allzero = false;
            if (coef[i] != 0) v = v + (BigInt(coef[i]) * latt[i]);
        }
        if (!allzero) {
            bool pos = true;
            for (const auto& x : v)
                if (x <= 0) { pos = false; break; }
            if (pos) positives.push_back(v);
        }
        size_t i = 0;
        while (i < nk) {
            if (coef[i] < B) { ++coef[i]; break; }
            coef[i] = -B;
            ++i;
        }
        if (i == nk) break;
    }
    std::sort(positives.begin(), positives.end(),
              [](const IntVec& a, const IntVec& b) {
                  BigInt sa = 0, sb = 0;
                  for (const auto& x : a) sa += x;
                  for (const auto& x : b) sb += x;
                  if (sa != sb) return sa < sb;
                  return a < b;
              });
    // try (n-k)-subsets forming an index-1 sublattice
    if (!positives.empty() && nk >= 1) {
        size_t cap = std::min<size_t>(positives.size(), 24);
        std::vector<size_t> pick(nk);
        std::function<std::optional<Chart>(size_t, size_t)> rec =
            [&](size_t pos, size_t depth) -> std::optional<Chart> {
            if (depth == nk) {
                std::vector<IntVec> tail;
                for (size_t i : pick) tail.push_back(positives[i]);
                // index-1 test: coordinates in latt basis must have |det| 1
                RatMat a(n, RatVec(nk));
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < nk; ++j) a[i][j] = Rat(latt[j][i]);
                IntMat coords;
                for (const auto& t : tail) {
                    RatVec rhs(n);
                    for (size_t i = 0; i < n; ++i) rhs[i] = Rat(t[i]);
                    auto sol = solve_rational(a, rhs);
                    if (!sol) return std::nullopt;
                    IntVec c(nk);
                    for (size_t j = 0; j < nk; ++j) c[j] = numerator((*sol)[j]);
                    coords.push_back(c);
                }
                BigInt d = det(coords);
                if (d != 1 && d != -1) return std::nullopt;
                return assemble(tail);
            }
            for (size_t i = pos; i < cap; ++i) {
                pick[depth] = i;
                auto r = rec(i + 1, depth + 1);
                if (r) return r;
            }
            return std::nullopt;
        };
        auto found = rec(0, 0);
        if (found) {
            detail::validate_chart(*found, gamma, support);
            return *found;
        }
    }
    throw NoPositiveCompletion("bounded search exhausted");
}

/// Condition (mu): exists i with <(q',0), w_i> < 0, equivalently (q',0) is
/// not in the nonnegative span of the mu_j.  Both formulations are computed
/// and must agree (they are exactly dual through W*M = I).
inline bool check_mu_condition(const Chart& chart, const IntVec& q_padded) {
    size_t n = chart.n();
    bool neg = false;
    for (size_t i = 0; i < n; ++i)
        if (dot(chart.w[i], q_padded) < 0) { neg = true; break; }
    // independent route: exact cone membership for (q',0) in cone(mu_1..mu_n)
    std::vector<IntVec> mus;
    for (size_t j = 0; j < n; ++j) mus.push_back(chart.mu(j));
    bool outside = !in_cone(q_padded, mus);
    if (neg != outside)
        throw InconsistentDuality("mu-condition formulations disagree");
    return neg;
}

} // namespace acv

#endif
