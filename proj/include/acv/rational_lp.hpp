#ifndef ACV_RATIONAL_LP_HPP
#define ACV_RATIONAL_LP_HPP

#include "intvec.hpp"

#include <optional>
#include <vector>

namespace acv {

// Exact-rational feasibility solver for small systems
//     A x = b,  x >= 0
// via phase-one simplex with Bland's rule.  Everything in this project that
// needs an exact geometric decision (hull membership, cone membership,
// mixed-sign supporting hyperplanes) reduces to this form.
class RationalLP {
public:
    // returns a feasible x >= 0 with A x = b, or nullopt
    static std::optional<RatVec> feasible_point(RatMat a, RatVec b) {
        size_t m = a.size();
        if (m == 0) return RatVec{};
        size_t n = a[0].size();
        for (size_t i = 0; i < m; ++i)
            if (b[i] < 0) {
                for (auto& x : a[i]) x = -x;
                b[i] = -b[i];
            }
        // tableau with artificial variables; minimize their sum
        size_t cols = n + m;
        RatMat t(m + 1, RatVec(cols + 1, Rat(0)));
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
            t[i][n + i] = 1;
            t[i][cols] = b[i];
        }
        for (size_t j = 0; j < cols + 1; ++j)
            for (size_t i = 0; i < m; ++i)
                t[m][j] -= (j >= n && j < cols) ? Rat(0) : t[i][j];
        std::vector<size_t> basis(m);
        for (size_t i = 0; i < m; ++i) basis[i] = n + i;

        for (;;) {
            // Bland: first column with negative reduced cost
            size_t enter = cols;
            for (size_t j = 0; j < cols; ++j)
                if (t[m][j] < 0) { enter = j; break; }
            if (enter == cols) break;
            size_t leave = m;
            Rat best = 0;
            for (size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) break; // unbounded phase-one cannot happen, guard anyway
            pivot(t, leave, enter, cols);
            basis[leave] = enter;
        }
        if (t[m][cols] != 0) return std::nullopt; // artificials remain positive
        RatVec x(n, Rat(0));
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = t[i][cols];
        return x;
    }

    // feasibility of A x = b, x >= 0 with additionally x_j >= lo_j (lo >= 0 shifts)
    static std::optional<RatVec> feasible_point_lb(const RatMat& a, RatVec b,
                                                   const RatVec& lo) {
        size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j) b[i] -= a[i][j] * lo[j];
        auto y = feasible_point(a, b);
        if (!y) return std::nullopt;
        for (size_t j = 0; j < n; ++j) (*y)[j] += lo[j];
        return y;
    }

private:
    static void pivot(RatMat& t, size_t pr, size_t pc, size_t cols) {
        Rat pv = t[pr][pc];
        for (size_t j = 0; j <= cols; ++j) t[pr][j] /= pv;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i == pr || t[i][pc] == 0) continue;
            Rat f = t[i][pc];
            for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[pr][j];
        }
    }
};

/// Is p in the convex hull of pts?  Exact.
inline bool in_convex_hull(const RatVec& p, const std::vector<IntVec>& pts) {
    if (pts.empty()) return false;
    size_t n = p.size(), m = pts.size();
    RatMat a(n + 1, RatVec(m));
    RatVec b(n + 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) a[i][j] = Rat(pts[j][i]);
        b[i] = p[i];
    }
    for (size_t j = 0; j < m; ++j) a[n][j] = 1;
    b[n] = 1;
    return RationalLP::feasible_point(a, b).has_value();
}

inline bool in_convex_hull(const IntVec& p, const std::vector<IntVec>& pts) {
    RatVec q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
    return in_convex_hull(q, pts);
}

/// Is x in the cone generated by gens (nonnegative combinations)?  Exact.
inline bool in_cone(const RatVec& x, const std::vector<IntVec>& gens) {
    size_t n = x.size(), m = gens.size();
    if (m == 0)
        return std::all_of(x.begin(), x.end(), [](const Rat& v) { return v == 0; });
    RatMat a(n, RatVec(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) a[i][j] = Rat(gens[j][i]);
    return RationalLP::feasible_point(a, x).has_value();
}

inline bool in_cone(const IntVec& x, const std::vector<IntVec>& gens) {
    RatVec q(x.size());
    for (size_t i = 0; i < x.size(); ++i) q[i] = Rat(x[i]);
    return in_cone(q, gens);
}

/// Does the relative interior of cone(gens) contain a vector with at least
/// one strictly positive and one strictly negative entry?  Exact; used for
/// the mixed-sign bad-face witness.  Returns such a vector if it exists
/// (as a strictly positive combination of the generators).
inline std::optional<IntVec> mixed_sign_interior_vector(const std::vector<IntVec>& gens) {
    if (gens.empty()) return std::nullopt;
    size_t n = gens[0].size(), m = gens.size();
    // p(lam) = sum lam_i g_i entrywise; want lam_i >= 1, p_a <= -1, p_b >= 1.
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            // variables: lam (m), slack s1, s2:   p_a + s1 = -1,  p_b - s2 = 1
            RatMat mat(2, RatVec(m + 2, Rat(0)));
            RatVec rhs(2);
            for (size_t j = 0; j < m; ++j) {
                mat[0][j] = Rat(gens[j][a]);
                mat[1][j] = Rat(gens[j][b]);
            }
            mat[0][m] = 1;      // +s1
            mat[1][m + 1] = -1; // -s2
            rhs[0] = -1;
            rhs[1] = 1;
            RatVec lo(m + 2, Rat(0));
            for (size_t j = 0; j < m; ++j) lo[j] = 1;
            auto sol = RationalLP::feasible_point_lb(mat, rhs, lo);
            if (!sol) continue;
            // assemble integer witness: clear denominators of lambda
            BigInt lcm = 1;
            for (size_t j = 0; j < m; ++j)
                lcm = boost::multiprecision::lcm(lcm, denominator((*sol)[j]));
            IntVec p(n, 0);
            for (size_t j = 0; j < m; ++j) {
                BigInt lam = numerator((*sol)[j] * Rat(lcm));
                for (size_t i = 0; i < n; ++i) p[i] += lam * gens[j][i];
            }
            return primitive(std::move(p));
        }
    }
    return std::nullopt;
}

} // namespace acv

#endif
