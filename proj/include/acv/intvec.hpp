#ifndef ACV_INTVEC_HPP
#define ACV_INTVEC_HPP

#include "numeric.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace acv {

// Exact integer vectors/matrices over BigInt.  All polyhedral and chart
// computation goes through these; floating point never touches normals,
// q-vectors or lattice volumes.
using IntVec = std::vector<BigInt>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline BigInt dot(const IntVec& a, const IntVec& b) {
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec operator*(const BigInt& s, const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline bool is_zero(const IntVec& a) {
    return std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; });
}

inline BigInt content(const IntVec& a) {
    BigInt g = 0;
    for (const auto& x : a) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
    return g;
}

// Divide out the gcd; sign untouched.
inline IntVec primitive(IntVec a) {
    BigInt g = content(a);
    if (g > 1)
        for (auto& x : a) x /= g;
    return a;
}

inline IntMat identity_mat(size_t n) {
    IntMat m(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    size_t r = a.size(), m = b.size(), c = b[0].size();
    IntMat out(r, IntVec(c, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < m; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline IntVec mat_vec(const IntMat& a, const IntVec& x) {
    IntVec out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
    return out;
}

// row vector times matrix: (v A)_j
inline IntVec vec_mat(const IntVec& v, const IntMat& a) {
    size_t c = a[0].size();
    IntVec out(c, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < c; ++j) out[j] += v[i] * a[i][j];
    }
    return out;
}

inline IntMat transpose(const IntMat& a) {
    size_t r = a.size(), c = a[0].size();
    IntMat out(c, IntVec(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out[j][i] = a[i][j];
    return out;
}

// Exact determinant, fraction-free Bareiss.
inline BigInt det(IntMat m) {
    size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline size_t rank_of(IntMat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            BigInt a = m[i][c], b = m[r][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * b - m[r][j] * a;
        }
        ++r;
    }
    return r;
}

// Solve A x = b over the rationals.  Returns nullopt if inconsistent or
// underdetermined with no pivot for some variable (callers here only use
// square nonsingular systems or check consistency themselves).
inline std::optional<RatVec> solve_rational(const RatMat& a_in, const RatVec& b_in) {
    RatMat a = a_in;
    RatVec b = b_in;
    size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    std::vector<int> pivot_col(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        std::swap(b[r], b[p]);
        Rat pv = a[r][c];
        for (size_t j = 0; j < cols; ++j) a[r][j] /= pv;
        b[r] /= pv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col[r] = static_cast<int>(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

// Right kernel basis of an integer matrix, as primitive integer vectors.
inline std::vector<IntVec> kernel_basis(const IntMat& m_in) {
    size_t rows = m_in.size(), cols = rows ? m_in[0].size() : 0;
    RatMat a(rows, RatVec(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = Rat(m_in[i][j]);
    std::vector<int> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        Rat pv = a[r][c];
        for (size_t j = 0; j < cols; ++j) a[r][j] /= pv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }
    std::vector<IntVec> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        RatVec v(cols, Rat(0));
        v[c] = 1;
        for (size_t cc = 0; cc < cols; ++cc)
            if (pivot_of_col[cc] >= 0) v[cc] = -a[pivot_of_col[cc]][c];
        BigInt lcm = 1;
        for (auto& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
        IntVec iv(cols);
        for (size_t j = 0; j < cols; ++j) {
            Rat s = v[j] * Rat(lcm);
            iv[j] = numerator(s);
        }
        basis.push_back(primitive(std::move(iv)));
    }
    return basis;
}

// Hermite-style column reduction helpers ------------------------------------

namespace detail {

// Extended gcd: returns g, and x, y with a*x + b*y = g.
inline BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return boost::multiprecision::abs(a);
    }
    BigInt x1, y1;
    BigInt g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace detail

// Smith normal form: returns (U, S, V) with U*A*V = S, U and V unimodular,
// S diagonal with divisibility chain.
struct SmithResult {
    IntMat u, s, v;
};

inline SmithResult smith_normal_form(IntMat a) {
    size_t rows = a.size(), cols = a[0].size();
    IntMat u = identity_mat(rows), v = identity_mat(cols);
    auto row_op = [&](size_t i, size_t j, const BigInt& f) { // row_i -= f*row_j
        for (size_t c = 0; c < cols; ++c) a[i][c] -= f * a[j][c];
        for (size_t c = 0; c < rows; ++c) u[i][c] -= f * u[j][c];
    };
    auto col_op = [&](size_t i, size_t j, const BigInt& f) { // col_i -= f*col_j
        for (size_t r = 0; r < rows; ++r) a[r][i] -= f * a[r][j];
        for (size_t r = 0; r < cols; ++r) v[r][i] -= f * v[r][j];
    };
    auto swap_rows = [&](size_t i, size_t j) { std::swap(a[i], a[j]); std::swap(u[i], u[j]); };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (size_t r = 0; r < cols; ++r) std::swap(v[r][i], v[r][j]);
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows && !found; ++i)
            for (size_t j = t; j < cols && !found; ++j)
                if (a[i][j] != 0) { pi = i; pj = j; found = true; }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                row_op(i, t, q);
                if (a[i][t] != 0) { swap_rows(t, i); again = true; }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                col_op(j, t, q);
                if (a[t][j] != 0) { swap_cols(t, j); again = true; }
            }
        }
        if (a[t][t] < 0) {
            for (size_t c = 0; c < cols; ++c) a[t][c] = -a[t][c];
            for (size_t c = 0; c < rows; ++c) u[t][c] = -u[t][c];
        }
        ++t;
    }
    // enforce divisibility chain
    for (size_t i = 0; t > 0 && i + 1 < t; ++i) {
        if (a[i][i] != 0 && a[i + 1][i + 1] % a[i][i] != 0) {
            // classic fixup: fold the next diagonal entry in and redo
            for (size_t r2 = 0; r2 < rows; ++r2) a[r2][i] += a[r2][i + 1];
            for (size_t r2 = 0; r2 < cols; ++r2) v[r2][i] += v[r2][i + 1];
            SmithResult rec = smith_normal_form(a);
            return {mat_mul(rec.u, u), rec.s, mat_mul(v, rec.v)};
        }
    }
    return {u, a, v};
}

/// Inverse of a unimodular integer matrix, exact.  Throws NotUnimodular.
inline IntMat invert_unimodular(const IntMat& w) {
    size_t n = w.size();
    BigInt d = det(w);
    if (d != 1 && d != -1) throw NotUnimodular("det = " + d.str());
    // Gauss-Jordan over Q; result is integral because |det| = 1.
    RatMat a(n, RatVec(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rat(w[i][j]);
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[c], a[p]);
        Rat pv = a[c][c];
        for (size_t j = 0; j < 2 * n; ++j) a[c][j] /= pv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMat m(n, IntVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat x = a[i][n + j];
            if (denominator(x) != 1) throw NotUnimodular("non-integral inverse");
            m[i][j] = numerator(x);
        }
    return m;
}

/// Complete k primitive rows spanning a saturated sublattice of Z^n to an
/// n x n matrix with |det| = 1 whose first k rows are the input.
/// Throws NotExtendable when the sublattice is not saturated (some Smith
/// invariant factor differs from 1).
inline IntMat unimodular_complete(const std::vector<IntVec>& part) {
    size_t k = part.size();
    if (k == 0) throw NotExtendable("empty basis");
    size_t n = part[0].size();
    IntMat a(part.begin(), part.end());
    SmithResult snf = smith_normal_form(a);
    for (size_t i = 0; i < k; ++i)
        if (snf.s[i][i] != 1)
            throw NotExtendable("invariant factor " + snf.s[i][i].str());
    // A = U^-1 [I_k | 0] V^-1, so C := [[U^-1, 0],[0, I]] * V^-1 has the
    // input as its first k rows and det = +-1.
    IntMat vinv = invert_unimodular(snf.v);
    IntMat uinv = invert_unimodular(snf.u);
    IntMat c(n, IntVec(n, 0));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < n; ++j) {
            BigInt s = 0;
            for (size_t l = 0; l < k; ++l) s += uinv[i][l] * vinv[l][j];
            c[i][j] = s;
        }
    }
    for (size_t i = k; i < n; ++i) c[i] = vinv[i];
    for (size_t i = 0; i < k; ++i)
        if (c[i] != part[i]) throw NotExtendable("internal: completion mismatch");
    BigInt d = det(c);
    if (d != 1 && d != -1) throw NotExtendable("internal: completion not unimodular");
    // deterministic sign convention: det = +1 (only when there is a row to flip)
    if (d == -1 && k < n)
        for (auto& x : c[n - 1]) x = -x;
    return c;
}

// Z-basis of the saturated sublattice {x in Z^n : A x = 0}, via Smith form:
// A = U^-1 S V^-1, so the kernel lattice is spanned by the columns of V
// whose S-diagonal entry vanishes.
inline std::vector<IntVec> integer_kernel_lattice(const IntMat& a) {
    size_t rows = a.size(), cols = a[0].size();
    SmithResult snf = smith_normal_form(a);
    std::vector<IntVec> basis;
    for (size_t j = 0; j < cols; ++j) {
        bool zero_col = j >= rows || snf.s[j][j] == 0;
        if (!zero_col) continue;
        IntVec col(cols);
        for (size_t i = 0; i < cols; ++i) col[i] = snf.v[i][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

// Basis of the lattice {x in Z^n : <x, a_i> = 0 for all given a_i}.
inline std::vector<IntVec> orthogonal_lattice(const std::vector<IntVec>& as) {
    IntMat m(as.begin(), as.end());
    return integer_kernel_lattice(m);
}

} // namespace acv

#endif
