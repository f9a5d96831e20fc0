#ifndef ACV_LINALG_HPP
#define ACV_LINALG_HPP

#include "numeric.hpp"

#include <optional>
#include <vector>

namespace acv {

// Small dense complex solvers, templated so the curve machinery can run the
// same code in double and in high precision.

template <typename C>
using CMat = std::vector<std::vector<C>>;

template <typename C>
inline auto cmod(const C& z) { return abs(z); }

// LU solve with partial pivoting; returns nullopt if numerically singular.
template <typename C>
inline std::optional<std::vector<C>> lu_solve(CMat<C> a, std::vector<C> b) {
    size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        auto best = cmod(a[c][c]);
        for (size_t i = c + 1; i < n; ++i)
            if (cmod(a[i][c]) > best) { best = cmod(a[i][c]); p = i; }
        if (!(best > 0)) return std::nullopt;
        std::swap(a[c], a[p]);
        std::swap(b[c], b[p]);
        for (size_t i = c + 1; i < n; ++i) {
            C f = a[i][c] / a[c][c];
            if (cmod(f) == 0) continue;
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    std::vector<C> x(n);
    for (size_t i = n; i-- > 0;) {
        C s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

inline Cplx conj_of(const Cplx& z) { return std::conj(z); }
inline MpCplx conj_of(const MpCplx& z) { return {z.re, -z.im}; }

// Minimum-norm least-squares via normal equations with a tiny ridge; good
// enough for the small well-scaled systems here.
template <typename C>
inline std::vector<C> lstsq_ridge(const CMat<C>& a, const std::vector<C>& b,
                                  double ridge) {
    size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    CMat<C> ata(cols, std::vector<C>(cols, C{}));
    std::vector<C> atb(cols, C{});
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            C aij_conj = conj_of(a[i][j]);
            for (size_t l = 0; l < cols; ++l) ata[j][l] += aij_conj * a[i][l];
            atb[j] += aij_conj * b[i];
        }
    for (size_t j = 0; j < cols; ++j) ata[j][j] += C(ridge);
    auto x = lu_solve(ata, atb);
    if (!x) return std::vector<C>(cols, C{});
    return *x;
}

} // namespace acv

#endif
