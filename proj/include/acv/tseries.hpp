#ifndef ACV_TSERIES_HPP
#define ACV_TSERIES_HPP

#include "numeric.hpp"

#include <vector>

namespace acv {

// Truncated polynomial in t with an integer offset: value = t^off * sum c_i t^i.
// Supports the curve substitution algebra; everything is truncated at a
// caller-chosen maximal absolute t-power.
template <typename C>
struct TSeries {
    long off = 0;
    std::vector<C> c; // c[0] is the t^off coefficient

    long degree_hi() const { return off + static_cast<long>(c.size()) - 1; }

    C coeff(long power) const {
        long i = power - off;
        if (i < 0 || i >= static_cast<long>(c.size())) return C{};
        return c[i];
    }
};

template <typename C>
inline TSeries<C> ts_mul(const TSeries<C>& a, const TSeries<C>& b, long tmax) {
    TSeries<C> r;
    r.off = a.off + b.off;
    long len = tmax - r.off + 1;
    if (a.c.empty() || b.c.empty()) len = 0;
    if (len > static_cast<long>(a.c.size() + b.c.size()) - 1)
        len = static_cast<long>(a.c.size() + b.c.size()) - 1; // intrinsic degree cap
    if (len <= 0) { r.c.clear(); return r; }
    r.c.assign(static_cast<size_t>(len), C{});
    for (size_t i = 0; i < a.c.size(); ++i) {
        for (size_t j = 0; j < b.c.size(); ++j) {
            long p = static_cast<long>(i + j);
            if (p >= len) break;
            r.c[p] += a.c[i] * b.c[j];
        }
    }
    return r;
}

template <typename C>
inline TSeries<C> ts_pow(const TSeries<C>& a, long e, long tmax) {
    TSeries<C> r;
    r.off = 0;
    r.c = {C(1.0)};
    TSeries<C> base = a;
    long n = e;
    while (n) {
        if (n & 1) r = ts_mul(r, base, tmax);
        base = ts_mul(base, base, tmax);
        n >>= 1;
    }
    return r;
}

template <typename C>
inline void ts_add_into(TSeries<C>& acc, const TSeries<C>& a, const C& scale, long tmax) {
    if (a.c.empty()) return;
    long lo = std::min(acc.off, a.off);
    long hi = std::min(tmax, std::max(acc.degree_hi(), a.degree_hi()));
    if (hi < lo) return;
    std::vector<C> merged(static_cast<size_t>(hi - lo + 1), C{});
    for (size_t i = 0; i < acc.c.size(); ++i) {
        long p = acc.off + static_cast<long>(i);
        if (p >= lo && p <= hi) merged[p - lo] += acc.c[i];
    }
    for (size_t i = 0; i < a.c.size(); ++i) {
        long p = a.off + static_cast<long>(i);
        if (p >= lo && p <= hi) merged[p - lo] += scale * a.c[i];
    }
    acc.off = lo;
    acc.c = std::move(merged);
}

} // namespace acv

#endif
