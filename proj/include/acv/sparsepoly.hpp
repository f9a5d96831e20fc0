#ifndef ACV_SPARSEPOLY_HPP
#define ACV_SPARSEPOLY_HPP

#include "intvec.hpp"

#include <map>
#include <vector>

namespace acv {

// Exponent vectors are small; plain int entries with the ambient dimension
// carried by the container.
using Expo = std::vector<long>;

inline IntVec to_intvec(const Expo& e) {
    IntVec v(e.size());
    for (size_t i = 0; i < e.size(); ++i) v[i] = e[i];
    return v;
}

inline Expo to_expo(const IntVec& v) {
    Expo e(v.size());
    for (size_t i = 0; i < v.size(); ++i) e[i] = v[i].convert_to<long>();
    return e;
}

/// Sparse Laurent polynomial over Q: exponent vector -> rational coefficient.
/// Negative exponents are allowed (Laurent role after the monomial change of
/// variables); zero coefficients are never stored.
struct SparsePoly {
    size_t n = 0;
    std::map<Expo, Rat> terms;

    SparsePoly() = default;
    explicit SparsePoly(size_t dim) : n(dim) {}

    static SparsePoly monomial(const Expo& e, const Rat& c) {
        SparsePoly p(e.size());
        if (c != 0) p.terms[e] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Expo& e, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r(a.n ? a.n : b.n);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Expo e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend SparsePoly operator*(const Rat& s, const SparsePoly& a) {
        SparsePoly r(a.n);
        for (const auto& [e, c] : a.terms) r.add_term(e, s * c);
        return r;
    }

    std::vector<IntVec> support() const {
        std::vector<IntVec> s;
        for (const auto& [e, c] : terms) s.push_back(to_intvec(e));
        return s;
    }

    Rat coeff(const Expo& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rat(0) : it->second;
    }

    template <typename C>
    C eval(const std::vector<C>& x) const {
        C s{};
        for (const auto& [e, c] : terms) {
            C m = C(to_double(c)); // callers needing exactness use eval_exact
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) m = m * pow_int(x[i], e[i]);
            s += m;
        }
        return s;
    }

    // evaluation with coefficients converted through the scalar's own
    // rational constructor (exact for MpCplx)
    MpCplx eval_mp(const std::vector<MpCplx>& x) const {
        MpCplx s;
        for (const auto& [e, c] : terms) {
            MpCplx m = MpCplx::from(c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) m = m * pow_int(x[i], e[i]);
            s += m;
        }
        return s;
    }
};

/// Monomial substitution x = u^W: the term x^alpha maps to u^(alpha . W)
/// with its coefficient unchanged.  W unimodular (rows w_i).
inline SparsePoly substitute_monomial(const SparsePoly& f, const IntMat& w) {
    BigInt d = det(w);
    if (d != 1 && d != -1) throw NotUnimodular("substitute_monomial");
    SparsePoly r(f.n);
    for (const auto& [e, c] : f.terms) {
        IntVec alpha = to_intvec(e);
        IntVec img = vec_mat(alpha, w);
        r.add_term(to_expo(img), c);
    }
    return r;
}

/// Logarithmic gradient: component j is u_j d/du_j applied to g,
/// i.e. sum_beta beta_j c_beta u^beta.
inline std::vector<SparsePoly> log_gradient(const SparsePoly& g) {
    std::vector<SparsePoly> out(g.n, SparsePoly(g.n));
    for (const auto& [e, c] : g.terms)
        for (size_t j = 0; j < g.n; ++j)
            if (e[j] != 0) out[j].add_term(e, Rat(e[j]) * c);
    return out;
}

/// <mu, theta_u g> for an integer vector mu: sum_beta <mu, beta> c_beta u^beta.
inline SparsePoly mu_log_derivative(const SparsePoly& g, const IntVec& mu) {
    SparsePoly r(g.n);
    for (const auto& [e, c] : g.terms) {
        BigInt wgt = 0;
        for (size_t j = 0; j < g.n; ++j) wgt += mu[j] * e[j];
        if (wgt != 0) r.add_term(e, Rat(wgt) * c);
    }
    return r;
}

} // namespace acv

#endif
