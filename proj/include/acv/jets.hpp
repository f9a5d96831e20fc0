#ifndef ACV_JETS_HPP
#define ACV_JETS_HPP

#include "chart.hpp"
#include "sparsepoly.hpp"

#include <map>
#include <vector>

namespace acv {

/// Truncated local expansion of a Laurent polynomial at u* = (0, u''*):
/// a series in (u', U'') with all exponents >= 0, complete below the weight
/// truncation bound.  Coefficients are held in high precision: the curve
/// solve needs residuals far below double rounding.
struct JetSeries {
    size_t n = 0;
    size_t k = 0;
    std::vector<MpCplx> base;     // u*, first k entries zero
    IntVec weights;               // truncation weight vector (q once known)
    long max_weight = 0;          // complete for <weights, beta> <= max_weight
    std::map<Expo, MpCplx> terms;

    long weight_of(const Expo& e) const {
        long s = 0;
        for (size_t i = 0; i < e.size(); ++i)
            s += weights[i].convert_to<long>() * e[i];
        return s;
    }
};

namespace detail {

inline long ceil_div(long a, long b) { return (a + b - 1) / b; } // b > 0

} // namespace detail

/// Expand g at u* = (0, u''*) keeping all terms of weight <= max_weight.
/// Affine variables stay as-is (their exponents are nonnegative on valid
/// charts); toric variables are shifted, and negative powers re-expand by
/// the geometric series 1/u_j = (1/u_j*) sum (-U_j/u_j*)^l.
/// Throws ExpansionPole if a negative power occurs with beta' = 0.
inline JetSeries local_expand(const SparsePoly& g, const Chart& chart,
                              const std::vector<MpCplx>& u_star, long max_weight,
                              const IntVec& weights) {
    size_t n = g.n, k = chart.k;
    for (size_t j = k; j < n; ++j)
        if (abs(u_star[j]) == 0) throw acv_error("local_expand: base point off torus");
    for (size_t j = 0; j < n; ++j)
        if (weights[j] <= 0) throw acv_error("local_expand: weights must be positive");

    JetSeries jet;
    jet.n = n;
    jet.k = k;
    jet.base = u_star;
    jet.weights = weights;
    jet.max_weight = max_weight;

    for (const auto& [e, coef] : g.terms) {
        bool affine_zero = true;
        for (size_t i = 0; i < k; ++i) {
            if (e[i] < 0)
                throw ExpansionPole("negative affine exponent (chart invariant broken)");
            if (e[i] != 0) affine_zero = false;
        }
        for (size_t j = k; j < n; ++j)
            if (e[j] < 0 && affine_zero)
                throw ExpansionPole("negative toric power with beta' = 0");

        // start from the affine part
        std::map<Expo, MpCplx> part;
        {
            Expo e0(n, 0);
            for (size_t i = 0; i < k; ++i) e0[i] = e[i];
            part[e0] = MpCplx::from(coef);
        }
        for (size_t j = k; j < n; ++j) {
            long ej = e[j];
            long wj = jet.weights[j].convert_to<long>();
            // factor expansion of u_j^{e_j} = (u_j* + U_j)^{e_j} as
            // coefficient list over U_j powers
            std::vector<MpCplx> fac; // index = U_j power
            if (ej >= 0) {
                fac.assign(static_cast<size_t>(ej) + 1, MpCplx());
                // binomial (u*)^{e-l} C(e,l)
                MpCplx upow = pow_int(u_star[j], ej);
                MpReal binom = 1;
                for (long l = 0; l <= ej; ++l) {
                    fac[static_cast<size_t>(l)] =
                        MpCplx(binom) * pow_int(u_star[j], ej - l);
                    binom = binom * MpReal(ej - l) / MpReal(l + 1);
                }
                (void)upow;
            } else {
                long m = -ej;
                long lmax = detail::ceil_div(max_weight, wj) + 1;
                fac.assign(static_cast<size_t>(lmax) + 1, MpCplx());
                // 1/(u*+U)^m = u*^-m sum C(m-1+l, l) (-U/u*)^l
                MpCplx um = pow_int(u_star[j], -m);
                MpReal binom = 1;
                MpCplx ratio = MpCplx(MpReal(-1)) / u_star[j];
                MpCplx rpow(MpReal(1));
                for (long l = 0; l <= lmax; ++l) {
                    fac[static_cast<size_t>(l)] = um * MpCplx(binom) * rpow;
                    binom = binom * MpReal(m + l) / MpReal(l + 1);
                    rpow = rpow * ratio;
                }
            }
            std::map<Expo, MpCplx> next;
            for (const auto& [be, bc] : part) {
                long wb = jet.weight_of(be);
                for (long l = 0; l < static_cast<long>(fac.size()); ++l) {
                    if (wb + wj * l > max_weight) break;
                    Expo ne = be;
                    ne[j] = l;
                    auto [it, fresh] = next.try_emplace(ne, MpCplx());
                    it->second += bc * fac[static_cast<size_t>(l)];
                }
            }
            part.swap(next);
        }
        for (const auto& [be, bc] : part) {
            auto [it, fresh] = jet.terms.try_emplace(be, MpCplx());
            it->second += bc;
        }
    }

    // prune numerically-dead terms (exact cancellations at the critical base
    // point leave residues at the base-point accuracy floor)
    MpReal scale = 0;
    for (const auto& [e, c] : jet.terms) scale = std::max(scale, abs(c));
    if (scale > 0) {
        MpReal cut = scale * MpReal("1e-38");
        for (auto it = jet.terms.begin(); it != jet.terms.end();)
            if (abs(it->second) < cut)
                it = jet.terms.erase(it);
            else
                ++it;
    }
    return jet;
}

/// Jets of <mu_j, theta_u f^W> for j = 1..n.  The constant term of each jet
/// vanishes identically when the base point is critical for f_gamma^W; it is
/// removed explicitly so that base points known only to finite precision do
/// not leave a ghost at the origin of Delta*.
inline std::vector<JetSeries> mu_pair_jets(const Chart& chart, const SparsePoly& f_w,
                                           const std::vector<MpCplx>& u_star,
                                           long max_weight, const IntVec& weights) {
    std::vector<JetSeries> out;
    for (size_t j = 0; j < chart.n(); ++j) {
        SparsePoly g = mu_log_derivative(f_w, chart.mu(j));
        JetSeries jet = local_expand(g, chart, u_star, max_weight, weights);
        Expo zero(jet.n, 0);
        auto it = jet.terms.find(zero);
        if (it != jet.terms.end()) {
            MpReal scale = 0;
            for (const auto& [e, c] : jet.terms) scale = std::max(scale, abs(c));
            if (abs(it->second) > scale * MpReal("1e-5"))
                throw acv_error("mu_pair_jets: base point is not critical");
            jet.terms.erase(it);
        }
        out.push_back(std::move(jet));
    }
    return out;
}

/// Numeric evaluation of a jet at (u', U'') given as complex offsets.
inline MpCplx jet_eval(const JetSeries& jet, const std::vector<MpCplx>& delta) {
    MpCplx s;
    for (const auto& [e, c] : jet.terms) {
        MpCplx m = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) m = m * pow_int(delta[i], e[i]);
        s += m;
    }
    return s;
}

} // namespace acv

#endif
