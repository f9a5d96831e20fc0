#ifndef ACV_PIPELINE_HPP
#define ACV_PIPELINE_HPP

#include "critical.hpp"
#include "problem.hpp"
#include "verify.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>

namespace acv {

using ordered_json = nlohmann::ordered_json;

struct CurveResult {
    Cplx target;
    std::vector<Cplx> u_star_toric;
    bool isolated = true;
    FacetData facet;
    CurveJet jet;
    WitnessCurve witness;
    std::vector<OrderCheckRow> symbolic;
    bool symbolic_pass = false;
    VerificationReport verification;
    std::string error; // nonempty when a stage failed; earlier fields valid
};

struct FaceResult {
    BadFace face;
    bool relatively_simple = false;
    Chart chart;
    SparsePoly f_w;
    SparsePoly f_gamma;
    SparsePoly f_gamma_w_toric;
    std::vector<TorusCriticalPoint> critical_points;
    std::vector<CurveResult> curves;
};

struct RunReport {
    std::string command;
    ProblemSpec spec;
    NewtonData newton;
    std::vector<FaceResult> faces;
    BigInt volume_bound_value = 0;
    CandidateSet candidates;
};

namespace detail {

// phase-A truncation: total-degree bound covering the finite part of the
// expansions with margin for the geometric tails
inline long initial_weight_bound(const SparsePoly& f_w) {
    long maxdeg = 0;
    for (const auto& [e, c] : f_w.terms) {
        long d = 0;
        for (long v : e) d += std::max(v, 0L);
        maxdeg = std::max(maxdeg, d);
    }
    return maxdeg + 8;
}

// phase-B bound: complete for <q, beta> <= need given weights
// (1,..,1, q'') on (affine, toric) variables
inline long phase_b_bound(const SparsePoly& f_w, const IntVec& q, size_t k, long need) {
    long aff_max = 0, min_q_aff = 0;
    for (const auto& [e, c] : f_w.terms) {
        long a = 0, qa = 0;
        for (size_t v = 0; v < k; ++v) {
            a += std::max(e[v], 0L);
            qa += q[v].convert_to<long>() * e[v];
        }
        aff_max = std::max(aff_max, a);
        min_q_aff = std::min(min_q_aff, qa);
    }
    return aff_max + need - min_q_aff + 2;
}

inline IntVec ones_weights(size_t n) { return IntVec(n, 1); }

inline IntVec phase_b_weights(const IntVec& q, size_t k, size_t n) {
    IntVec w(n, 1);
    for (size_t v = k; v < n; ++v) w[v] = q[v];
    return w;
}

} // namespace detail

/// Build jets, find the facet (with a truncation-stability re-check), deepen
/// to q-weights and synthesize + verify the curve for one critical point.
inline CurveResult run_curve_stage(const SparsePoly& f, const FaceResult& fr,
                                   const TorusCriticalPoint& rep, uint64_t seed,
                                   const GridConfig& grid) {
    const Chart& chart = fr.chart;
    size_t n = chart.n(), k = chart.k;
    CurveResult out;
    out.target = rep.value;
    out.u_star_toric = rep.u;
    out.isolated = rep.isolated;

    std::vector<MpCplx> u_star(n, MpCplx());
    for (size_t v = k; v < n; ++v) u_star[v] = rep.u_mp[v - k];

    try {
        // phase A: facet search under total-degree truncation, with stability
        long w0 = detail::initial_weight_bound(fr.f_w);
        std::optional<FacetData> facet;
        for (int attempt = 0; attempt < 3; ++attempt) {
            auto jets_a =
                mu_pair_jets(chart, fr.f_w, u_star, w0, detail::ones_weights(n));
            auto f1 = find_facet(jets_a, k);
            auto jets_b =
                mu_pair_jets(chart, fr.f_w, u_star, w0 + 4, detail::ones_weights(n));
            auto f2 = find_facet(jets_b, k);
            if (f1 && f2 && f1->q == f2->q && f1->rho == f2->rho) {
                facet = f2;
                break;
            }
            w0 += 8;
            if (attempt == 2) throw FacetUnstable("truncation-dependent facet");
        }
        if (!facet) throw NoQualifyingFacet("no facet meets the dimension condition");
        out.facet = *facet;
        compute_l0_j(out.facet, chart);

        // phase B: re-expand complete below max(L0, rho) + 2 in q-weight
        long need = std::max(out.facet.l0, out.facet.rho) + 2;
        long wb = detail::phase_b_bound(fr.f_w, out.facet.q, k, need);
        auto jets = mu_pair_jets(chart, fr.f_w, u_star, wb,
                                 detail::phase_b_weights(out.facet.q, k, n));
        // exact revalidation on the complete region: min weight is rho, on
        // the same facet
        {
            long mn = std::numeric_limits<long>::max();
            for (const auto& j : jets)
                for (const auto& [e, c] : j.terms) {
                    long w = 0;
                    for (size_t v = 0; v < n; ++v)
                        w += out.facet.q[v].convert_to<long>() * e[v];
                    mn = std::min(mn, w);
                }
            if (mn != out.facet.rho)
                throw FacetUnstable("deepened expansion broke the facet (min " +
                                    std::to_string(mn) + ")");
        }

        SynthesisOptions opt;
        opt.seed = seed;
        out.jet = synthesize_curve(chart, u_star, out.facet, jets, opt);
        out.witness = push_to_x(out.jet, chart, rep.value);
        out.symbolic = symbolic_order_check(out.jet, jets, out.facet, chart,
                                            /*throwing=*/false);
        out.symbolic_pass = true;
        for (const auto& row : out.symbolic)
            if (!row.pass) out.symbolic_pass = false;
        out.verification = numeric_verify(f, fr.f_w, out.witness, rep.value, grid);
    } catch (const acv_error& e) {
        out.error = e.what();
    }
    return out;
}

/// End-to-end pipeline.  Commands: "badfaces", "bound", "values", "witness".
inline RunReport run_pipeline(const ProblemSpec& spec, const std::string& command) {
    RunReport rep;
    rep.command = command;
    rep.spec = spec;
    rep.newton = newton_data(spec.f);
    auto bfs = bad_faces(rep.newton.delta, rep.newton.support);
    rep.volume_bound_value = volume_bound(bfs);

    for (auto& bf : bfs) {
        FaceResult fr;
        fr.face = bf;
        fr.relatively_simple = classify_relatively_simple(bf, rep.newton.gamma_minus);
        rep.faces.push_back(std::move(fr));
    }
    if (command == "badfaces" || command == "bound") return rep;

    for (auto& fr : rep.faces) {
        // chart: user W where it validates, automatic otherwise
        bool chart_ok = false;
        if (spec.user_w) {
            try {
                fr.chart = build_chart(fr.face, rep.newton.delta, rep.newton.support,
                                       spec.user_w);
                chart_ok = true;
            } catch (const ChartInvalid&) {
                if (rep.faces.size() == 1) throw; // explicit W for the only face
            }
        }
        if (!chart_ok)
            fr.chart =
                build_chart(fr.face, rep.newton.delta, rep.newton.support, std::nullopt);

        fr.f_w = substitute_monomial(spec.f, fr.chart.w);
        fr.f_gamma = face_polynomial(spec.f, fr.face);
        fr.f_gamma_w_toric =
            detail::toric_restriction(substitute_monomial(fr.f_gamma, fr.chart.w),
                                      fr.chart.k);
        fr.critical_points = face_critical_points(fr.f_gamma_w_toric, spec.seed);

        auto reps = distinct_critical_values(fr.critical_points);
        // u* override replaces the representative of the matching value
        if (spec.u_star_override) {
            size_t n = fr.chart.n(), k = fr.chart.k;
            std::vector<Cplx> ov(spec.u_star_override->begin() + k,
                                 spec.u_star_override->end());
            std::vector<MpCplx> ov_mp(ov.size());
            for (size_t i = 0; i < ov.size(); ++i) ov_mp[i] = MpCplx(ov[i]);
            // polish the override onto the critical locus
            auto theta = log_gradient(fr.f_gamma_w_toric);
            std::vector<std::vector<SparsePoly>> hess(theta.size());
            for (size_t j = 0; j < theta.size(); ++j) hess[j] = log_gradient(theta[j]);
            detail::newton_theta(theta, hess, ov_mp, 60, 1e-40);
            Cplx ov_value = fr.f_gamma_w_toric.eval_mp(ov_mp).to_cplx();
            bool matched = false;
            for (auto& r : reps) {
                if (std::abs(r.value - ov_value) <= 1e-6 * (1 + std::abs(r.value))) {
                    r.u = detail::to_cplx(ov_mp);
                    r.u_mp = ov_mp;
                    r.value = ov_value;
                    matched = true;
                    break;
                }
            }
            if (!matched && !ov.empty()) {
                TorusCriticalPoint extra;
                extra.u = detail::to_cplx(ov_mp);
                extra.u_mp = ov_mp;
                extra.value = ov_value;
                double res = 0;
                for (size_t j = 0; j < theta.size(); ++j)
                    res = std::max(res,
                                   static_cast<double>(abs(theta[j].eval_mp(ov_mp))));
                extra.residual = res;
                reps.push_back(extra);
            }
        }

        if (command == "witness" || command == "emit-curve") {
            for (const auto& r : reps)
                fr.curves.push_back(run_curve_stage(spec.f, fr, r, spec.seed, spec.grid));
        }
        // candidate values
        for (const auto& r : reps) {
            bool seen = false;
            for (const auto& v : rep.candidates.values)
                if (std::abs(v - r.value) <= kDedupTol * (1 + std::abs(v))) {
                    seen = true;
                    break;
                }
            if (!seen) {
                rep.candidates.values.push_back(r.value);
                rep.candidates.source_face.push_back(&fr - rep.faces.data());
            }
        }
    }
    rep.candidates.zero_marker = spec.nondegenerate_at_infinity;
    return rep;
}

// ---------------------------------------------------------------- reporting

namespace detail {

inline ordered_json json_cplx(const Cplx& z) {
    return ordered_json::array({z.real(), z.imag()});
}

inline ordered_json json_intvec(const IntVec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(x.convert_to<long>());
    return a;
}

inline ordered_json json_intmat(const IntMat& m) {
    ordered_json a = ordered_json::array();
    for (const auto& r : m) a.push_back(json_intvec(r));
    return a;
}

} // namespace detail

inline ordered_json report_to_json(const RunReport& rep) {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = rep.command;
    j["n"] = rep.spec.n;
    j["seed"] = rep.spec.seed;
    j["nondegenerate_at_infinity"] = rep.spec.nondegenerate_at_infinity;
    {
        ordered_json terms = ordered_json::array();
        for (const auto& [e, c] : rep.spec.f.terms) {
            ordered_json t;
            std::string cs = numerator(c).str();
            if (denominator(c) != 1) cs += "/" + denominator(c).str();
            t["coeff"] = cs;
            ordered_json ee = ordered_json::array();
            for (long v : e) ee.push_back(v);
            t["exponents"] = ee;
            terms.push_back(t);
        }
        j["f"] = terms;
    }
    {
        ordered_json nd;
        nd["delta_dim"] = rep.newton.delta.intrinsic_dim;
        nd["delta_vertices"] = ordered_json::array();
        for (const auto& v : rep.newton.delta.vertices)
            nd["delta_vertices"].push_back(detail::json_intvec(v));
        nd["gamma_minus_vertices"] = ordered_json::array();
        for (const auto& v : rep.newton.gamma_minus.vertices)
            nd["gamma_minus_vertices"].push_back(detail::json_intvec(v));
        j["newton"] = nd;
    }
    j["volume_bound"] = rep.volume_bound_value.convert_to<long>();
    {
        ordered_json faces = ordered_json::array();
        for (const auto& fr : rep.faces) {
            ordered_json f;
            f["dim"] = fr.face.dim;
            f["codim"] = fr.face.codim;
            f["vertices"] = ordered_json::array();
            for (const auto& v : fr.face.vertices)
                f["vertices"].push_back(detail::json_intvec(v));
            f["witness_p"] = detail::json_intvec(fr.face.witness_p);
            f["relatively_simple"] = fr.relatively_simple;
            if (!fr.chart.w.empty()) {
                f["chart"] = {{"W", detail::json_intmat(fr.chart.w)},
                              {"M", detail::json_intmat(fr.chart.m)},
                              {"k", fr.chart.k},
                              {"user_supplied", fr.chart.user_supplied}};
                ordered_json cps = ordered_json::array();
                for (const auto& p : fr.critical_points) {
                    ordered_json cp;
                    cp["u"] = ordered_json::array();
                    for (const auto& z : p.u) cp["u"].push_back(detail::json_cplx(z));
                    cp["value"] = detail::json_cplx(p.value);
                    cp["residual"] = p.residual;
                    cp["isolated"] = p.isolated;
                    cps.push_back(cp);
                }
                f["critical_points"] = cps;
            }
            ordered_json curves = ordered_json::array();
            for (const auto& c : fr.curves) {
                ordered_json cj;
                cj["target"] = detail::json_cplx(c.target);
                cj["isolated"] = c.isolated;
                if (!c.error.empty()) {
                    cj["error"] = c.error;
                    curves.push_back(cj);
                    continue;
                }
                cj["q"] = detail::json_intvec(c.facet.q);
                cj["rho"] = c.facet.rho;
                cj["L0"] = c.facet.l0;
                {
                    ordered_json js = ordered_json::array();
                    for (size_t v : c.facet.j_set) js.push_back(v + 1); // 1-based
                    cj["J"] = js;
                }
                cj["s"] = c.facet.s;
                cj["facet_vertices"] = ordered_json::array();
                for (const auto& v : c.facet.facet_vertices)
                    cj["facet_vertices"].push_back(detail::json_intvec(v));
                cj["equation_count"] = c.jet.equation_count;
                cj["parametric_length"] = c.jet.parametric_length();
                cj["degenerate_leading"] = c.jet.degenerate_leading;
                cj["solve_residual"] = c.jet.residual;
                {
                    ordered_json table = ordered_json::array();
                    for (const auto& lvl : c.jet.coeff) {
                        ordered_json row = ordered_json::array();
                        for (const auto& z : lvl)
                            row.push_back(detail::json_cplx(z.to_cplx()));
                        table.push_back(row);
                    }
                    cj["coefficients"] = table;
                }
                cj["x_leading_exponents"] = c.witness.x_leading;
                {
                    ordered_json sym = ordered_json::array();
                    for (const auto& r : c.symbolic) {
                        ordered_json s;
                        s["j"] = r.j + 1;
                        s["min_spread"] = r.min_spread;
                        s["ord"] = r.ord;
                        s["in_J"] = r.in_j_set;
                        s["pass"] = r.pass;
                        sym.push_back(s);
                    }
                    cj["symbolic_order_check"] = sym;
                    cj["symbolic_pass"] = c.symbolic_pass;
                }
                {
                    const auto& v = c.verification;
                    ordered_json vj;
                    vj["limit_estimate"] = detail::json_cplx(v.limit_estimate);
                    vj["limit_pass"] = v.limit_pass;
                    vj["cond_I_slope"] = v.cond_i.slope;
                    vj["cond_I_pass"] = v.cond_i.pass;
                    vj["cond_II_slope"] = v.cond_ii.slope;
                    vj["cond_II_pass"] = v.cond_ii.pass;
                    vj["fw_consistency"] = v.fw_consistency;
                    vj["truncated"] = v.truncated;
                    vj["t_grid"] = v.t_grid;
                    vj["norm_growth"] = v.norm_growth;
                    vj["malgrange_max"] = v.malgrange_max;
                    ordered_json fv = ordered_json::array();
                    for (const auto& z : v.f_values) fv.push_back(detail::json_cplx(z));
                    vj["f_values"] = fv;
                    cj["verification"] = vj;
                }
                curves.push_back(cj);
            }
            f["curves"] = curves;
            faces.push_back(f);
        }
        j["bad_faces"] = faces;
    }
    {
        ordered_json cv;
        ordered_json vals = ordered_json::array();
        for (const auto& v : rep.candidates.values) vals.push_back(detail::json_cplx(v));
        cv["values"] = vals;
        cv["zero_marker"] = rep.candidates.zero_marker;
        j["candidate_values"] = cv;
    }
    return j;
}

/// CSV samples of a witness curve: t, Re/Im x_i, Re/Im f(X(t)); the t < 0
/// branch is appended when the curve coefficients are (numerically) real.
inline std::string emit_curve_samples(const SparsePoly& f, const WitnessCurve& x,
                                      const GridConfig& grid = {}) {
    std::ostringstream out;
    size_t n = f.n;
    out << "t";
    for (size_t i = 1; i <= n; ++i) out << ",re_x" << i << ",im_x" << i;
    out << ",re_f,im_f\n";
    out << std::setprecision(17);
    bool real_coeffs = true;
    for (const auto& lvl : x.jet.coeff)
        for (const auto& z : lvl)
            if (std::abs(z.im.convert_to<double>()) > 1e-12) real_coeffs = false;
    for (const auto& z : x.jet.u_star)
        if (std::abs(z.im.convert_to<double>()) > 1e-12) real_coeffs = false;

    auto emit_branch = [&](double sign) {
        double lg0 = std::log10(grid.t_max), lg1 = std::log10(grid.t_min);
        for (int i = 0; i < grid.points; ++i) {
            double lg =
                lg0 + (lg1 - lg0) * (grid.points == 1 ? 0 : double(i) / (grid.points - 1));
            MpReal t = MpReal(sign) * pow(MpReal(10), MpReal(lg));
            auto xv = x.eval_x(t);
            MpCplx fv;
            for (const auto& [e, c] : f.terms) {
                MpCplx m = MpCplx::from(c);
                for (size_t v = 0; v < n; ++v)
                    if (e[v] != 0) m = m * pow_int(xv[v], e[v]);
                fv += m;
            }
            out << t.convert_to<double>();
            for (size_t v = 0; v < n; ++v) {
                Cplx z = xv[v].to_cplx();
                out << "," << z.real() << "," << z.imag();
            }
            Cplx fz = fv.to_cplx();
            out << "," << fz.real() << "," << fz.imag() << "\n";
        }
    };
    emit_branch(1.0);
    if (real_coeffs) emit_branch(-1.0);
    return out.str();
}

} // namespace acv

#endif
