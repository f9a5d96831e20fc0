// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Returns the number of failed
// criteria.

#include "acv/pipeline.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

using namespace acv;

namespace {

int g_checks_failed = 0;
std::ostringstream g_detail;

bool check(bool ok, const std::string& what) {
    if (!ok) {
        ++g_checks_failed;
        g_detail << "    FAILED: " << what << "\n";
    }
    return ok;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

struct CriterionScope {
    int before = g_checks_failed;
    std::string name;
    explicit CriterionScope(std::string n) : name(std::move(n)) { g_detail.str(""); }
    bool finish() {
        bool ok = g_checks_failed == before;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) std::cout << g_detail.str();
        return ok;
    }
};

ProblemSpec load(const std::string& dir, const std::string& prob,
                 const std::string& wfile) {
    auto spec = parse_problem_file(dir + "/" + prob);
    spec.user_w = parse_chart_file(dir + "/" + wfile, spec.n);
    return spec;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const CurveResult* curve_with_target(const RunReport& rep, double target) {
    for (const auto& fr : rep.faces)
        for (const auto& c : fr.curves)
            if (c.error.empty() && std::abs(c.target - Cplx(target, 0)) < 1e-4)
                return &c;
    return nullptr;
}

IntVec ivec(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(x);
    return v;
}

// ---------------------------------------------------------------- criteria

void criterion1(const std::string& dir) {
    CriterionScope sc("criterion 1: Example-5.2-style golden run");
    Timer timer;
    auto spec = load(dir, "ex52.acv", "w52.txt");
    auto rep = run_pipeline(spec, "witness");

    check(rep.faces.size() == 1, "exactly one bad face");
    if (!rep.faces.empty()) {
        const auto& bf = rep.faces[0].face;
        check(bf.dim == 1, "bad face is 1-dimensional");
        bool on_ray = true;
        for (const auto& v : bf.vertices) {
            // v must be a positive multiple of (2,2,1)
            if (!(v[0] == v[1] && 2 * v[2] == v[0])) on_ray = false;
        }
        check(on_ray, "bad face lies on the ray through (2,2,1)");

        SparsePoly expected_fw(3);
        expected_fw.add_term({3, 2, 2}, Rat(1));
        expected_fw.add_term({0, 1, 0}, Rat(1));
        expected_fw.add_term({0, 0, 3}, Rat(1));
        expected_fw.add_term({0, 0, 1}, Rat(-3));
        check(rep.faces[0].f_w.terms == expected_fw.terms,
              "f^W = u1^3 u2^2 u3^2 + u2 + u3^3 - 3 u3");
    }
    // critical values {-2, +2}
    bool has_m2 = false, has_p2 = false;
    for (const auto& v : rep.candidates.values) {
        if (std::abs(v - Cplx(-2, 0)) < 1e-8) has_m2 = true;
        if (std::abs(v - Cplx(2, 0)) < 1e-8) has_p2 = true;
    }
    check(has_m2 && has_p2 && rep.candidates.values.size() == 2,
          "critical values are exactly {-2, +2}");

    for (double target : {-2.0, 2.0}) {
        const auto* c = curve_with_target(rep, target);
        if (!check(c != nullptr, "curve synthesized for target")) continue;
        check(c->facet.q == ivec({-1, 3, 3}), "q = (-1,3,3)");
        check(c->facet.rho == 3, "rho = 3");
        check(c->facet.l0 == 5, "L0 = 5");
        check(c->facet.j_set == std::vector<size_t>{2}, "J = {3}");
        check(c->jet.parametric_length() == 4, "curve parametric length 4");
        check(std::abs(c->verification.limit_estimate - Cplx(target, 0)) <=
                  1e-4 * (1 + std::abs(target)),
              "numeric limit within 1e-4");
    }
    check(timer.seconds() < 5.0, "runtime < 5 s");
    sc.finish();
}

void criterion2(const std::string& dir) {
    CriterionScope sc("criterion 2: Example-5.1-style golden run");
    Timer timer;
    auto spec = load(dir, "ex51.acv", "w51.txt");
    spec.u_star_override = std::vector<Cplx>{{0, 0}, {-1.0 / 3, 0}, {2.0 / 3, 0}};
    auto rep = run_pipeline(spec, "witness");

    check(rep.faces.size() == 1 && rep.faces[0].face.dim == 2, "bad face 2-dim");
    check(rep.volume_bound_value == 10, "volume bound = 10");

    const auto* c = curve_with_target(rep, -2.0);
    if (check(c != nullptr, "curve for target -2")) {
        check(!c->isolated, "non-isolated singular locus detected");
        check(c->u_star_toric.size() == 2 &&
                  std::abs(c->u_star_toric[0] - Cplx(-1.0 / 3, 0)) < 1e-6 &&
                  std::abs(c->u_star_toric[1] - Cplx(2.0 / 3, 0)) < 1e-6,
              "representative near (-1/3, 2/3)");
        check(c->facet.q == ivec({1, 1, 1}), "q = (1,1,1)");
        check(c->facet.rho == 1, "rho = 1");
        check(c->facet.l0 == 3, "L0 = 3");
        check((c->facet.j_set == std::vector<size_t>{0, 2}), "J = {1,3}");
        check(c->jet.parametric_length() == 4, "length 4");
        check(std::abs(c->verification.limit_estimate - Cplx(-2, 0)) <= 1e-4 * 3,
              "limit -2 within 1e-4");
    }
    // order-0 equation for j = 3 proportional to c1/2 - 2 c2 + 2 c3
    {
        const auto& fr = rep.faces[0];
        std::vector<MpCplx> us = {MpCplx(), MpCplx(MpReal(-1) / 3),
                                  MpCplx(MpReal(2) / 3)};
        auto jets = mu_pair_jets(fr.chart, fr.f_w, us, 8, IntVec(3, 1));
        auto a = jets[2].terms.at(Expo{1, 0, 0}).to_cplx();
        auto b = jets[2].terms.at(Expo{0, 1, 0}).to_cplx();
        auto cc = jets[2].terms.at(Expo{0, 0, 1}).to_cplx();
        bool prop = std::abs(a * Cplx(-2, 0) - b * Cplx(0.5, 0)) < 1e-9 &&
                    std::abs(a * Cplx(2, 0) - cc * Cplx(0.5, 0)) < 1e-9;
        check(prop, "order-0 equation for j=3 ~ c1/2 - 2c2 + 2c3");
    }
    check(timer.seconds() < 5.0, "runtime < 5 s");
    sc.finish();
}

void criterion3(const std::string& dir) {
    CriterionScope sc("criterion 3: five-variable golden run");
    Timer timer;
    auto spec = load(dir, "five_var.acv", "w5var.txt");
    spec.nondegenerate_at_infinity = true;
    auto rep = run_pipeline(spec, "witness");

    const auto* c = curve_with_target(rep, -2.0);
    if (check(c != nullptr, "curve for target -2")) {
        check(c->facet.q == ivec({5, -20, 3, 15, 5}), "q = (5,-20,3,15,5)");
        check(c->facet.rho == 5, "rho = 5");
        check(c->facet.l0 == 10, "L0 = 10");
        check((c->facet.j_set == std::vector<size_t>{0, 1, 3, 4}), "J = {1,2,4,5}");
        check(c->facet.s == std::vector<long>({-1, 0, -2, 8, -1}),
              "W (q',0) = (-1,0,-2,8,-1)");
        check(c->jet.equation_count == 24, "equation count 24");
        check(c->jet.parametric_length() == 7, "curve length 7");
    }
    for (double target : {-2.0, 2.0}) {
        const auto* cw = curve_with_target(rep, target);
        if (!check(cw != nullptr, "curve synthesized")) continue;
        check(std::abs(cw->verification.limit_estimate - Cplx(target, 0)) <=
                  1e-4 * (1 + std::abs(target)),
              "verified limit");
    }
    bool has_m2 = false, has_p2 = false, extra = false;
    for (const auto& v : rep.candidates.values) {
        if (std::abs(v - Cplx(-2, 0)) < 1e-6) has_m2 = true;
        else if (std::abs(v - Cplx(2, 0)) < 1e-6) has_p2 = true;
        else if (std::abs(v) > 1e-6) extra = true;
    }
    check(has_m2 && has_p2, "{-2, +2} contained in the candidate values");
    check(!extra, "candidate values within {0, -2, +2}");
    check(rep.candidates.zero_marker, "superset marker {0} present under the flag");
    check(timer.seconds() < 60.0, "runtime < 60 s");
    sc.finish();
}

void criterion4(const std::string& dir) {
    CriterionScope sc("criterion 4: Example-5.3 family at (z,m) = ((1,2),(3,1))");
    Timer timer;
    auto spec = load(dir, "ex53.acv", "w53.txt");
    auto rep = run_pipeline(spec, "witness");

    // the curve at the A_2 point u3* = 1 (face-polynomial critical value -2)
    const auto* c = curve_with_target(rep, -2.0);
    if (check(c != nullptr, "curve at the A_2 critical point")) {
        check(c->facet.q == ivec({2, 2, 3}), "q = (2,2,3)");
        check(c->facet.rho == 6, "rho = 6");
        check(c->facet.l0 == 10, "L0 = 10");
        check(c->facet.j_set == std::vector<size_t>{2}, "J = {3}");
        check(c->jet.parametric_length() == 6, "curve length 2 m1 = 6");
        // Stated expectation: limit 0 within 1e-4.  The valid input with
        // f(0) = 0 absorbs the constant -2, so the face-polynomial critical
        // value (and hence the limit) is -2; see the decisions ledger.
        check(std::abs(c->verification.limit_estimate - Cplx(0, 0)) <= 1e-4,
              "limit 0 within 1e-4 (spec value; actual limit is -2)");
    }
    check(timer.seconds() < 10.0, "runtime < 10 s");
    sc.finish();
}

void criterion5(const std::string& dir) {
    CriterionScope sc("criterion 5: property suite, exact core");
    (void)dir;
    std::mt19937_64 rng(2024);

    // 200 random unimodular matrices: W * M = I exactly
    {
        bool ok = true;
        std::uniform_int_distribution<int> dim(2, 5), val(-3, 3), pick(0, 9);
        for (int t = 0; t < 200 && ok; ++t) {
            size_t n = dim(rng);
            IntMat w = identity_mat(n);
            for (int op = 0; op < 12; ++op) {
                size_t i = pick(rng) % n, j = pick(rng) % n;
                if (i == j) continue;
                BigInt f = val(rng);
                for (size_t c = 0; c < n; ++c) w[i][c] += f * w[j][c];
            }
            IntMat m = invert_unimodular(w);
            if (mat_mul(w, m) != identity_mat(n)) ok = false;
            if (mat_mul(m, w) != identity_mat(n)) ok = false;
        }
        check(ok, "200 random unimodular W*M = I exactly");
    }
    // hull idempotence and facet-oracle equivalence on <= 12 points, dim <= 4
    {
        bool ok = true;
        std::uniform_int_distribution<int> dim(2, 4), npts(5, 12), coord(-4, 4);
        for (int t = 0; t < 40 && ok; ++t) {
            size_t n = dim(rng);
            std::vector<IntVec> pts;
            int m = npts(rng);
            for (int i = 0; i < m; ++i) {
                IntVec p(n);
                for (size_t c = 0; c < n; ++c) p[c] = coord(rng);
                pts.push_back(p);
            }
            Polytope h = convex_hull(pts);
            Polytope h2 = convex_hull(h.vertices);
            if (h.vertices != h2.vertices) ok = false;
            // oracle: every input point inside; every vertex extremal
            for (const auto& p : pts)
                if (!in_convex_hull(p, h.vertices)) ok = false;
            for (size_t i = 0; i < h.vertices.size() && ok; ++i) {
                std::vector<IntVec> others;
                for (size_t j = 0; j < h.vertices.size(); ++j)
                    if (j != i) others.push_back(h.vertices[j]);
                if (!others.empty() && in_convex_hull(h.vertices[i], others)) ok = false;
            }
            // facets support everything
            for (const auto& f : h.facets)
                for (const auto& p : pts)
                    if (dot(f.normal, p) < f.offset) ok = false;
        }
        check(ok, "hull idempotence + exhaustive-facet oracle, dim <= 4");
    }
    // lattice volume on random lattice polygons vs shoelace, and invariance
    // under a different triangulation (fan from another vertex via relabel)
    {
        bool ok = true;
        std::uniform_int_distribution<int> coord(-5, 5), npts(3, 8);
        for (int t = 0; t < 50 && ok; ++t) {
            std::vector<IntVec> pts;
            int m = npts(rng);
            for (int i = 0; i < m; ++i) pts.push_back(IntVec{coord(rng), coord(rng)});
            Polytope h = convex_hull(pts);
            if (h.intrinsic_dim != 2) { --t; continue; }
            std::vector<IntVec> basis = {IntVec{1, 0}, IntVec{0, 1}};
            BigInt vol = lattice_volume(h.vertices, basis);
            // shoelace on the ordered boundary: order vertices by angle
            std::vector<IntVec> vs = h.vertices;
            IntVec centroid{0, 0};
            for (const auto& v : vs) centroid = centroid + v;
            std::sort(vs.begin(), vs.end(), [&](const IntVec& a, const IntVec& b) {
                double aa = std::atan2(
                    to_double(a[1]) * vs.size() - to_double(centroid[1]),
                    to_double(a[0]) * vs.size() - to_double(centroid[0]));
                double bb = std::atan2(
                    to_double(b[1]) * vs.size() - to_double(centroid[1]),
                    to_double(b[0]) * vs.size() - to_double(centroid[0]));
                return aa < bb;
            });
            BigInt twice_area = 0;
            for (size_t i = 0; i < vs.size(); ++i) {
                const auto& a = vs[i];
                const auto& b = vs[(i + 1) % vs.size()];
                twice_area += a[0] * b[1] - a[1] * b[0];
            }
            if (twice_area < 0) twice_area = -twice_area;
            if (vol != twice_area) ok = false;
            // triangulation independence: relabeled point order
            std::vector<IntVec> shuffled(h.vertices.rbegin(), h.vertices.rend());
            if (lattice_volume(shuffled, basis) != vol) ok = false;
        }
        check(ok, "lattice volume matches shoelace on 50 random polygons");
    }
    // dual cone double-dual identity on 50 random cones
    {
        bool ok = true;
        std::uniform_int_distribution<int> coord(-3, 3), ngen(1, 4);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int t = 0; t < 50 && ok; ++t) {
            ConeRep c;
            int m = ngen(rng);
            for (int i = 0; i < m; ++i) {
                IntVec g{coord(rng), coord(rng), coord(rng)};
                if (!is_zero(g)) c.generators.push_back(primitive(g));
            }
            if (c.generators.empty()) { --t; continue; }
            ConeRep dd = dual_cone(dual_cone(c));
            // sets agree: generators of each inside the other
            for (const auto& g : c.generators)
                if (!in_cone(g, dd.generators)) ok = false;
            for (const auto& g : dd.generators)
                if (!in_cone(g, c.generators)) ok = false;
            // random rays of c stay in dd
            for (int s = 0; s < 5; ++s) {
                RatVec x(3, Rat(0));
                for (const auto& g : c.generators) {
                    long w = static_cast<long>(unit(rng) * 4);
                    for (size_t i2 = 0; i2 < 3; ++i2) x[i2] += Rat(w) * Rat(g[i2]);
                }
                if (!in_cone(x, dd.generators)) ok = false;
            }
        }
        check(ok, "dual_cone double-dual identity on 50 random cones");
    }
    sc.finish();
}

void criterion6(const std::string& dir) {
    CriterionScope sc("criterion 6: property suite, analysis");
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> logu(-0.3, 0.3), ph(0, 2 * M_PI);

    struct G {
        std::string prob, wf;
    };
    std::vector<G> goldens = {{"ex51.acv", "w51.txt"},
                              {"ex52.acv", "w52.txt"},
                              {"ex53.acv", "w53.txt"},
                              {"five_var.acv", "w5var.txt"}};
    bool chain_ok = true, fw_ok = true;
    for (const auto& g : goldens) {
        auto spec = load(dir, g.prob, g.wf);
        auto nd = newton_data(spec.f);
        auto bfs = bad_faces(nd.delta, nd.support);
        auto chart = build_chart(bfs[0], nd.delta, nd.support, spec.user_w);
        auto fw = substitute_monomial(spec.f, chart.w);
        size_t n = spec.n;
        auto theta_fw = log_gradient(fw);
        auto theta_f = log_gradient(spec.f);
        for (int t = 0; t < 20; ++t) {
            std::vector<MpCplx> u(n);
            for (size_t v = 0; v < n; ++v) {
                double r = std::pow(10.0, logu(rng)), a = ph(rng);
                u[v] = MpCplx(Cplx(r * std::cos(a), r * std::sin(a)));
            }
            std::vector<MpCplx> x(n, MpCplx(MpReal(1)));
            for (size_t i = 0; i < n; ++i)
                for (size_t v = 0; v < n; ++v) {
                    long e = chart.w[i][v].convert_to<long>();
                    if (e) x[i] = x[i] * pow_int(u[v], e);
                }
            // f(x) = f^W(u)
            MpCplx fx = spec.f.eval_mp(x), fwu = fw.eval_mp(u);
            double rel = abs(fx - fwu).convert_to<double>() /
                         std::max(1.0, abs(fx).convert_to<double>());
            if (rel > 1e-12) fw_ok = false;
            // chain rule: theta_x f (x) = M^T theta_u f^W (u)
            for (size_t i = 0; i < n; ++i) {
                MpCplx lhs = theta_f[i].eval_mp(x);
                MpCplx rhs;
                IntVec mu = chart.mu(i);
                for (size_t j = 0; j < n; ++j) {
                    long m = mu[j].convert_to<long>();
                    if (m) rhs += MpCplx(MpReal(m)) * theta_fw[j].eval_mp(u);
                }
                double rel2 = abs(lhs - rhs).convert_to<double>() /
                              std::max(1.0, abs(lhs).convert_to<double>());
                if (rel2 > 1e-10) chain_ok = false;
            }
        }
    }
    check(chain_ok, "chain-rule identity at 20 random torus points per golden");
    check(fw_ok, "f(x) = f^W(u) to 1e-12");

    // jet evaluation order fit
    {
        auto spec = load(dir, "ex51.acv", "w51.txt");
        auto nd = newton_data(spec.f);
        auto bfs = bad_faces(nd.delta, nd.support);
        auto chart = build_chart(bfs[0], nd.delta, nd.support, spec.user_w);
        auto fw = substitute_monomial(spec.f, chart.w);
        std::vector<MpCplx> us = {MpCplx(), MpCplx(MpReal(-1) / 3),
                                  MpCplx(MpReal(2) / 3)};
        long order = 6;
        auto jet = local_expand(fw, chart, us, order, IntVec(3, 1));
        std::vector<double> lx, ly;
        std::vector<Cplx> dir = {{0.31, 0.2}, {-0.25, 0.11}, {0.17, -0.23}};
        for (double eps : {1e-1, 3.16e-2, 1e-2, 3.16e-3, 1e-3}) {
            std::vector<MpCplx> delta(3), upt(3);
            for (size_t v = 0; v < 3; ++v) {
                delta[v] = MpCplx(Cplx(eps) * dir[v]);
                upt[v] = us[v] + delta[v];
            }
            MpCplx truth = fw.eval_mp(upt);
            MpCplx approx = jet_eval(jet, delta);
            double err = abs(truth - approx).convert_to<double>();
            lx.push_back(std::log(eps));
            ly.push_back(std::log(std::max(err, 1e-280)));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lx.size(); ++i)
            sx += lx[i], sy += ly[i], sxx += lx[i] * lx[i], sxy += lx[i] * ly[i];
        double m = lx.size();
        double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        check(slope >= order + 0.9,
              "jet evaluation error fits order >= " + std::to_string(order) + ".9");
    }
    // mu-condition dual formulations agree on 200 random (chart, q') pairs
    {
        std::uniform_int_distribution<int> dim(2, 5), val(-3, 3), pick(0, 9);
        bool agreed = true;
        int tested = 0;
        for (int t = 0; t < 200; ++t) {
            size_t n = dim(rng);
            IntMat w = identity_mat(n);
            for (int op = 0; op < 10; ++op) {
                size_t i = pick(rng) % n, j = pick(rng) % n;
                if (i == j) continue;
                BigInt f = val(rng);
                for (size_t c = 0; c < n; ++c) w[i][c] += f * w[j][c];
            }
            Chart chart;
            chart.w = w;
            chart.m = invert_unimodular(w);
            chart.k = 1 + (pick(rng) % (n - 1));
            IntVec qp(n, 0);
            for (size_t v = 0; v < chart.k; ++v) qp[v] = val(rng);
            try {
                check_mu_condition(chart, qp); // throws on disagreement
                ++tested;
            } catch (const InconsistentDuality&) {
                agreed = false;
            }
        }
        check(agreed && tested == 200, "mu-condition formulations agree (200 pairs)");
    }
    sc.finish();
}

void criterion7(const std::string& dir) {
    CriterionScope sc("criterion 7: verifier cross-validation on golden curves");
    struct G {
        std::string prob, wf;
        std::optional<std::vector<Cplx>> ustar;
    };
    std::vector<G> goldens = {
        {"ex52.acv", "w52.txt", std::nullopt},
        {"ex51.acv", "w51.txt",
         std::vector<Cplx>{{0, 0}, {-1.0 / 3, 0}, {2.0 / 3, 0}}},
        {"ex53.acv", "w53.txt", std::nullopt},
        {"five_var.acv", "w5var.txt", std::nullopt},
    };
    for (const auto& g : goldens) {
        auto spec = load(dir, g.prob, g.wf);
        spec.u_star_override = g.ustar;
        auto rep = run_pipeline(spec, "witness");
        for (const auto& fr : rep.faces)
            for (const auto& c : fr.curves) {
                if (!c.error.empty()) {
                    check(false, g.prob + ": curve failed: " + c.error);
                    continue;
                }
                std::ostringstream tag;
                tag << g.prob << " target " << c.target.real();
                check(c.symbolic_pass, tag.str() + ": symbolic order check");
                check(c.verification.cond_i.pass,
                      tag.str() + ": condition (I) slope >= 0.9 (got " +
                          std::to_string(c.verification.cond_i.slope) + ")");
                check(c.verification.cond_ii.pass,
                      tag.str() + ": condition (II) slope >= 0.9 (got " +
                          std::to_string(c.verification.cond_ii.slope) + ")");
            }
    }
    sc.finish();
}

void criterion8(const std::string& dir) {
    CriterionScope sc("criterion 8: determinism (byte-identical reports)");
    for (const char* prob : {"ex52.acv", "ex51.acv", "ex53.acv", "five_var.acv"}) {
        std::string wf = std::string(prob) == "ex52.acv"      ? "w52.txt"
                         : std::string(prob) == "ex51.acv"    ? "w51.txt"
                         : std::string(prob) == "ex53.acv"    ? "w53.txt"
                                                              : "w5var.txt";
        auto spec = load(dir, prob, wf);
        spec.seed = 42;
        auto r1 = report_to_json(run_pipeline(spec, "witness")).dump(2);
        auto r2 = report_to_json(run_pipeline(spec, "witness")).dump(2);
        check(r1 == r2, std::string(prob) + ": same-seed reports byte-identical");
    }
    sc.finish();
}

} // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "problems";
    int failed_criteria = 0;
    std::vector<void (*)(const std::string&)> criteria = {
        criterion1, criterion2, criterion3, criterion4,
        criterion5, criterion6, criterion7, criterion8};
    for (auto* c : criteria) {
        int before = g_checks_failed;
        try {
            c(dir);
        } catch (const std::exception& e) {
            ++g_checks_failed;
            std::cout << "FAIL  (exception: " << e.what() << ")\n";
        }
        if (g_checks_failed != before) ++failed_criteria;
    }
    std::cout << (failed_criteria == 0 ? "all criteria passed"
                                       : std::to_string(failed_criteria) +
                                             " criteria failed")
              << "\n";
    return failed_criteria;
}
