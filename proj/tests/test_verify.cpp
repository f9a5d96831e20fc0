#include "acv/pipeline.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace acv;

namespace {

RunReport golden52() {
    std::string prob = "n = 3\nterm -3 2 2 1\nterm 1 1 0 1\nterm 1 0 1 1\nterm 1 6 6 3\n";
    auto spec = parse_problem(prob);
    spec.user_w = IntMat{{1, 0, 1}, {-2, -1, -1}, {2, 2, 1}};
    return run_pipeline(spec, "witness");
}

} // namespace

TEST_CASE("golden curve passes symbolic and numeric verification") {
    auto rep = golden52();
    REQUIRE(rep.faces.size() == 1);
    for (const auto& c : rep.faces[0].curves) {
        REQUIRE(c.error.empty());
        REQUIRE(c.symbolic_pass);
        REQUIRE(c.verification.cond_i.pass);
        REQUIRE(c.verification.cond_ii.pass);
        REQUIRE(c.verification.limit_pass);
        REQUIRE(c.verification.fw_consistency < 1e-10);
        // order table: -5 + ord > 0 for j = 3
        for (const auto& row : c.symbolic)
            if (row.j == 2) {
                REQUIRE(row.min_spread == -5);
                REQUIRE(row.ord == 6);
            }
    }
}

TEST_CASE("a constant curve fails condition (I)") {
    auto rep = golden52();
    const auto& fr = rep.faces[0];
    // X(t) = (1,1,1): an identity chart with all-toric coordinates
    Chart idchart;
    idchart.w = identity_mat(3);
    idchart.m = identity_mat(3);
    idchart.k = 0;
    CurveJet flat;
    flat.q = IntVec{1, 1, 1};
    flat.k = 0;
    flat.u_star = {MpCplx(MpReal(1)), MpCplx(MpReal(1)), MpCplx(MpReal(1))};
    flat.coeff = {{MpCplx(), MpCplx(), MpCplx()}};
    auto wc = push_to_x(flat, idchart, Cplx(0, 0));
    auto v = numeric_verify(fr.f_gamma, fr.f_gamma, wc, Cplx(0, 0));
    REQUIRE_FALSE(v.cond_i.pass);
}

TEST_CASE("chain-rule consistency holds along the golden curve") {
    auto rep = golden52();
    const auto& fr = rep.faces[0];
    const auto& c = fr.curves[0];
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> uv(0.5, 1.5);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> l = {uv(rng), uv(rng), uv(rng)};
        for (double t : {1e-2, 1e-3, 1e-4}) {
            double dev = chain_rule_consistency(rep.spec.f, fr.f_w, fr.chart,
                                                c.witness, l, t);
            REQUIRE(dev < 1e-8);
        }
    }
}

TEST_CASE("order shortfall raises on a broken curve") {
    auto rep = golden52();
    const auto& fr = rep.faces[0];
    const auto& good = fr.curves[0];
    // spoil the solved coefficient so g^3_rho no longer vanishes
    CurveJet bad = good.jet;
    bad.coeff[0][2] += MpCplx(MpReal(1) / 2);
    std::vector<MpCplx> us = {MpCplx(), MpCplx(), MpCplx(MpReal(1))};
    auto jets = mu_pair_jets(fr.chart, fr.f_w, us, 24,
                             detail::phase_b_weights(IntVec{-1, 3, 3}, 2, 3));
    REQUIRE_THROWS_AS(symbolic_order_check(bad, jets, good.facet, fr.chart),
                      OrderShortfall);
}

TEST_CASE("grid truncates rather than failing on overflow") {
    // blowup fast enough to overflow the soft |X| cap at the small-t end
    Chart idchart;
    idchart.w = identity_mat(2);
    idchart.m = identity_mat(2);
    idchart.k = 2;
    // u coordinates: u1 = t^-60, u2 = t^-60 ... use affine k = 2 with q < 0
    idchart.k = 2;
    CurveJet steep;
    steep.q = IntVec{-60, -60};
    steep.k = 2;
    steep.u_star = {MpCplx(), MpCplx()};
    steep.coeff = {{MpCplx(MpReal(1)), MpCplx(MpReal(1))}};
    auto wc = push_to_x(steep, idchart, Cplx(0, 0));
    SparsePoly f(2);
    f.add_term({1, 0}, Rat(1));
    f.add_term({0, 1}, Rat(1));
    auto v = numeric_verify(f, f, wc, Cplx(0, 0));
    REQUIRE(v.truncated);
    REQUIRE_FALSE(v.t_grid.empty());
}
