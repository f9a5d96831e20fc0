#include "acv/jets.hpp"
#include "acv/newton.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace acv;

namespace {

SparsePoly ex52() {
    SparsePoly f(3);
    f.add_term({2, 2, 1}, Rat(-3));
    f.add_term({1, 0, 1}, Rat(1));
    f.add_term({0, 1, 1}, Rat(1));
    f.add_term({6, 6, 3}, Rat(1));
    return f;
}

SparsePoly ex51() {
    SparsePoly y(3);
    y.add_term({2, 2, 1}, Rat(1));
    y.add_term({1, 2, 1}, Rat(-1));
    SparsePoly yp1 = y;
    yp1.add_term({0, 0, 0}, Rat(1));
    SparsePoly f = yp1 * yp1 + yp1 * yp1 * yp1;
    f.add_term({2, 1, 1}, Rat(1));
    f.add_term({3, 1, 1}, Rat(1));
    f.add_term({0, 0, 0}, Rat(-2));
    return f;
}

Chart chart51() {
    Chart c;
    c.w = {{0, 1, -1}, {-1, 1, 0}, {2, -3, 2}};
    c.m = invert_unimodular(c.w);
    c.k = 1;
    return c;
}

Chart chart52() {
    Chart c;
    c.w = {{1, 0, 1}, {-2, -1, -1}, {2, 2, 1}};
    c.m = invert_unimodular(c.w);
    c.k = 2;
    return c;
}

std::vector<Cplx> random_torus_point(std::mt19937_64& rng, size_t n) {
    std::uniform_real_distribution<double> logu(-0.3, 0.3), ph(0, 2 * M_PI);
    std::vector<Cplx> u(n);
    for (auto& z : u) {
        double r = std::pow(10.0, logu(rng)), a = ph(rng);
        z = Cplx(r * std::cos(a), r * std::sin(a));
    }
    return u;
}

MpCplx eval_mp_at(const SparsePoly& p, const std::vector<Cplx>& x) {
    std::vector<MpCplx> xm(x.size());
    for (size_t i = 0; i < x.size(); ++i) xm[i] = MpCplx(x[i]);
    return p.eval_mp(xm);
}

} // namespace

TEST_CASE("monomial substitution reproduces the displayed f^W") {
    auto fw = substitute_monomial(ex52(), chart52().w);
    SparsePoly expected(3);
    expected.add_term({3, 2, 2}, Rat(1));
    expected.add_term({0, 1, 0}, Rat(1));
    expected.add_term({0, 0, 3}, Rat(1));
    expected.add_term({0, 0, 1}, Rat(-3));
    REQUIRE(fw.terms == expected.terms);
}

TEST_CASE("substitution by the identity is the identity") {
    auto f = ex51();
    REQUIRE(substitute_monomial(f, identity_mat(3)).terms == f.terms);
}

TEST_CASE("f(u^{w_1},...) = f^W(u) at random torus points") {
    std::mt19937_64 rng(41);
    auto f = ex52();
    auto chart = chart52();
    auto fw = substitute_monomial(f, chart.w);
    for (int t = 0; t < 20; ++t) {
        auto u = random_torus_point(rng, 3);
        std::vector<Cplx> x(3, Cplx{1, 0});
        for (size_t i = 0; i < 3; ++i)
            for (size_t v = 0; v < 3; ++v) {
                long e = chart.w[i][v].convert_to<long>();
                if (e) x[i] *= pow_int(u[v], e);
            }
        auto lhs = eval_mp_at(f, x), rhs = eval_mp_at(fw, u);
        double rel = abs(lhs - rhs).convert_to<double>() /
                     std::max(1.0, abs(lhs).convert_to<double>());
        REQUIRE(rel < 1e-12);
    }
}

TEST_CASE("substitution is a ring homomorphism on random products") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> e(0, 3), c(-4, 4);
    IntMat w = {{1, 0, 1}, {-2, -1, -1}, {2, 2, 1}};
    for (int t = 0; t < 20; ++t) {
        SparsePoly a(3), b(3);
        for (int i = 0; i < 3; ++i) {
            a.add_term({e(rng), e(rng), e(rng)}, Rat(c(rng)));
            b.add_term({e(rng), e(rng), e(rng)}, Rat(c(rng)));
        }
        auto lhs = substitute_monomial(a * b, w);
        auto rhs = substitute_monomial(a, w) * substitute_monomial(b, w);
        REQUIRE(lhs.terms == rhs.terms);
    }
}

TEST_CASE("logarithmic gradient basics") {
    SparsePoly g(3);
    g.add_term({0, 0, 3}, Rat(1));
    g.add_term({0, 0, 1}, Rat(-3));
    auto th = log_gradient(g);
    REQUIRE(th[0].is_zero());
    REQUIRE(th[1].is_zero());
    SparsePoly expected(3);
    expected.add_term({0, 0, 3}, Rat(3));
    expected.add_term({0, 0, 1}, Rat(-3));
    REQUIRE(th[2].terms == expected.terms);

    SparsePoly constant(2);
    constant.add_term({0, 0}, Rat(7));
    for (const auto& comp : log_gradient(constant)) REQUIRE(comp.is_zero());
}

TEST_CASE("log gradient satisfies the Leibniz rule") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> e(0, 3), c(-4, 4);
    for (int t = 0; t < 20; ++t) {
        SparsePoly g(2), h(2);
        for (int i = 0; i < 3; ++i) {
            g.add_term({e(rng), e(rng)}, Rat(c(rng)));
            h.add_term({e(rng), e(rng)}, Rat(c(rng)));
        }
        auto tg = log_gradient(g), th = log_gradient(h), tgh = log_gradient(g * h);
        for (size_t j = 0; j < 2; ++j) {
            SparsePoly rhs = g * th[j] + h * tg[j];
            REQUIRE(tgh[j].terms == rhs.terms);
        }
    }
}

TEST_CASE("geometric re-expansion of u1 u2 / u3 at the non-isolated base point") {
    SparsePoly g(3);
    g.add_term({1, 1, -1}, Rat(1)); // x^{v4} after the chart map
    auto chart = chart51();
    std::vector<MpCplx> us = {MpCplx(), MpCplx(MpReal(-1) / 3), MpCplx(MpReal(2) / 3)};
    auto jet = local_expand(g, chart, us, 8, IntVec(3, 1));
    // u2/u3 = (u2* + U2)(1/u3*) sum (-U3/u3*)^l; the u1 U3^l coefficients are
    // u2*/u3* (-1/u3*)^l = (-1/2)(-3/2)^l
    for (long l = 0; l <= 3; ++l) {
        Expo e = {1, 0, l};
        double expect = -0.5 * std::pow(-1.5, static_cast<double>(l));
        REQUIRE(jet.terms.count(e) == 1);
        REQUIRE(std::abs(jet.terms.at(e).to_cplx() - Cplx(expect, 0)) < 1e-25);
    }
    // and the factor against U2: coefficient of u1 U2 U3^l is (3/2)(-3/2)^l
    for (long l = 0; l <= 2; ++l) {
        Expo e = {1, 1, l};
        double expect = 1.5 * std::pow(-1.5, static_cast<double>(l));
        REQUIRE(std::abs(jet.terms.at(e).to_cplx() - Cplx(expect, 0)) < 1e-25);
    }
}

TEST_CASE("polynomial inputs expand to their own Taylor shift") {
    SparsePoly g(2);
    g.add_term({0, 2}, Rat(1)); // u2^2 in a k=1 chart
    Chart chart;
    chart.w = identity_mat(2);
    chart.m = identity_mat(2);
    chart.k = 1;
    std::vector<MpCplx> us = {MpCplx(), MpCplx(MpReal(3))};
    auto jet = local_expand(g, chart, us, 10, IntVec(2, 1));
    // (3 + U)^2 = 9 + 6U + U^2
    REQUIRE(std::abs(jet.terms.at(Expo{0, 0}).to_cplx() - Cplx(9, 0)) < 1e-30);
    REQUIRE(std::abs(jet.terms.at(Expo{0, 1}).to_cplx() - Cplx(6, 0)) < 1e-30);
    REQUIRE(std::abs(jet.terms.at(Expo{0, 2}).to_cplx() - Cplx(1, 0)) < 1e-30);
}

TEST_CASE("poles with vanishing affine part are rejected") {
    SparsePoly g(2);
    g.add_term({0, -1}, Rat(1)); // 1/u2 with beta' = 0
    Chart chart;
    chart.w = identity_mat(2);
    chart.m = identity_mat(2);
    chart.k = 1;
    std::vector<MpCplx> us = {MpCplx(), MpCplx(MpReal(1))};
    REQUIRE_THROWS_AS(local_expand(g, chart, us, 6, IntVec(2, 1)), ExpansionPole);
}

TEST_CASE("mu jets of the non-isolated example have the corrected leading form") {
    // <mu_3, theta f^W> = u1/2 - 2 U2 + 2 U3 + h.o.t.; the displayed u1/16 in
    // the source is a typo (its own t-expansion uses the coefficient 1/2)
    auto chart = chart51();
    auto fw = substitute_monomial(ex51(), chart.w);
    std::vector<MpCplx> us = {MpCplx(), MpCplx(MpReal(-1) / 3), MpCplx(MpReal(2) / 3)};
    auto jets = mu_pair_jets(chart, fw, us, 6, IntVec(3, 1));
    auto& j3 = jets[2];
    REQUIRE(std::abs(j3.terms.at(Expo{1, 0, 0}).to_cplx() - Cplx(0.5, 0)) < 1e-20);
    REQUIRE(std::abs(j3.terms.at(Expo{0, 1, 0}).to_cplx() - Cplx(-2, 0)) < 1e-20);
    REQUIRE(std::abs(j3.terms.at(Expo{0, 0, 1}).to_cplx() - Cplx(2, 0)) < 1e-20);
}

TEST_CASE("mu jets of the isolated example match the corrected expansion") {
    // <mu_3, theta f^W> = u1^3 u2^2 (U3+1)^2 + u2 + 3 U3 (U3+1)(U3+2); the
    // displayed form with coefficient 3 and -u2 contradicts the printed
    // order-0 equation c2 + c1^3 c2^2 + 6 c3, which this expansion reproduces
    auto chart = chart52();
    auto fw = substitute_monomial(ex52(), chart.w);
    std::vector<MpCplx> us = {MpCplx(), MpCplx(), MpCplx(MpReal(1))};
    auto jets = mu_pair_jets(chart, fw, us, 12, IntVec(3, 1));
    auto& j3 = jets[2];
    REQUIRE(std::abs(j3.terms.at(Expo{0, 1, 0}).to_cplx() - Cplx(1, 0)) < 1e-30);
    REQUIRE(std::abs(j3.terms.at(Expo{3, 2, 0}).to_cplx() - Cplx(1, 0)) < 1e-30);
    REQUIRE(std::abs(j3.terms.at(Expo{3, 2, 1}).to_cplx() - Cplx(2, 0)) < 1e-30);
    REQUIRE(std::abs(j3.terms.at(Expo{0, 0, 1}).to_cplx() - Cplx(6, 0)) < 1e-30);
    REQUIRE(std::abs(j3.terms.at(Expo{0, 0, 2}).to_cplx() - Cplx(9, 0)) < 1e-30);
    REQUIRE(std::abs(j3.terms.at(Expo{0, 0, 3}).to_cplx() - Cplx(3, 0)) < 1e-30);
}

TEST_CASE("Euler identity holds on jets of weighted-homogeneous polynomials") {
    // g = u1^2 u2 + u2^3 is homogeneous of degree 3 under weights (1, 1)
    SparsePoly g(2);
    g.add_term({2, 1}, Rat(1));
    g.add_term({0, 3}, Rat(1));
    auto th = log_gradient(g);
    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; ++t) {
        auto u = random_torus_point(rng, 2);
        MpCplx lhs = eval_mp_at(th[0], u) + eval_mp_at(th[1], u);
        MpCplx rhs = MpCplx(MpReal(3)) * eval_mp_at(g, u);
        REQUIRE(abs(lhs - rhs).convert_to<double>() < 1e-12);
    }
}
