#include "acv/critical.hpp"
#include "acv/newton.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace acv;

TEST_CASE("critical points of u^3 - 3u are +-1 with values -+2") {
    SparsePoly g(1);
    g.add_term({3}, Rat(1));
    g.add_term({1}, Rat(-3));
    auto pts = face_critical_points(g);
    REQUIRE(pts.size() == 2);
    // sorted by value: (-2 at u=1), (+2 at u=-1)
    REQUIRE(std::abs(pts[0].value - Cplx(-2, 0)) < 1e-12);
    REQUIRE(std::abs(pts[0].u[0] - Cplx(1, 0)) < 1e-12);
    REQUIRE(std::abs(pts[1].value - Cplx(2, 0)) < 1e-12);
    REQUIRE(std::abs(pts[1].u[0] - Cplx(-1, 0)) < 1e-12);
    for (const auto& p : pts) {
        REQUIRE(p.isolated);
        REQUIRE(p.residual < 1e-10);
    }
}

TEST_CASE("univariate path finds at most deg-1 critical points") {
    SparsePoly g(1);
    g.add_term({5}, Rat(1));
    g.add_term({2}, Rat(-7));
    g.add_term({1}, Rat(3));
    auto pts = face_critical_points(g);
    REQUIRE(pts.size() <= 4);
    for (const auto& p : pts) REQUIRE(p.residual < 1e-10);
}

TEST_CASE("the A_2 face polynomial has critical points 1 and 7/4") {
    // (u-1)^3 (u-2) - 2 expanded: u^4 - 5u^3 + 9u^2 - 7u
    SparsePoly g(1);
    g.add_term({4}, Rat(1));
    g.add_term({3}, Rat(-5));
    g.add_term({2}, Rat(9));
    g.add_term({1}, Rat(-7));
    auto pts = face_critical_points(g);
    REQUIRE(pts.size() == 2);
    bool found1 = false, found74 = false;
    for (const auto& p : pts) {
        if (std::abs(p.u[0] - Cplx(1, 0)) < 1e-9) {
            found1 = true;
            REQUIRE(std::abs(p.value - Cplx(-2, 0)) < 1e-9);
        }
        if (std::abs(p.u[0] - Cplx(1.75, 0)) < 1e-9) {
            found74 = true;
            REQUIRE(std::abs(p.value - Cplx(-539.0 / 256, 0)) < 1e-9);
        }
    }
    REQUIRE((found1 && found74));
    // companion-matrix oracle: the derivative 4u^3 - 15u^2 + 18u - 7 has
    // roots {1, 1, 7/4}
}

TEST_CASE("non-isolated locus of the trapezoid face polynomial is detected") {
    // f_gamma^W(u2, u3) = g(u2 - u3) with g(y) = y^3 + 4y^2 + 5y: critical
    // values -2 (on y = -1) and -50/27 (on y = -5/3), both on lines
    SparsePoly g(2);
    // expand y^3 + 4y^2 + 5y with y = u2 - u3
    SparsePoly y(2);
    y.add_term({1, 0}, Rat(1));
    y.add_term({0, 1}, Rat(-1));
    SparsePoly gg = y * y * y + Rat(4) * (y * y) + Rat(5) * y;
    auto pts = face_critical_points(gg, 7);
    REQUIRE_FALSE(pts.empty());
    auto reps = distinct_critical_values(pts);
    bool m2 = false, m5027 = false;
    for (const auto& r : reps) {
        if (std::abs(r.value - Cplx(-2, 0)) < 1e-7) {
            m2 = true;
            REQUIRE_FALSE(r.isolated);
        }
        if (std::abs(r.value - Cplx(-50.0 / 27, 0)) < 1e-7) m5027 = true;
    }
    REQUIRE((m2 && m5027));
}

TEST_CASE("x-side and u-side critical values agree for the isolated example") {
    // f_gamma = -3 x^v0 + x^{3 v0}: values on the torus are {-2, +2} whether
    // computed in x-coordinates or through the chart
    SparsePoly fg(3);
    fg.add_term({2, 2, 1}, Rat(-3));
    fg.add_term({6, 6, 3}, Rat(1));
    auto xvals = x_side_critical_values(fg, 19, 48);
    bool m2 = false, p2 = false;
    for (const auto& v : xvals) {
        if (std::abs(v - Cplx(-2, 0)) < 1e-8) m2 = true;
        if (std::abs(v - Cplx(2, 0)) < 1e-8) p2 = true;
    }
    REQUIRE((m2 && p2));
    for (const auto& v : xvals)
        REQUIRE((std::abs(v - Cplx(-2, 0)) < 1e-8 || std::abs(v - Cplx(2, 0)) < 1e-8));
}

TEST_CASE("weighted-homogeneous polynomials only produce the value zero") {
    // g = (u1 - u2)^2 (u1 + u2): homogeneous, so every torus critical value
    // vanishes by the Euler identity
    SparsePoly u1(2), u2(2);
    u1.add_term({1, 0}, Rat(1));
    u2.add_term({0, 1}, Rat(1));
    SparsePoly d = u1, s = u1;
    d.add_term({0, 1}, Rat(-1));
    s.add_term({0, 1}, Rat(1));
    SparsePoly g = d * d * s;
    auto pts = face_critical_points(g, 29);
    for (const auto& p : pts) REQUIRE(std::abs(p.value) < 1e-8);
}

TEST_CASE("torus filtering discards near-zero coordinates") {
    // u^2: the only critical point of the derivative is u = 0, off the torus
    SparsePoly g(1);
    g.add_term({2}, Rat(1));
    auto pts = face_critical_points(g);
    REQUIRE(pts.empty());
}
