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

} // namespace

TEST_CASE("newton data for the isolated-singularity example") {
    auto nd = newton_data(ex52());
    REQUIRE(nd.delta.intrinsic_dim == 3);
    for (const auto& v :
         {IntVec{2, 2, 1}, IntVec{1, 0, 1}, IntVec{0, 1, 1}, IntVec{6, 6, 3}})
        REQUIRE(std::find(nd.delta.vertices.begin(), nd.delta.vertices.end(), v) !=
                nd.delta.vertices.end());
    // gamma_minus additionally contains the origin
    REQUIRE(std::find(nd.gamma_minus.vertices.begin(), nd.gamma_minus.vertices.end(),
                      IntVec{0, 0, 0}) != nd.gamma_minus.vertices.end());
}

TEST_CASE("degenerate Newton polyhedra are rejected") {
    SparsePoly f(2);
    f.add_term({1, 1}, Rat(1)); // single monomial: Delta is a point
    REQUIRE_THROWS_AS(newton_data(f), NotFullDimensional);
}

TEST_CASE("the non-isolated example has (3,1,1) as a vertex") {
    auto nd = newton_data(ex51());
    REQUIRE(std::find(nd.delta.vertices.begin(), nd.delta.vertices.end(),
                      IntVec{3, 1, 1}) != nd.delta.vertices.end());
}

TEST_CASE("exactly one bad face on the ray through (2,2,1)") {
    auto nd = newton_data(ex52());
    auto bfs = bad_faces(nd.delta, nd.support);
    REQUIRE(bfs.size() == 1);
    REQUIRE(bfs[0].dim == 1);
    REQUIRE(bfs[0].codim == 2);
    for (const auto& v : bfs[0].vertices) {
        REQUIRE(v[0] == v[1]);
        REQUIRE(2 * v[2] == v[0]);
    }
    // the witness has mixed signs and supports Delta at zero
    bool pos = false, neg = false;
    for (const auto& x : bfs[0].witness_p) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
    }
    REQUIRE((pos && neg));
    for (const auto& alpha : nd.support)
        REQUIRE(dot(bfs[0].witness_p, alpha) >= 0);
    for (const auto& v : bfs[0].vertices) REQUIRE(dot(bfs[0].witness_p, v) == 0);
}

TEST_CASE("exactly one 2-dimensional bad face for the non-isolated example") {
    auto nd = newton_data(ex51());
    auto bfs = bad_faces(nd.delta, nd.support);
    REQUIRE(bfs.size() == 1);
    REQUIRE(bfs[0].dim == 2);
    // located on the span of (2,2,1) and (1,2,1)
    for (const auto& v : bfs[0].vertices) {
        // v = a(2,2,1) + b(1,2,1) exactly
        RatMat m(3, RatVec(2));
        m[0][0] = 2; m[0][1] = 1;
        m[1][0] = 2; m[1][1] = 2;
        m[2][0] = 1; m[2][1] = 1;
        RatVec rhs = {Rat(v[0]), Rat(v[1]), Rat(v[2])};
        REQUIRE(solve_rational(m, rhs).has_value());
    }
}

TEST_CASE("a shifted simplex has no bad faces") {
    // conv{e1+1, e2+1, e3+1, 3*1}: no face span passes through 0
    SparsePoly f(3);
    f.add_term({2, 1, 1}, Rat(1));
    f.add_term({1, 2, 1}, Rat(1));
    f.add_term({1, 1, 2}, Rat(1));
    f.add_term({3, 3, 3}, Rat(1));
    auto nd = newton_data(f);
    REQUIRE(bad_faces(nd.delta, nd.support).empty());
}

TEST_CASE("bad faces are invariant under coordinate permutation") {
    auto f = ex52();
    // permute coordinates (x1 x2 x3) -> (x3 x1 x2)
    SparsePoly g(3);
    for (const auto& [e, c] : f.terms) g.add_term({e[2], e[0], e[1]}, c);
    auto nda = newton_data(f);
    auto ndb = newton_data(g);
    auto ba = bad_faces(nda.delta, nda.support);
    auto bb = bad_faces(ndb.delta, ndb.support);
    REQUIRE(ba.size() == bb.size());
    for (size_t i = 0; i < ba.size(); ++i) {
        std::vector<IntVec> mapped;
        for (const auto& v : ba[i].vertices) mapped.push_back(IntVec{v[2], v[0], v[1]});
        std::sort(mapped.begin(), mapped.end());
        auto theirs = bb[i].vertices;
        std::sort(theirs.begin(), theirs.end());
        REQUIRE(mapped == theirs);
    }
}

TEST_CASE("face polynomial restricts to the ray terms") {
    auto f = ex52();
    auto nd = newton_data(f);
    auto bfs = bad_faces(nd.delta, nd.support);
    auto fg = face_polynomial(f, bfs[0]);
    SparsePoly expected(3);
    expected.add_term({2, 2, 1}, Rat(-3));
    expected.add_term({6, 6, 3}, Rat(1));
    REQUIRE(fg.terms == expected.terms);
}

TEST_CASE("face polynomial of the trapezoid face drops the off-face terms") {
    auto f = ex51();
    auto nd = newton_data(f);
    auto bfs = bad_faces(nd.delta, nd.support);
    auto fg = face_polynomial(f, bfs[0]);
    // all terms on the span of v2, v3; x^(2,1,1) and x^(3,1,1) removed
    REQUIRE(fg.terms.count(Expo{2, 1, 1}) == 0);
    REQUIRE(fg.terms.count(Expo{3, 1, 1}) == 0);
    REQUIRE(fg.terms.size() == f.terms.size() - 2);
}

TEST_CASE("relative simplicity of the golden faces") {
    {
        auto nd = newton_data(ex52());
        auto bfs = bad_faces(nd.delta, nd.support);
        REQUIRE(classify_relatively_simple(bfs[0], nd.gamma_minus)); // dim <= 3
    }
    {
        // five-variable example: 4-dimensional dual face with 6 generators
        SparsePoly f(5);
        long v0[5] = {1, 2, 3, 1, 1};
        long vb[5][5] = {{3, 3, 4, 2, 0},
                         {1, 3, 5, 2, 0},
                         {3, 1, 4, 2, 0},
                         {1, 1, 1, 1, 0},
                         {4, 4, 10, 7, 0}};
        Expo e0(5), e3(5);
        for (int i = 0; i < 5; ++i) {
            e0[i] = v0[i];
            e3[i] = 3 * v0[i];
        }
        f.add_term(e0, Rat(-3));
        f.add_term(e3, Rat(1));
        for (auto& row : vb) {
            Expo e(5);
            for (int i = 0; i < 5; ++i) e[i] = row[i] + v0[i];
            f.add_term(e, Rat(1));
        }
        auto nd = newton_data(f);
        auto bfs = bad_faces(nd.delta, nd.support);
        REQUIRE(bfs.size() == 1);
        REQUIRE_FALSE(classify_relatively_simple(bfs[0], nd.gamma_minus));
    }
}

TEST_CASE("volume bounds of the golden examples") {
    {
        auto nd = newton_data(ex51());
        REQUIRE(volume_bound(bad_faces(nd.delta, nd.support)) == 10);
    }
    {
        auto nd = newton_data(ex52());
        REQUIRE(volume_bound(bad_faces(nd.delta, nd.support)) == 4);
    }
    REQUIRE(volume_bound({}) == 1);
}

TEST_CASE("volume bound is invariant under unimodular monomial substitution") {
    auto f = ex52();
    IntMat w = {{1, 0, 1}, {-2, -1, -1}, {2, 2, 1}};
    // x -> u^W maps supp(f) into Z^3 with some negative exponents; shift back
    // to the positive orthant with a diagonal twist by a large monomial is not
    // volume-preserving, so instead test with a nonnegative unimodular map.
    IntMat shear = {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    SparsePoly g = substitute_monomial(f, shear);
    auto nda = newton_data(f);
    auto ndb = newton_data(g);
    REQUIRE(volume_bound(bad_faces(nda.delta, nda.support)) ==
            volume_bound(bad_faces(ndb.delta, ndb.support)));
    (void)w;
}
