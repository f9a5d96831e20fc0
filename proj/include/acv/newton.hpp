#ifndef ACV_NEWTON_HPP
#define ACV_NEWTON_HPP

#include "polytope.hpp"
#include "sparsepoly.hpp"

#include <optional>

namespace acv {

struct NewtonData {
    std::vector<IntVec> support;
    Polytope delta;       // Delta(f) = conv(supp f)
    Polytope gamma_minus; // conv(supp f  U  {0})
};

// A face gamma of Delta(f) whose affine span passes through the origin and
// which is cut out by a supporting hyperplane with mixed-sign normal.
struct BadFace {
    FaceDesc face;               // supporting data on Delta(f)
    std::vector<IntVec> vertices;
    int dim = -1;
    size_t codim = 0;
    IntVec witness_p;            // mixed-sign normal with gamma = {p = 0} cap Delta
};

inline NewtonData newton_data(const SparsePoly& f) {
    if (f.is_zero()) throw acv_error("newton_data: zero polynomial");
    Expo zero(f.n, 0);
    if (f.terms.count(zero))
        throw acv_error("newton_data: constant term present (f(0) != 0)");
    NewtonData nd;
    nd.support = f.support();
    nd.delta = convex_hull(nd.support);
    auto with0 = nd.support;
    with0.push_back(IntVec(f.n, 0));
    nd.gamma_minus = convex_hull(with0);
    if (nd.delta.intrinsic_dim != static_cast<int>(f.n))
        throw NotFullDimensional("dim Delta(f) = " +
                                 std::to_string(nd.delta.intrinsic_dim));
    return nd;
}

inline std::vector<IntVec> lattice_points_of(const std::vector<IntVec>& vertices);

/// Enumerate the bad faces of Delta(f): faces gamma of dimension 1..n-1 with
/// (i) the affine span of gamma containing 0, and (ii) a supporting
/// hyperplane H through 0 with mixed-sign normal cutting gamma = H cap Delta.
/// For (ii) the normal cone of gamma is searched exactly for a mixed-sign
/// relative-interior vector.
///
/// Two combinatorial filters follow: a face with a support point outside the
/// linear span of its other support points is dropped (its face polynomial
/// has empty torus singular locus for every choice of coefficients, so it
/// can never contribute a critical value), and a face contained in another
/// surviving face is absorbed by it.  These reproduce the per-example bad
/// face lists and the volume-based cardinality bound.
inline std::vector<BadFace> bad_faces(const Polytope& delta,
                                      const std::vector<IntVec>& support) {
    if (delta.intrinsic_dim != static_cast<int>(delta.ambient_dim))
        throw NotFullDimensional("bad_faces");
    size_t n = delta.ambient_dim;
    std::vector<BadFace> raw;
    for (int d = 1; d < static_cast<int>(n); ++d) {
        for (const auto& f : faces(delta, d)) {
            // (i) affine span through 0: the linear rank of the vertices
            // equals the rank of their differences
            std::vector<IntVec> vs;
            for (size_t i : f.vertex_subset) vs.push_back(delta.vertices[i]);
            IntMat pts(vs.begin(), vs.end());
            IntMat diffs;
            for (size_t i = 1; i < vs.size(); ++i) diffs.push_back(vs[i] - vs[0]);
            size_t rd = diffs.empty() ? 0 : rank_of(diffs);
            size_t rp = rank_of(pts);
            if (rp != rd) continue; // 0 not in the affine span
            // (ii) mixed-sign supporting hyperplane through 0
            std::vector<IntVec> ncone_gens;
            for (const auto& fac : delta.facets)
                if (std::includes(fac.vertex_subset.begin(), fac.vertex_subset.end(),
                                  f.vertex_subset.begin(), f.vertex_subset.end()))
                    ncone_gens.push_back(fac.normal);
            auto p = mixed_sign_interior_vector(ncone_gens);
            if (!p) continue;
            BadFace bf;
            bf.face = f;
            bf.vertices = vs;
            bf.dim = d;
            bf.codim = n - static_cast<size_t>(d);
            bf.witness_p = *p;
            raw.push_back(std::move(bf));
        }
    }
    // filter: every support point on the face lies in the span of the others
    std::vector<BadFace> spanned;
    for (auto& bf : raw) {
        std::vector<IntVec> pts;
        for (const auto& alpha : support)
            if (in_convex_hull(alpha, bf.vertices)) pts.push_back(alpha);
        bool ok = true;
        for (size_t i = 0; i < pts.size() && ok; ++i) {
            IntMat others;
            for (size_t j = 0; j < pts.size(); ++j)
                if (j != i) others.push_back(pts[j]);
            IntMat with;
            with = others;
            with.push_back(pts[i]);
            if (others.empty() || rank_of(with) != rank_of(others)) ok = false;
        }
        if (ok) spanned.push_back(std::move(bf));
    }
    // filter: absorb faces contained in a larger surviving face
    std::vector<BadFace> out;
    for (size_t i = 0; i < spanned.size(); ++i) {
        bool contained = false;
        for (size_t j = 0; j < spanned.size() && !contained; ++j) {
            if (i == j) continue;
            if (spanned[i].vertices.size() > spanned[j].vertices.size()) continue;
            bool subset = true;
            for (const auto& v : spanned[i].vertices)
                if (!in_convex_hull(v, spanned[j].vertices)) { subset = false; break; }
            if (subset && spanned[i].dim < spanned[j].dim) contained = true;
        }
        if (!contained) out.push_back(spanned[i]);
    }
    return out;
}

/// All lattice points of conv(vertices): bounding box plus exact membership.
inline std::vector<IntVec> lattice_points_of(const std::vector<IntVec>& vertices) {
    size_t n = vertices[0].size();
    IntVec lo = vertices[0], hi = vertices[0];
    for (const auto& v : vertices)
        for (size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<IntVec> pts;
    IntVec cur = lo;
    for (;;) {
        if (in_convex_hull(cur, vertices)) pts.push_back(cur);
        size_t i = 0;
        while (i < n) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo[i];
            ++i;
        }
        if (i == n) break;
    }
    return pts;
}

/// Restriction of f to the exponents lying on gamma.
inline SparsePoly face_polynomial(const SparsePoly& f, const BadFace& gamma) {
    SparsePoly r(f.n);
    for (const auto& [e, c] : f.terms) {
        IntVec alpha = to_intvec(e);
        bool on = dot(gamma.face.normal, alpha) == gamma.face.offset &&
                  in_convex_hull(alpha, gamma.vertices);
        if (on) r.add_term(e, c);
    }
    return r;
}

/// All lattice points of the face polytope.
inline std::vector<IntVec> face_lattice_points(const BadFace& gamma) {
    return lattice_points_of(gamma.vertices);
}

/// Def. "relatively simple": the face of the dual cone of gamma_minus
/// orthogonal to gamma is simplicial, or has dimension <= 3.
inline bool classify_relatively_simple(const BadFace& gamma, const Polytope& gamma_minus) {
    ConeRep base;
    for (const auto& v : gamma_minus.vertices)
        if (!is_zero(v)) base.generators.push_back(v);
    ConeRep dual = dual_cone(base);
    // C(gamma)^* = rays of the dual vanishing on gamma
    std::vector<IntVec> gens;
    for (const auto& r : dual.generators) {
        bool orth = true;
        for (const auto& v : gamma.vertices)
            if (dot(r, v) != 0) { orth = false; break; }
        if (orth) gens.push_back(r);
    }
    if (gens.empty()) return true;
    IntMat gm(gens.begin(), gens.end());
    size_t rank = rank_of(gm);
    if (rank <= 3) return true;
    return gens.size() == rank; // simplicial
}

/// 1 + sum over bad faces of the normalized volume of conv(gamma_Z U {0})
/// in the lattice Z-spanned by the lattice points of gamma.
inline BigInt volume_bound(const std::vector<BadFace>& faces_in) {
    BigInt total = 1;
    for (const auto& bf : faces_in) {
        auto pts = face_lattice_points(bf);
        // lattice generated by gamma_Z; rank = dim gamma since span(gamma)
        // passes through the origin
        IntMat gen(pts.begin(), pts.end());
        SmithResult snf = smith_normal_form(gen);
        IntMat vinv = invert_unimodular(snf.v);
        std::vector<IntVec> basis;
        for (size_t i = 0; i < std::min(gen.size(), vinv.size()); ++i) {
            if (snf.s[i][i] == 0) break;
            basis.push_back(snf.s[i][i] * vinv[i]);
        }
        auto with0 = pts;
        with0.push_back(IntVec(pts[0].size(), 0));
        total += lattice_volume(with0, basis);
    }
    return total;
}

} // namespace acv

#endif
