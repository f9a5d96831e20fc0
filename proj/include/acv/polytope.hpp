#ifndef ACV_POLYTOPE_HPP
#define ACV_POLYTOPE_HPP

#include "rational_lp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace acv {

constexpr size_t kMaxAmbientDim = 6;

// Supporting data of one face: primitive inner normal n with
// <n, v> >= offset on the polytope and equality exactly on the face.
struct FaceDesc {
    IntVec normal;
    BigInt offset;
    std::vector<size_t> vertex_subset; // indices into Polytope::vertices, sorted
    int dim = -1;
};

struct Polytope {
    std::vector<IntVec> vertices; // irredundant, sorted
    size_t ambient_dim = 0;
    int intrinsic_dim = -1;
    std::vector<FaceDesc> facets; // filled when full-dimensional
};

struct ConeRep {
    std::vector<IntVec> generators; // primitive
    bool simplicial = false;
    bool unimodular = false;
};

namespace detail {

inline IntVec hyperplane_normal(const std::vector<IntVec>& pts,
                                const std::vector<size_t>& idx) {
    size_t n = pts[idx[0]].size();
    IntMat diffs;
    for (size_t i = 1; i < idx.size(); ++i)
        diffs.push_back(pts[idx[i]] - pts[idx[0]]);
    if (diffs.empty()) return n == 1 ? IntVec{1} : IntVec{};
    auto ker = kernel_basis(diffs);
    if (ker.size() != 1) return {};
    return ker[0];
}

inline int affine_dim(const std::vector<IntVec>& pts, const std::vector<size_t>& idx) {
    if (idx.empty()) return -1;
    IntMat diffs;
    for (size_t i = 1; i < idx.size(); ++i)
        diffs.push_back(pts[idx[i]] - pts[idx[0]]);
    if (diffs.empty()) return 0;
    return static_cast<int>(rank_of(diffs));
}

inline int affine_dim(const std::vector<IntVec>& pts) {
    std::vector<size_t> idx(pts.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return affine_dim(pts, idx);
}

// iterate k-combinations of [0, m)
template <typename F>
inline void for_each_combination(size_t m, size_t k, F&& body) {
    if (k > m || k == 0) return;
    std::vector<size_t> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = i;
    for (;;) {
        body(c);
        size_t i = k;
        while (i > 0 && c[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

} // namespace detail

/// Exact convex hull by exhaustive facet search: every n-subset of points is
/// tested as a candidate facet hyperplane.  Ambient dimension <= 6.
inline Polytope convex_hull(const std::vector<IntVec>& points_in) {
    if (points_in.empty()) throw acv_error("convex_hull: empty point list");
    size_t n = points_in[0].size();
    if (n > kMaxAmbientDim)
        throw DimensionTooLarge("ambient dimension " + std::to_string(n));

    std::vector<IntVec> pts;
    {
        std::set<IntVec> seen;
        for (const auto& p : points_in)
            if (seen.insert(p).second) pts.push_back(p);
    }

    Polytope poly;
    poly.ambient_dim = n;
    poly.intrinsic_dim = detail::affine_dim(pts);

    std::vector<IntVec> verts;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<IntVec> others;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (others.empty() || !in_convex_hull(pts[i], others)) verts.push_back(pts[i]);
    }
    std::sort(verts.begin(), verts.end());
    poly.vertices = verts;

    if (poly.intrinsic_dim == static_cast<int>(n) && verts.size() >= n) {
        std::map<std::pair<IntVec, BigInt>, std::vector<size_t>> facet_map;
        detail::for_each_combination(verts.size(), n, [&](const std::vector<size_t>& c) {
            IntVec nor = detail::hyperplane_normal(verts, c);
            if (nor.empty()) return;
            BigInt off = dot(nor, verts[c[0]]);
            bool all_ge = true, all_le = true;
            for (const auto& v : verts) {
                BigInt s = dot(nor, v);
                if (s < off) all_ge = false;
                if (s > off) all_le = false;
                if (!all_ge && !all_le) return;
            }
            IntVec nn = nor;
            if (all_le && !all_ge)
                for (auto& x : nn) x = -x;
            nn = primitive(nn);
            BigInt oo = dot(nn, verts[c[0]]);
            if (facet_map.count({nn, oo})) return;
            std::vector<size_t> on;
            for (size_t i = 0; i < verts.size(); ++i)
                if (dot(nn, verts[i]) == oo) on.push_back(i);
            facet_map[{nn, oo}] = on;
        });
        for (auto& [key, on] : facet_map) {
            FaceDesc f;
            f.normal = key.first;
            f.offset = key.second;
            f.vertex_subset = on;
            f.dim = detail::affine_dim(poly.vertices, on);
            if (f.dim == static_cast<int>(n) - 1) poly.facets.push_back(f);
        }
    }
    return poly;
}

/// All faces of the given dimension of a full-dimensional polytope.  Faces
/// are intersections of facet subsets; the inner normal is the (primitive)
/// sum of the normals of all facets containing the face, so it supports the
/// polytope with its minimum attained exactly on the face.
inline std::vector<FaceDesc> faces(const Polytope& p, int dim) {
    if (p.intrinsic_dim != static_cast<int>(p.ambient_dim))
        throw acv_error("faces: polytope must be full-dimensional");
    if (dim < 0 || dim > p.intrinsic_dim) throw acv_error("faces: dim out of range");
    if (dim == p.intrinsic_dim) {
        FaceDesc whole;
        whole.normal = IntVec(p.ambient_dim, 0);
        whole.offset = 0;
        whole.dim = dim;
        for (size_t i = 0; i < p.vertices.size(); ++i) whole.vertex_subset.push_back(i);
        return {whole};
    }

    std::set<std::vector<size_t>> subsets;
    for (const auto& f : p.facets) subsets.insert(f.vertex_subset);
    for (;;) {
        std::set<std::vector<size_t>> next = subsets;
        for (const auto& a : subsets)
            for (const auto& f : p.facets) {
                std::vector<size_t> inter;
                std::set_intersection(a.begin(), a.end(), f.vertex_subset.begin(),
                                      f.vertex_subset.end(), std::back_inserter(inter));
                if (!inter.empty()) next.insert(inter);
            }
        if (next.size() == subsets.size()) break;
        subsets.swap(next);
    }

    std::vector<FaceDesc> out;
    for (const auto& vs : subsets) {
        int d = detail::affine_dim(p.vertices, vs);
        if (d != dim) continue;
        FaceDesc f;
        f.vertex_subset = vs;
        f.dim = d;
        IntVec nsum(p.ambient_dim, 0);
        for (const auto& fac : p.facets)
            if (std::includes(fac.vertex_subset.begin(), fac.vertex_subset.end(),
                              vs.begin(), vs.end()))
                nsum = nsum + fac.normal;
        f.normal = primitive(nsum);
        f.offset = dot(f.normal, p.vertices[vs[0]]);
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const FaceDesc& a, const FaceDesc& b) {
        return a.vertex_subset < b.vertex_subset;
    });
    return out;
}

/// Dual cone {a : <a, x> >= 0 for all x in c}.  Generators: the extreme rays
/// of the pointed part plus a signed lattice basis of the lineality space.
inline ConeRep dual_cone(const ConeRep& c) {
    if (c.generators.empty()) throw acv_error("dual_cone: no generators");
    size_t n = c.generators[0].size();
    size_t m = c.generators.size();
    if (m > 20) throw acv_error("dual_cone: too many generators");

    auto lin = orthogonal_lattice(c.generators); // lineality of the dual

    std::set<IntVec> rays;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        IntMat rows;
        for (size_t i = 0; i < m; ++i)
            if (mask & (1ul << i)) rows.push_back(c.generators[i]);
        if (rows.size() > n) continue;
        for (const auto& l : lin) rows.push_back(l);
        std::vector<IntVec> ker;
        if (rows.empty()) {
            if (n == 1) ker.push_back(IntVec{1});
        } else {
            ker = kernel_basis(rows);
        }
        if (ker.size() != 1) continue;
        for (int sign = 0; sign < 2; ++sign) {
            IntVec r = ker[0];
            if (sign)
                for (auto& x : r) x = -x;
            bool ok = true;
            for (const auto& g : c.generators)
                if (dot(r, g) < 0) { ok = false; break; }
            if (ok) rays.insert(primitive(r));
        }
    }

    ConeRep d;
    for (const auto& r : rays) d.generators.push_back(r);
    for (const auto& l : lin) {
        d.generators.push_back(l);
        IntVec neg(l.size());
        for (size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
        d.generators.push_back(neg);
    }
    if (!d.generators.empty()) {
        IntMat gm(d.generators.begin(), d.generators.end());
        size_t r = rank_of(gm);
        d.simplicial = (d.generators.size() == r);
        if (d.simplicial) {
            try {
                unimodular_complete(d.generators);
                d.unimodular = true;
            } catch (const NotExtendable&) {
                d.unimodular = false;
            }
        }
    }
    return d;
}

namespace detail {

// Triangulation of conv(pts) (full-dimensional in Z^d), returned as lists of
// indices into pts.  Fan from the first hull vertex over each facet not
// containing it; facets are triangulated recursively in their own saturated
// lattice coordinates.
inline std::vector<std::vector<size_t>> triangulate(const std::vector<IntVec>& pts) {
    int d = affine_dim(pts);
    if (d <= 0) return {};
    size_t n = pts[0].size();

    if (d < static_cast<int>(n)) {
        // re-embed in d coordinates of the saturated direction lattice
        IntMat diffs;
        for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
        SmithResult snf = smith_normal_form(diffs);
        IntMat vinv = invert_unimodular(snf.v);
        // diffs * V has nonzero entries only in the first d columns, i.e. the
        // coordinates of each difference in the basis given by the first d
        // rows of V^-1; compute coordinates by multiplying with V.
        std::vector<IntVec> proj;
        for (const auto& p : pts) {
            IntVec dif = p - pts[0];
            IntVec co = vec_mat(dif, snf.v);
            co.resize(d);
            proj.push_back(co);
        }
        return triangulate(proj);
    }

    Polytope h = convex_hull(pts);
    // map hull vertices back to indices in pts
    auto index_of = [&](const IntVec& v) -> size_t {
        for (size_t i = 0; i < pts.size(); ++i)
            if (pts[i] == v) return i;
        throw acv_error("triangulate: vertex lookup failed");
    };
    if (h.vertices.size() == static_cast<size_t>(d) + 1) {
        std::vector<size_t> s;
        for (const auto& v : h.vertices) s.push_back(index_of(v));
        return {s};
    }
    size_t apex = index_of(h.vertices[0]);
    std::vector<std::vector<size_t>> out;
    for (const auto& f : h.facets) {
        bool on = false;
        for (size_t i : f.vertex_subset)
            if (h.vertices[i] == pts[apex]) { on = true; break; }
        if (on) continue;
        std::vector<IntVec> fpts;
        std::vector<size_t> fidx;
        for (size_t i : f.vertex_subset) {
            fpts.push_back(h.vertices[i]);
            fidx.push_back(index_of(h.vertices[i]));
        }
        auto sub = triangulate(fpts);
        for (const auto& s : sub) {
            std::vector<size_t> simplex;
            for (size_t si : s) simplex.push_back(fidx[si]);
            simplex.push_back(apex);
            out.push_back(simplex);
        }
    }
    return out;
}

} // namespace detail

/// Normalized lattice volume of conv(points) in the lattice spanned by
/// lattice_basis (elementary lattice simplex = 1).  Exact.
inline BigInt lattice_volume(const std::vector<IntVec>& points,
                             const std::vector<IntVec>& lattice_basis) {
    if (points.empty() || lattice_basis.empty()) return 0;
    size_t d = lattice_basis.size();
    size_t n = points[0].size();

    RatMat bt(n, RatVec(d));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < d; ++j) bt[i][j] = Rat(lattice_basis[j][i]);
    std::vector<IntVec> coords;
    for (const auto& p : points) {
        RatVec rhs(n);
        for (size_t i = 0; i < n; ++i) rhs[i] = Rat(p[i]);
        auto sol = solve_rational(bt, rhs);
        if (!sol) throw PointsOffLattice("point outside lattice span");
        IntVec co(d);
        for (size_t j = 0; j < d; ++j) {
            if (denominator((*sol)[j]) != 1)
                throw PointsOffLattice("point not a lattice point");
            co[j] = numerator((*sol)[j]);
        }
        coords.push_back(std::move(co));
    }

    if (detail::affine_dim(coords) < static_cast<int>(d)) return 0;
    BigInt total = 0;
    for (const auto& s : detail::triangulate(coords)) {
        IntMat mtx;
        for (size_t i = 1; i < s.size(); ++i)
            mtx.push_back(coords[s[i]] - coords[s[0]]);
        total += boost::multiprecision::abs(det(mtx));
    }
    return total;
}

} // namespace acv

#endif
