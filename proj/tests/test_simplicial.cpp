#include "doctest.h"
#include "helpers.hpp"
#include "stratsig/simplicial.hpp"

using namespace stratsig;
using namespace test_helpers;

TEST_CASE("closure and counts of the boundary of the 3-simplex")
{
    auto k = boundary_delta(3);
    CHECK(k.dim() == 2);
    CHECK(k.count(0) == 4);
    CHECK(k.count(1) == 6);
    CHECK(k.count(2) == 4);
    CHECK(k.euler() == 2);
    CHECK(k.facets().size() == 4);
}

TEST_CASE("pseudomanifold validation verdicts")
{
    auto sphere = boundary_delta(3);
    auto rep = validate_pseudomanifold(sphere);
    CHECK(rep.pure);
    CHECK(rep.non_branching);
    CHECK(rep.strongly_connected);
    CHECK(rep.ok());

    // two triangles sharing one vertex: pure, but not facet-connected
    auto pinch = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3, 4}});
    auto rep2 = validate_pseudomanifold(pinch);
    CHECK(rep2.pure);
    CHECK_FALSE(rep2.strongly_connected);

    // three triangles around one edge: branching
    auto branch = SimplicialComplex::from_facets({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    auto rep3 = validate_pseudomanifold(branch);
    CHECK_FALSE(rep3.non_branching);
    REQUIRE(rep3.branching_faces.size() == 1);
    CHECK(rep3.branching_faces[0] == VertexList{0, 1});

    // disjoint spheres: connected per component
    auto two = SimplicialComplex::disjoint_union(sphere, sphere, 100);
    CHECK(validate_pseudomanifold(two).ok());
}

TEST_CASE("orientation: spheres orient, RP2 does not")
{
    auto sphere = boundary_delta(3);
    auto o = fundamental_cycle(sphere);
    REQUIRE(o.orientable);
    // the signed top chain is a cycle
    auto z = fundamental_chain(sphere, o);
    CHECK(sphere.boundary_matrix(2).apply(z).empty());

    auto rp2 = rp2_6();
    CHECK(validate_pseudomanifold(rp2).ok());
    auto o2 = fundamental_cycle(rp2);
    CHECK_FALSE(o2.orientable);

    // brute-force oracle: no sign assignment on the 10 facets makes a cycle
    auto bnd = rp2.boundary_matrix(2);
    int64_t nf = rp2.count(2);
    bool any = false;
    for (uint32_t mask = 0; mask < (1u << nf); ++mask) {
        SparseVec z2;
        for (int64_t j = 0; j < nf; ++j)
            z2.push((int32_t)j, Rational((mask >> j) & 1 ? 1 : -1));
        z2.sort_fix();
        if (bnd.apply(z2).empty()) {
            any = true;
            break;
        }
    }
    CHECK_FALSE(any);

    // disjoint union of two spheres: both components signed
    auto two = SimplicialComplex::disjoint_union(sphere, sphere, 100);
    auto o3 = fundamental_cycle(two);
    REQUIRE(o3.orientable);
    CHECK(o3.sign.size() == 8);
    CHECK(two.boundary_matrix(2).apply(fundamental_chain(two, o3)).empty());
}

TEST_CASE("star and link")
{
    auto sphere = boundary_delta(3);
    int32_t v[1] = {0};
    auto lk = sphere.link(std::span<const int32_t>(v, 1));
    // link of a vertex in the 2-sphere boundary: a 3-cycle
    CHECK(lk.dim() == 1);
    CHECK(lk.count(0) == 3);
    CHECK(lk.count(1) == 3);

    int32_t e[2] = {0, 1};
    auto lke = sphere.link(std::span<const int32_t>(e, 2));
    CHECK(lke.dim() == 0);
    CHECK(lke.count(0) == 2);

    // link of the apex of a cone recovers the base
    auto base = boundary_delta(2);
    auto c = cone(base, 99);
    int32_t a[1] = {99};
    auto lka = c.link(std::span<const int32_t>(a, 1));
    CHECK(lka.dim() == base.dim());
    CHECK(lka.count(0) == base.count(0));
    CHECK(lka.count(1) == base.count(1));
}

TEST_CASE("cone examples")
{
    auto two_pts = SimplicialComplex::from_facets({{0}, {1}});
    auto path = cone(two_pts, 5);
    CHECK(path.dim() == 1);
    CHECK(path.count(1) == 2);

    auto disk = cone(boundary_delta(2), 9);
    CHECK(disk.count(0) == 4);
    CHECK(disk.euler() == 1);

    auto ct = cone(torus7(), 50);
    CHECK(ct.dim() == 3);
    CHECK(ct.count(0) == 8);
    CHECK(ct.euler() == 1);
}

TEST_CASE("barycentric subdivision counts on the 2-sphere and the interval")
{
    auto seg = SimplicialComplex::from_facets({{0, 1}});
    auto bs = barycentric_subdivision(seg);
    CHECK(bs.prime.count(0) == 3);
    CHECK(bs.prime.count(1) == 2);

    auto tri = SimplicialComplex::from_facets({{0, 1, 2}});
    auto bt = barycentric_subdivision(tri);
    CHECK(bt.prime.count(2) == 6);

    auto sphere = boundary_delta(3);
    auto bsp = barycentric_subdivision(sphere);
    // direct enumeration oracle: f_j(K') = sum_i f_i(K) * chains
    CHECK(bsp.prime.count(0) == 14);
    CHECK(bsp.prime.count(1) == 36);
    CHECK(bsp.prime.count(2) == 24);
    // root map sanity: vertices map back to simplices by (dim, idx)
    for (int d = 0; d <= 2; ++d)
        for (int64_t i = 0; i < sphere.count(d); ++i)
            CHECK(bsp.vertex_to_simplex[bsp.vertex_id({(int16_t)d, (int32_t)i})] ==
                  SimplexId{(int16_t)d, (int32_t)i});
}

TEST_CASE("standard subdivision: interval, triangle, mesh halving")
{
    auto seg = SimplicialComplex::from_facets({{0, 1}});
    seg.assign_canonical_coords();
    auto s = standard_subdivision(seg);
    CHECK(s.sub.count(0) == 3);
    CHECK(s.sub.count(1) == 2);

    auto tri = SimplicialComplex::from_facets({{0, 1, 2}});
    auto st = standard_subdivision(tri);
    CHECK(st.sub.count(2) == 4); // chains in the interval poset
    CHECK(st.sub.count(0) == 6);
    CHECK(st.sub.count(1) == 9);

    // with coordinates the mesh contracts geometrically: every new edge is
    // at most (sqrt(3)/2) of the longest old edge (squared: 3/4), and the
    // longest edge strictly decreases level over level. Exact halving holds
    // only in dimension one (the interval case above).
    auto sphere = boundary_delta(3);
    sphere.assign_canonical_coords();
    auto mesh2 = [](const SimplicialComplex& k) {
        Rational m(0);
        for (int64_t i = 0; i < k.count(1); ++i) {
            auto e = k.verts(1, i);
            Rational d = k.dist2(e[0], e[1]);
            if (d > m)
                m = d;
        }
        return m;
    };
    auto ss = standard_subdivision(sphere);
    Rational m0 = mesh2(sphere), m1 = mesh2(ss.sub);
    CHECK(m1 <= m0 * 3 / 4);

    // idempotent composition: Sub^2 exists, keeps contracting
    auto ss2 = standard_subdivision(ss.sub);
    CHECK(ss2.sub.count(2) == 16 * sphere.count(2));
    CHECK(mesh2(ss2.sub) < m1);
}

TEST_CASE("staircase product of two intervals and tori")
{
    auto seg = SimplicialComplex::from_facets({{0, 1}});
    auto sq = staircase_product(seg, seg);
    CHECK(sq.prod.dim() == 2);
    CHECK(sq.prod.count(2) == 2);
    CHECK(sq.prod.count(0) == 4);

    auto t = torus7();
    auto t4 = staircase_product(t, t);
    CHECK(t4.prod.dim() == 4);
    CHECK(t4.prod.count(0) == 49);
    CHECK(t4.prod.count(4) == 14 * 14 * 6);
    CHECK(t4.prod.euler() == 0);
}

TEST_CASE("ascending link of a cone apex is the subdivided base")
{
    auto base = torus7();
    auto c = cone(base, 50);
    int32_t a[1] = {50};
    auto asc = ascending_link(c, std::span<const int32_t>(a, 1));
    auto bt = barycentric_subdivision(base);
    CHECK(asc.complex.dim() == 2);
    CHECK(asc.complex.count(0) == bt.prime.count(0));
    CHECK(asc.complex.count(1) == bt.prime.count(1));
    CHECK(asc.complex.count(2) == bt.prime.count(2));
}

TEST_CASE("relabeling preserves structure")
{
    auto t = torus7();
    std::unordered_map<int32_t, int32_t> perm;
    for (int32_t v : t.vertex_ids())
        perm[v] = 100 - v * 3;
    auto r = t.relabeled(perm);
    CHECK(r.count(0) == t.count(0));
    CHECK(r.count(1) == t.count(1));
    CHECK(r.count(2) == t.count(2));
    CHECK(validate_pseudomanifold(r).ok());
}
