#include "doctest.h"
#include "helpers.hpp"
#include "stratsig/wcomplex.hpp"

using namespace stratsig;
using namespace test_helpers;

namespace {

// suspension of the 7-vertex torus with its two cone points marked
struct SigmaTorus {
    SimplicialComplex k;
    Stratification strat;
    SigmaTorus() : k(suspension(torus7(), 7, 8))
    {
        strat = Stratification::build(k, {{{7}, {8}}});
    }
};

std::vector<int64_t> ih_ranks(const WEnvironment& env, const Perversity& p)
{
    auto w = w_complex(env, p);
    w.gc.verify_dd();
    return homology_ranks(w.gc);
}

} // namespace

TEST_CASE("middle perversities and interpolation")
{
    auto [m, n] = middle_perversities(5);
    CHECK(m(2) == 0);
    CHECK(n(2) == 0);
    CHECK(m(3) == 0);
    CHECK(n(3) == 1);
    CHECK(m(5) == 1);
    CHECK(n(5) == 2);
    // complementary: m + n = t
    auto t = Perversity::top(5);
    for (int k = 2; k <= 5; ++k)
        CHECK(m(k) + n(k) == t(k));
    CHECK(m <= n);

    // endpoints of the interpolation family
    auto p3 = interpolated_perversity(3, 3);
    CHECK(p3(2) == 0);
    CHECK(p3(3) == 0); // = m
    auto p1 = interpolated_perversity(1, 3);
    CHECK(p1(3) == 1); // = n
    auto p5 = interpolated_perversity(3, 5);
    CHECK(p5(3) == 0);
    CHECK(p5(5) == 2);
    CHECK_THROWS_AS(interpolated_perversity(2, 5), InvalidSeam);
}

TEST_CASE("stratification validation and components")
{
    SigmaTorus st;
    CHECK(st.strat.validation().ok());
    CHECK(st.strat.stratum_codims() == std::vector<int>{3});
    REQUIRE(st.strat.components(0).size() == 2);
    CHECK(st.strat.components(0)[0].tops.size() == 1);

    // trivial stratification has no singular codims
    auto sphere = boundary_delta(3);
    auto triv = Stratification::trivial(sphere);
    CHECK(triv.singular_codims().empty());
}

TEST_CASE("allowability on the suspended torus")
{
    SigmaTorus st;
    WEnvironment env(st.k, st.strat);
    auto [m, n] = middle_perversities(3);

    // a 2-simplex of T' touching a cone point is not (m,2)-allowable but is
    // (n,2)-allowable at the point
    const auto& kp = env.prime();
    bool found_pole_triangle = false;
    for (int64_t i = 0; i < kp.count(2) && !found_pole_triangle; ++i) {
        int md = env.meet_dim(2, i, 0);
        if (md == 0) {
            found_pole_triangle = true;
            CHECK_FALSE(env.allowable(m, 2, i));
            CHECK(env.allowable(n, 2, i));
        }
    }
    CHECK(found_pole_triangle);

    // manifold input: everything allowable for every perversity
    auto sphere = boundary_delta(3);
    auto triv = Stratification::trivial(sphere);
    WEnvironment es(sphere, triv);
    for (int d = 0; d <= 2; ++d) {
        const auto& fl = es.allowable_flags(Perversity::zero(2), d);
        for (char c : fl)
            CHECK(c == 1);
    }
}

TEST_CASE("W complex of a manifold is the full chain complex of K'")
{
    auto sphere = boundary_delta(3);
    auto triv = Stratification::trivial(sphere);
    WEnvironment env(sphere, triv);
    for (auto p : {Perversity::zero(2), Perversity::top(2), Perversity::lower_middle(2)}) {
        auto w = w_complex(env, p);
        for (int d = 0; d <= 2; ++d) {
            CHECK(w.all_free[d] == 1);
            CHECK(w.gc.dim(d) == env.prime().count(d));
        }
        CHECK(homology_ranks(w.gc) == std::vector<int64_t>{1, 0, 1});
    }
}

TEST_CASE("IH of the suspended torus: the paper's basic non-Witt example")
{
    SigmaTorus st;
    WEnvironment env(st.k, st.strat);
    auto [m, n] = middle_perversities(3);

    CHECK(ih_ranks(env, m) == std::vector<int64_t>{1, 2, 0, 1});
    CHECK(ih_ranks(env, n) == std::vector<int64_t>{1, 0, 2, 1});

    // monotone inclusion of subspaces
    auto wm = w_complex(env, m);
    auto wn = w_complex(env, n);
    CHECK(w_subspace_of(wm, wn));

    // 0 and t for completeness: suspension formulas
    CHECK(ih_ranks(env, Perversity::zero(3)) == std::vector<int64_t>{1, 2, 0, 1});
    CHECK(ih_ranks(env, Perversity::top(3)) == std::vector<int64_t>{1, 0, 2, 1});
}

TEST_CASE("cone formula oracle against computed IH of cones")
{
    // C(T^2): apex stratum {9}; Z = T^2 has trivial stratification
    auto t = torus7();
    auto ct = cone(t, 9);
    auto strat = Stratification::build(ct, {{{9}}});
    REQUIRE(strat.validation().ok());
    WEnvironment env(ct, strat);

    auto ih_t2 = std::vector<int64_t>{1, 2, 1};
    for (auto p : {Perversity::zero(3), Perversity::lower_middle(3),
                   Perversity::upper_middle(3), Perversity::top(3)}) {
        auto expect = cone_formula_expected(ih_t2, 2, p);
        auto got = ih_ranks(env, p);
        CHECK(got == expect);
    }
    // explicit values from the formula
    CHECK(ih_ranks(env, Perversity::lower_middle(3)) == std::vector<int64_t>{1, 2, 0, 0});
    CHECK(ih_ranks(env, Perversity::upper_middle(3)) == std::vector<int64_t>{1, 0, 0, 0});

    // C(S^2) is a ball for both perversities
    auto cs = cone(boundary_delta(3), 9);
    auto strat2 = Stratification::build(cs, {{{9}}});
    WEnvironment env2(cs, strat2);
    CHECK(ih_ranks(env2, Perversity::lower_middle(3)) == std::vector<int64_t>{1, 0, 0, 0});
    CHECK(ih_ranks(env2, Perversity::upper_middle(3)) == std::vector<int64_t>{1, 0, 0, 0});
}

TEST_CASE("cone over the suspended torus (iterated strata, dim 4)")
{
    SigmaTorus st;
    auto c = cone(st.k, 20);
    // filtration: X_1 = cone over the poles, X_0 = apex
    auto strat = Stratification::build(c, {{{20}}, {{7, 20}, {8, 20}}});
    REQUIRE(strat.validation().ok());
    WEnvironment env(c, strat);
    auto [m4, n4] = middle_perversities(4);

    auto ih_sig_m = std::vector<int64_t>{1, 2, 0, 1};
    auto expect = cone_formula_expected(ih_sig_m, 3, m4); // cutoff i < 3 - m(4) = 2
    CHECK(expect == std::vector<int64_t>{1, 2, 0, 0, 0});
    CHECK(ih_ranks(env, m4) == expect);
}

TEST_CASE("subdivision preserves homology and the operators verify")
{
    for (auto kk : {boundary_delta(3), torus7()}) {
        auto triv = Stratification::trivial(kk);
        WEnvironment env(kk, triv);
        auto ck = simplicial_chains(kk);
        auto ckp = env.prime_chains();
        CHECK(homology_ranks(ck) == homology_ranks(ckp));

        auto sd = subdivision_operator(env, ck, ckp);
        CHECK(verify_chain_map(sd));
        auto lv = last_vertex_operator(env, ckp, ck);
        CHECK(verify_chain_map(lv));

        // both are quasi-isomorphisms
        auto hk = homology(ck);
        auto hkp = homology(ckp);
        CHECK(verify_quasi_iso(sd, hk, hkp).all());
        CHECK(verify_quasi_iso(lv, hkp, hk).all());

        // seeds for scale mode: sd-pushed representatives work
        std::vector<std::vector<SparseVec>> seeds(kk.dim() + 1);
        for (int d = 0; d <= kk.dim(); ++d)
            for (auto& z : hk.reps[d])
                seeds[d].push_back(sd.comp[d].apply(z));
        auto seeded = homology_with_seeds(ckp, seeds);
        CHECK(seeded.ranks == hkp.ranks);
    }
}

TEST_CASE("restricted W complexes: closed star inside the sphere")
{
    auto sphere = boundary_delta(3);
    auto triv = Stratification::trivial(sphere);
    WEnvironment env(sphere, triv);
    auto w = w_complex(env, Perversity::zero(2));

    const auto& kp = env.prime();
    std::vector<std::vector<char>> keep(3);
    // kept: chains inside the closed facet {1,2,3}
    VertexList target = {1, 2, 3};
    auto inside = [&](int32_t pv) {
        SimplexId s = env.bs().vertex_to_simplex[pv];
        auto v = sphere.verts(s);
        return std::includes(target.begin(), target.end(), v.begin(), v.end());
    };
    for (int d = 0; d <= 2; ++d) {
        keep[d].resize(kp.count(d));
        for (int64_t i = 0; i < kp.count(d); ++i) {
            bool all = true;
            for (int32_t pv : kp.verts(d, i))
                if (!inside(pv))
                    all = false;
            keep[d][i] = all;
        }
    }
    auto r = restrict_w(env, w, keep);
    r.gc.verify_dd();
    // a closed triangle is acyclic
    CHECK(homology_ranks(r.gc) == std::vector<int64_t>{1, 0, 0});
}
