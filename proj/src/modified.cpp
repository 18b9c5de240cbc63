#include "stratsig/modified.hpp"
#include "stratsig/dense.hpp"

#include <algorithm>

namespace stratsig {

namespace {

// A stratum chain: a T'-simplex inside X_d whose top member sits exactly at
// level d. Joined with middle cycles of the top member's link these span
// the difference between consecutive interpolation complexes.
struct StratumChain {
    std::vector<int32_t> pv; // K'-vertex ids, ascending
    SimplexId top;
};

std::vector<StratumChain> stratum_chains(const WEnvironment& env, int d, int t)
{
    std::vector<StratumChain> out;
    const SimplicialComplex& kp = env.prime();
    for (int64_t i = 0; i < kp.count(t); ++i) {
        auto verts = kp.verts(t, i);
        bool inside = true;
        for (int32_t pv : verts)
            if (env.vertex_level(pv) > d) {
                inside = false;
                break;
            }
        if (!inside)
            continue;
        if (env.vertex_level(verts.back()) != d)
            continue;
        StratumChain sc;
        sc.pv.assign(verts.begin(), verts.end());
        sc.top = env.bs().vertex_to_simplex[verts.back()];
        out.push_back(std::move(sc));
    }
    return out;
}

// cycle basis of W^m(link) at the middle degree, over the link wm basis
std::vector<SparseVec> link_middle_cycles(const LinkContext& lc)
{
    std::vector<SparseVec> out;
    int s = lc.middle;
    Reduction red = reduce_columns(lc.wm.gc.boundary(s), true);
    for (int64_t j = 0; j < lc.wm.gc.dim(s); ++j)
        if (red.column_is_zero(j))
            out.push_back(red.basis->col(j));
    return out;
}

// join a link chain (over link simplices = coface flags) under a stratum
// chain; result is an ambient chain of K'
SparseVec join_chain(const WEnvironment& env, const LinkContext& lc, const StratumChain& sc,
                     const SparseVec& link_ambient, int s)
{
    const SimplicialComplex& kp = env.prime();
    SparseVec out;
    VertexList chain;
    int deg = (int)sc.pv.size() + s;
    for (auto& [idx, c] : link_ambient.e) {
        chain.assign(sc.pv.begin(), sc.pv.end());
        for (int32_t lv : lc.link.complex.verts(s, idx)) {
            SimplexId cf = lc.link.vertex_to_coface[lv];
            chain.push_back((int32_t)env.bs().vertex_id(cf));
        }
        std::sort(chain.begin(), chain.end());
        auto target = kp.find(chain);
        if (!target || target->d != deg)
            throw FactorizationFailed("cone of a link cycle is not a simplex chain");
        out.push((int32_t)target->idx, c);
    }
    out.sort_fix();
    return out;
}

LinkContext& get_ctx(const Stratification& strat,
                     std::map<int64_t, std::unique_ptr<LinkContext>>& links, SimplexId sid)
{
    int64_t key = strat.linear(sid);
    auto it = links.find(key);
    if (it == links.end())
        it = links.emplace(key, make_link_context(strat, sid)).first;
    return *it->second;
}

// Transport the component assignments to every top simplex of the stratum
// (BFS over walls) and push them into wall/corner links by inclusion.
std::map<int64_t, std::vector<SparseVec>>
spread_lagrangians(const Stratification& strat, int d, const LagrangeAssignment& assign,
                   std::map<int64_t, std::unique_ptr<LinkContext>>& links)
{
    std::map<int64_t, std::vector<SparseVec>> h_lag_at;
    const auto& comps = strat.components(d);
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        auto ait = assign.by_component.find({d, (int)ci});
        if (ait == assign.by_component.end())
            throw MissingAssignment("stratum component without a Lagrangian assignment");
        const auto& comp = comps[ci];

        std::map<int64_t, size_t> pos;
        for (size_t t = 0; t < comp.tops.size(); ++t)
            pos[strat.linear(comp.tops[t])] = t;
        std::vector<std::vector<std::pair<size_t, SimplexId>>> adj(comp.tops.size());
        for (const auto& w : strat.walls(d)) {
            auto ia = pos.find(strat.linear(w.a));
            auto ib = pos.find(strat.linear(w.b));
            if (ia == pos.end() || ib == pos.end())
                continue;
            adj[ia->second].push_back({ib->second, w.face});
            adj[ib->second].push_back({ia->second, w.face});
        }
        size_t root = pos.at(strat.linear(comp.rep));
        std::vector<int> seen(comp.tops.size(), 0);
        std::vector<std::vector<SparseVec>> lag_at(comp.tops.size());
        lag_at[root] = ait->second;
        seen[root] = 1;
        std::vector<size_t> order = {root};
        for (size_t qi = 0; qi < order.size(); ++qi) {
            size_t u = order[qi];
            for (auto& [v, wallId] : adj[u]) {
                if (seen[v])
                    continue;
                Transport t = transport(strat, get_ctx(strat, links, comp.tops[u]),
                                        get_ctx(strat, links, comp.tops[v]), wallId);
                if (!t.iso)
                    throw IncompatibleAssignment("transport is not an isomorphism");
                for (auto& hv : lag_at[u])
                    lag_at[v].push_back(t.phi.apply(hv));
                seen[v] = 1;
                order.push_back(v);
            }
        }
        for (size_t t = 0; t < comp.tops.size(); ++t) {
            if (!seen[t])
                throw IncompatibleAssignment("stratum component not transport-connected");
            h_lag_at[strat.linear(comp.tops[t])] = lag_at[t];
        }

        // walls and lower stratum faces: include into the face's link from
        // the lex-smallest incident top simplex of this component
        for (int f = 0; f < d; ++f) {
            for (int64_t i = 0; i < strat.complex().count(f); ++i) {
                SimplexId fs{(int16_t)f, (int32_t)i};
                if (strat.skeleton_level(fs) != d)
                    continue;
                SimplexId owner{-1, -1};
                auto fsv = strat.complex().verts(fs);
                for (auto& tsimp : comp.tops) {
                    auto tv = strat.complex().verts(tsimp);
                    if (std::includes(tv.begin(), tv.end(), fsv.begin(), fsv.end())) {
                        owner = tsimp;
                        break;
                    }
                }
                if (!owner.valid())
                    continue;
                LinkContext& lo = get_ctx(strat, links, owner);
                LinkContext& lw = get_ctx(strat, links, fs);
                SparseMatrix inc = link_inclusion_on_middle(lo, lw);
                std::vector<SparseVec> img;
                for (auto& hv : h_lag_at[strat.linear(owner)])
                    img.push_back(inc.apply(hv));
                h_lag_at[strat.linear(fs)] = std::move(img);
            }
        }
    }
    return h_lag_at;
}

// one stage: enumerate the difference cones at a stratum, classify them by
// their middle-homology class, optionally collect the chains to add
UDecomposition stage_decompose(const WEnvironment& env, const Stratification& strat,
                               int stratum_dim, bool non_witt,
                               const std::map<int64_t, std::vector<SparseVec>>& h_lag_at,
                               std::map<int64_t, std::unique_ptr<LinkContext>>& links,
                               std::vector<std::vector<SparseVec>>* add_m,
                               std::vector<std::vector<SparseVec>>* add_n)
{
    int n = env.n();
    int d = stratum_dim;
    int codim = n - d;
    int s = (codim - 1) / 2;

    UDecomposition dec;
    dec.codim = codim;
    dec.stratum_dim = d;

    for (int j = s + 1; j <= n - s; ++j) {
        int t = j - s - 1;
        UDecomposition::DegreeInfo info;
        info.degree = j;
        for (const auto& sc : stratum_chains(env, d, t)) {
            LinkContext& lc = get_ctx(strat, links, sc.top);
            auto cycles = link_middle_cycles(lc);
            int64_t dimz = (int64_t)cycles.size();
            info.dim_u += dimz;
            if (dimz == 0)
                continue;

            int64_t hr = lc.h_m.rank(s);
            std::vector<std::vector<Rational>> cls(dimz);
            for (int64_t z = 0; z < dimz; ++z)
                cls[z] = lc.h_m.express(s, cycles[z]);

            std::vector<SparseVec> lag_basis;
            if (non_witt) {
                auto it = h_lag_at.find(strat.linear(sc.top));
                if (it == h_lag_at.end())
                    throw MissingAssignment("no Lagrangian transported to a stratum simplex");
                lag_basis = it->second;
            }
            int64_t rl = (int64_t)lag_basis.size();

            // complete the Lagrangian to a basis of the middle homology
            SparseMatrix base(hr, hr);
            int64_t have = 0;
            for (; have < rl; ++have)
                base.col(have) = lag_basis[have];
            for (int64_t u = 0; u < hr && have < hr; ++u) {
                SparseMatrix test(hr, have + 1);
                for (int64_t c = 0; c < have; ++c)
                    test.col(c) = base.col(c);
                SparseVec e;
                e.push((int32_t)u, Rational(1));
                test.col(have) = e;
                if (rank(test) == have + 1)
                    base.col(have++) = std::move(e);
            }
            if (have != hr)
                throw IncompatibleAssignment("assignment does not extend to a basis");
            DenseMatrix bd(hr, std::vector<Rational>(hr, Rational(0)));
            for (int64_t c = 0; c < hr; ++c)
                for (auto& [r, v] : base.col(c).e)
                    bd[r][c] = v;

            // perp coordinates of each cycle class; kernel = lag-or-null part
            SparseMatrix perp_of_z(hr - rl, dimz);
            SparseMatrix cls_of_z(hr, dimz);
            for (int64_t z = 0; z < dimz; ++z) {
                auto y = dense_solve(bd, cls[z]);
                if (!y)
                    throw FactorizationFailed("class expression failed");
                for (int64_t r = rl; r < hr; ++r)
                    perp_of_z.set(r - rl, z, (*y)[r]);
                for (int64_t r = 0; r < hr; ++r)
                    cls_of_z.set(r, z, cls[z][r]);
            }
            Reduction pred = reduce_columns(perp_of_z, true);
            int64_t dim_zero = dimz - rank(cls_of_z);
            int64_t dim_lagzero = dimz - pred.rank;
            info.dim_o += dim_zero;
            info.dim_lag += dim_lagzero - dim_zero;
            info.dim_perp += pred.rank;

            if (add_m && add_n) {
                for (int64_t z = 0; z < dimz; ++z) {
                    if (pred.column_is_zero(z)) {
                        // class stays inside the Lagrangian span (or is null)
                        SparseVec comb_w;
                        for (auto& [src, c] : pred.basis->col(z).e)
                            axpy(comb_w, c, cycles[src]);
                        SparseVec amb = lc.wm.to_ambient(s, comb_w);
                        SparseVec cone = join_chain(env, lc, sc, amb, s);
                        if (non_witt)
                            (*add_m)[j].push_back(cone);
                        (*add_n)[j].push_back(std::move(cone));
                    } else if (!non_witt) {
                        // Witt stratum: everything stays on the upper side
                        SparseVec amb = lc.wm.to_ambient(s, cycles[z]);
                        (*add_n)[j].push_back(join_chain(env, lc, sc, amb, s));
                    }
                }
            }
        }
        dec.degrees.push_back(info);
    }
    return dec;
}

} // namespace

UDecomposition decompose_U(const WEnvironment& env, const Stratification& strat, int stratum_dim,
                           const LagrangeAssignment& assign,
                           std::map<int64_t, std::unique_ptr<LinkContext>>& links)
{
    auto table = spread_lagrangians(strat, stratum_dim, assign, links);
    return stage_decompose(env, strat, stratum_dim, true, table, links, nullptr, nullptr);
}

ModifiedPair modified_chains(const WEnvironment& env, const Stratification& strat,
                             const WittReport& witt, const LagrangeAssignment& assign,
                             std::map<int64_t, std::unique_ptr<LinkContext>>& links)
{
    int n = env.n();
    ModifiedPair out;
    auto mp = Perversity::lower_middle(std::max(n, 2));
    auto np = Perversity::upper_middle(std::max(n, 2));
    out.wm = w_complex(env, mp);
    out.wn = w_complex(env, np);
    if (witt.witt()) {
        out.trivial = true;
        return out; // identity transformation on Witt inputs
    }
    out.trivial = false;

    std::vector<std::vector<SparseVec>> add_m(n + 1), add_n(n + 1);
    std::vector<const WittStratumVerdict*> strata;
    for (auto& sv : witt.strata)
        strata.push_back(&sv);
    std::sort(strata.begin(), strata.end(), [](auto* a, auto* b) { return a->codim > b->codim; });

    std::map<int64_t, std::vector<SparseVec>> empty;
    for (auto* sv : strata) {
        int d = sv->stratum_dim;
        if (sv->witt()) {
            stage_decompose(env, strat, d, false, empty, links, &add_m, &add_n);
            continue;
        }
        auto table = spread_lagrangians(strat, d, assign, links);
        out.stages.push_back(stage_decompose(env, strat, d, true, table, links, &add_m, &add_n));
    }

    auto build = [&](const WComplex& basew, const std::vector<std::vector<SparseVec>>& extra,
                     const char* side) {
        WComplex w;
        w.perversity_name = side;
        w.basis.resize(n + 1);
        w.pivot_to_basis.resize(n + 1);
        w.all_free.assign(n + 1, 0);
        for (int dg = 0; dg <= n; ++dg) {
            std::vector<SparseVec> vecs = basew.basis[dg];
            for (auto& v : extra[dg])
                vecs.push_back(v);
            std::sort(vecs.begin(), vecs.end(),
                      [](const SparseVec& a, const SparseVec& b) { return a.low() < b.low(); });
            std::vector<SparseVec> ech;
            for (auto& v : vecs) {
                SparseVec x = v;
                bool changed = true;
                while (changed && !x.empty()) {
                    changed = false;
                    for (auto& p : ech)
                        if (!x.empty() && !p.empty() && x.low() == p.low()) {
                            Rational f = -x.e.back().second / p.e.back().second;
                            axpy(x, f, p);
                            changed = true;
                        }
                }
                if (!x.empty())
                    ech.push_back(std::move(x));
            }
            std::sort(ech.begin(), ech.end(),
                      [](const SparseVec& a, const SparseVec& b) { return a.low() < b.low(); });
            w.basis[dg] = std::move(ech);
            for (size_t b = 0; b < w.basis[dg].size(); ++b)
                w.pivot_to_basis[dg].emplace(w.basis[dg][b].low(), (int64_t)b);
        }
        std::vector<int64_t> dims(n + 1);
        std::vector<SparseMatrix> bnd(n + 1);
        for (int dg = 0; dg <= n; ++dg)
            dims[dg] = (int64_t)w.basis[dg].size();
        bnd[0] = SparseMatrix(0, dims[0]);
        for (int dg = 1; dg <= n; ++dg) {
            SparseMatrix m(dims[dg - 1], dims[dg]);
            for (int64_t b = 0; b < dims[dg]; ++b) {
                SparseVec amb = env.ambient_boundary(dg).apply(w.basis[dg][b]);
                auto expr = w.express(dg - 1, amb);
                if (!expr)
                    throw IncompatibleAssignment(
                        "modified chains are not closed under the boundary");
                m.col(b) = *expr;
            }
            bnd[dg] = std::move(m);
        }
        w.gc = GradedComplex(n, std::move(dims), std::move(bnd));
        return w;
    };
    out.wm = build(out.wm, add_m, "m~");
    out.wn = build(out.wn, add_n, "n~");
    return out;
}

} // namespace stratsig
