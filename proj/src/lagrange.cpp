#include "stratsig/lagrange.hpp"
#include "stratsig/dense.hpp"

#include <functional>

namespace stratsig {

IntersectionForm intersection_form(const LinkContext& lc)
{
    IntersectionForm form;
    int ldim = lc.link.complex.dim();
    if (ldim % 2 != 0)
        throw DualityUnavailable("intersection form needs an even-dimensional link");
    form.s = ldim / 2;
    form.symmetry = (form.s % 2 == 0) ? 1 : -1;
    int s = form.s;

    if (!lc.link.orientation.orientable)
        throw DualityUnavailable("link is not orientable");

    // duality runs on the link's own subdivision; the form is pulled back to
    // the link-level homology basis through the subdivision operator
    WEnvironment env(lc.link.complex, lc.link.strat);
    auto mp = Perversity::lower_middle(std::max(ldim, 2));
    auto np = Perversity::upper_middle(std::max(ldim, 2));
    WComplex wmp = w_complex(env, mp);
    WComplex wnp = w_complex(env, np);

    DualityPackage pkg;
    try {
        pkg = duality_map(env, wmp, wnp, lc.link.orientation);
    } catch (const AcyclicityFailure& e) {
        throw DualityUnavailable(std::string("link duality obstructed: ") + e.what());
    }
    if (!pkg.qiso.all())
        throw DualityUnavailable("link duality map is not a quasi-isomorphism");

    HomologyBasis h_mp = homology(wmp.gc);
    int64_t m = lc.h_m.rank(s);
    if (h_mp.rank(s) != m)
        throw DualityUnavailable("subdivision changed the middle rank");

    // bridge S: classes of subdivided link-level representatives
    GradedComplex cl = simplicial_chains(lc.link.complex);
    GradedComplex clp = env.prime_chains();
    ChainMap sd = subdivision_operator(env, cl, clp);
    DenseMatrix S(m, std::vector<Rational>(m, Rational(0)));
    for (int64_t a = 0; a < m; ++a) {
        SparseVec amb = lc.wm.to_ambient(s, lc.h_m.reps[s][a]);
        SparseVec ambp = sd.comp[s].apply(amb);
        auto in_w = wmp.express(s, ambp);
        if (!in_w)
            throw DualityUnavailable("subdivided representative leaves the W complex");
        auto cls = h_mp.express(s, *in_w);
        for (int64_t q = 0; q < m; ++q)
            S[q][a] = cls[q];
    }

    // gram' on the subdivided basis: <P^{-1} [iota a'], b'>
    ChainMap iota = w_inclusion(wmp, wnp);
    SparseMatrix p_ind = induced_on_homology(pkg.pmap, s, pkg.h_dualm, pkg.h_wn);
    DenseMatrix p_dense = to_dense(p_ind);
    DenseMatrix gramp(m, std::vector<Rational>(m, Rational(0)));
    for (int64_t a = 0; a < m; ++a) {
        SparseVec img = iota.comp[s].apply(h_mp.reps[s][a]);
        auto cls = pkg.h_wn.express(s, img);
        auto x = dense_solve(p_dense, std::vector<Rational>(cls.begin(), cls.end()));
        if (!x)
            throw DualityUnavailable("link duality not invertible at the middle degree");
        SparseVec alpha; // cochain over wmp basis at degree s
        for (size_t i = 0; i < x->size(); ++i)
            if (sgn((*x)[i]) != 0)
                axpy(alpha, (*x)[i], pkg.h_dualm.reps[s][i]);
        for (int64_t b = 0; b < m; ++b)
            gramp[a][b] = dot(alpha, h_mp.reps[s][b]);
    }

    // gram = S^T gram' S on the link-level basis
    form.gram = SparseMatrix(m, m);
    for (int64_t a = 0; a < m; ++a)
        for (int64_t b = 0; b < m; ++b) {
            Rational v(0);
            for (int64_t p = 0; p < m; ++p)
                for (int64_t q = 0; q < m; ++q)
                    v += S[p][a] * gramp[p][q] * S[q][b];
            if (sgn(v) != 0)
                form.gram.set(a, b, v);
        }

    form.symmetry_ok = true;
    SparseMatrix gt = form.gram.transpose();
    for (int64_t j = 0; j < m; ++j) {
        SparseVec want = form.gram.col(j);
        want *= Rational(form.symmetry);
        if (!equal(gt.col(j), want))
            form.symmetry_ok = false;
    }
    form.nondegenerate = (rank(form.gram) == m);
    return form;
}

bool lagrangian_valid(const IntersectionForm& form, const std::vector<SparseVec>& basis)
{
    int64_t m = form.gram.cols();
    if (2 * (int64_t)basis.size() != m)
        return false;
    SparseMatrix b(m, (int64_t)basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        b.col((int64_t)j) = basis[j];
    if (rank(b) != (int64_t)basis.size())
        return false;
    for (auto& u : basis)
        for (auto& v : basis) {
            SparseVec gv = form.gram.apply(v);
            if (sgn(dot(u, gv)) != 0)
                return false;
        }
    return true;
}

namespace {

Rational pair_g(const SparseMatrix& g, const SparseVec& u, const SparseVec& v)
{
    SparseVec gv = g.apply(v);
    return dot(u, gv);
}

LagrangianResult darboux(const IntersectionForm& form)
{
    LagrangianResult res;
    int64_t m = form.gram.cols();
    std::vector<SparseVec> work;
    for (int64_t i = 0; i < m; ++i) {
        SparseVec e;
        e.push((int32_t)i, Rational(1));
        work.push_back(std::move(e));
    }
    std::vector<SparseVec> lag;
    while (!work.empty()) {
        SparseVec u = work.front();
        int64_t pj = -1;
        for (size_t j = 1; j < work.size(); ++j)
            if (sgn(pair_g(form.gram, u, work[j])) != 0) {
                pj = (int64_t)j;
                break;
            }
        if (pj < 0)
            return {false, {}, "degenerate block in skew form"};
        SparseVec v = work[pj];
        Rational w = pair_g(form.gram, u, v);
        std::vector<SparseVec> rest;
        for (size_t j = 1; j < work.size(); ++j) {
            if ((int64_t)j == pj)
                continue;
            SparseVec x = work[j];
            axpy(x, -pair_g(form.gram, x, v) / w, u);
            axpy(x, pair_g(form.gram, x, u) / w, v);
            rest.push_back(std::move(x));
        }
        lag.push_back(std::move(u));
        work = std::move(rest);
    }
    res.found = true;
    res.basis = std::move(lag);
    return res;
}

std::optional<SparseVec> find_isotropic(const SparseMatrix& g,
                                        const std::vector<SparseVec>& work, long bound)
{
    for (auto& u : work)
        if (sgn(pair_g(g, u, u)) == 0)
            return u;
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = i + 1; j < work.size(); ++j) {
            Rational a = pair_g(g, work[j], work[j]);
            Rational b = pair_g(g, work[i], work[j]);
            Rational c = pair_g(g, work[i], work[i]);
            Rational disc = b * b - a * c; // a t^2 + 2 b t + c
            if (sgn(disc) < 0)
                continue;
            mpz_class rn, rd;
            if (mpz_perfect_square_p(disc.get_num().get_mpz_t()) &&
                mpz_perfect_square_p(disc.get_den().get_mpz_t())) {
                mpz_sqrt(rn.get_mpz_t(), disc.get_num().get_mpz_t());
                mpz_sqrt(rd.get_mpz_t(), disc.get_den().get_mpz_t());
                Rational root(rn, rd);
                Rational t = (-b + root) / a;
                SparseVec v = work[i];
                axpy(v, t, work[j]);
                if (!v.empty())
                    return v;
            }
        }
    long h = std::min<long>(bound, 8);
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = i + 1; j < work.size(); ++j)
            for (size_t k2 = j + 1; k2 < work.size(); ++k2)
                for (long x = -h; x <= h; ++x)
                    for (long y = -h; y <= h; ++y) {
                        SparseVec v = work[i];
                        axpy(v, Rational(x), work[j]);
                        axpy(v, Rational(y), work[k2]);
                        if (!v.empty() && sgn(pair_g(g, v, v)) == 0)
                            return v;
                    }
    return std::nullopt;
}

LagrangianResult hyperbolic_peel(const IntersectionForm& form, long bound)
{
    Inertia in = symmetric_inertia(to_dense(form.gram));
    if (in.zero != 0)
        return {false, {}, "form is degenerate"};
    if (in.pos != in.neg)
        return {false, {}, "signature != 0"};

    int64_t m = form.gram.cols();
    std::vector<SparseVec> work;
    for (int64_t i = 0; i < m; ++i) {
        SparseVec e;
        e.push((int32_t)i, Rational(1));
        work.push_back(std::move(e));
    }
    std::vector<SparseVec> lag;
    while (!work.empty()) {
        auto iso = find_isotropic(form.gram, work, bound);
        if (!iso)
            return {false, {}, "search exhausted"};
        SparseVec v = *iso;
        int64_t pj = -1;
        for (size_t j = 0; j < work.size(); ++j)
            if (sgn(pair_g(form.gram, v, work[j])) != 0) {
                pj = (int64_t)j;
                break;
            }
        if (pj < 0)
            return {false, {}, "degenerate block in symmetric form"};
        SparseVec w = work[pj];
        Rational gvw = pair_g(form.gram, v, w);
        axpy(w, -pair_g(form.gram, w, w) / (2 * gvw), v);
        gvw = pair_g(form.gram, v, w);
        std::vector<SparseVec> rest;
        for (auto& x0 : work) {
            SparseVec x = x0;
            axpy(x, -pair_g(form.gram, x, w) / gvw, v);
            axpy(x, -pair_g(form.gram, x, v) / gvw, w);
            if (!x.empty())
                rest.push_back(std::move(x));
        }
        std::vector<SparseVec> indep, reduced;
        for (auto& x : rest) {
            SparseVec r = x;
            bool changed = true;
            while (changed && !r.empty()) {
                changed = false;
                for (auto& p : reduced)
                    if (!r.empty() && !p.empty() && r.low() == p.low()) {
                        Rational f = -r.e.back().second / p.e.back().second;
                        axpy(r, f, p);
                        changed = true;
                    }
            }
            if (!r.empty()) {
                reduced.push_back(r);
                indep.push_back(x);
            }
        }
        lag.push_back(std::move(v));
        work = std::move(indep);
        if ((int64_t)work.size() != m - 2 * (int64_t)lag.size())
            return {false, {}, "peeling lost rank"};
    }
    LagrangianResult res;
    res.found = true;
    res.basis = std::move(lag);
    return res;
}

} // namespace

LagrangianResult find_lagrangian(const IntersectionForm& form, long height_bound)
{
    if (!form.nondegenerate)
        return {false, {}, "form is degenerate"};
    if (form.gram.cols() == 0)
        return {true, {}, ""};
    if (form.gram.cols() % 2 != 0)
        return {false, {}, "odd rank"};
    LagrangianResult res =
        form.symmetry < 0 ? darboux(form) : hyperbolic_peel(form, height_bound);
    if (res.found && !lagrangian_valid(form, res.basis))
        throw std::runtime_error("internal: produced basis is not Lagrangian");
    return res;
}

SparseMatrix link_inclusion_on_middle(const LinkContext& small, const LinkContext& big)
{
    int s = small.middle;
    std::unordered_map<int64_t, int32_t> big_pos;
    for (size_t i = 0; i < big.link.vertex_to_coface.size(); ++i) {
        SimplexId c = big.link.vertex_to_coface[i];
        big_pos[((int64_t)c.d << 32) | (uint32_t)c.idx] = (int32_t)i;
    }
    auto map_vertex = [&](int32_t v) -> int32_t {
        SimplexId c = small.link.vertex_to_coface[v];
        auto it = big_pos.find(((int64_t)c.d << 32) | (uint32_t)c.idx);
        if (it == big_pos.end())
            throw TransportNotIso();
        return it->second;
    };
    // small link simplices (flags) map to big link simplices by renaming
    auto map_simplex = [&](int d, int64_t idx) -> int64_t {
        VertexList img;
        for (int32_t lv : small.link.complex.verts(d, idx))
            img.push_back(map_vertex(lv));
        std::sort(img.begin(), img.end());
        auto t = big.link.complex.find(img);
        if (!t || t->d != d)
            throw TransportNotIso();
        return t->idx;
    };

    int64_t rs = small.h_m.rank(s);
    SparseMatrix out(big.h_m.rank(s), rs);
    for (int64_t a = 0; a < rs; ++a) {
        SparseVec amb;
        SparseVec small_amb = small.wm.to_ambient(s, small.h_m.reps[s][a]);
        for (auto& [i, c] : small_amb.e)
            amb.push((int32_t)map_simplex(s, i), c);
        amb.sort_fix();
        auto in_big = big.wm.express(s, amb);
        if (!in_big)
            throw TransportNotIso();
        auto cls = big.h_m.express(s, *in_big);
        for (size_t q = 0; q < cls.size(); ++q)
            out.set((int64_t)q, a, cls[q]);
    }
    return out;
}

Transport transport(const Stratification& strat, const LinkContext& la, const LinkContext& lb,
                    SimplexId wall)
{
    auto lw = make_link_context(strat, wall);
    SparseMatrix ia = link_inclusion_on_middle(la, *lw);
    SparseMatrix ib = link_inclusion_on_middle(lb, *lw);
    int s = la.middle;
    Transport t;
    int64_t r = la.h_m.rank(s);
    if (lb.h_m.rank(s) != r || ia.rows() != ib.rows() || rank(ia) != r || rank(ib) != r) {
        t.iso = false;
        return t;
    }
    DenseMatrix bd = to_dense(ib);
    t.phi = SparseMatrix(r, r);
    for (int64_t j = 0; j < r; ++j) {
        std::vector<Rational> rhs(ia.rows(), Rational(0));
        for (auto& [row, c] : ia.col(j).e)
            rhs[row] = c;
        auto x = dense_solve(bd, rhs);
        if (!x) {
            t.iso = false;
            return t;
        }
        for (size_t i = 0; i < x->size(); ++i)
            if (sgn((*x)[i]) != 0)
                t.phi.set((int64_t)i, j, (*x)[i]);
    }
    t.iso = (rank(t.phi) == r);
    return t;
}

namespace {

bool subspace_preserved(const SparseMatrix& phi, const std::vector<SparseVec>& h_lag)
{
    int64_t m = phi.rows();
    SparseMatrix base(m, (int64_t)h_lag.size());
    for (size_t j = 0; j < h_lag.size(); ++j)
        base.col((int64_t)j) = h_lag[j];
    Reduction red = reduce_columns(base, false);
    for (auto& v : h_lag) {
        SparseVec img = phi.apply(v);
        if (!red.reduce_vector(img).empty())
            return false;
    }
    return true;
}

} // namespace

CompatibilityVerdict check_compatibility(const Stratification& strat,
                                         const LagrangeAssignment& assign, int stratum_dim,
                                         std::map<int64_t, std::unique_ptr<LinkContext>>& links)
{
    CompatibilityVerdict verdict;
    int d = stratum_dim;
    const auto& comps = strat.components(d);
    auto ctx = [&](SimplexId s) -> LinkContext& {
        int64_t key = strat.linear(s);
        auto it = links.find(key);
        if (it == links.end())
            it = links.emplace(key, make_link_context(strat, s)).first;
        return *it->second;
    };

    for (size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        auto ait = assign.by_component.find({d, (int)ci});
        if (ait == assign.by_component.end()) {
            verdict.issues.push_back("missing assignment for a stratum component");
            continue;
        }
        const auto& h_lag = ait->second;
        if (comp.tops.size() == 1)
            continue; // no loops: vacuously compatible

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
        int64_t rk = (int64_t)ctx(comp.rep).h_m.rank(ctx(comp.rep).middle);
        std::vector<std::optional<SparseMatrix>> to_node(comp.tops.size());
        std::vector<int> seen(comp.tops.size(), 0);
        to_node[root] = SparseMatrix::identity(rk);
        seen[root] = 1;
        std::vector<size_t> order = {root};
        std::vector<std::tuple<size_t, size_t, SimplexId>> extra_edges;
        for (size_t qi = 0; qi < order.size(); ++qi) {
            size_t u = order[qi];
            for (auto& [v, wallId] : adj[u]) {
                if (seen[v]) {
                    if (u < v)
                        extra_edges.push_back({u, v, wallId});
                    continue;
                }
                try {
                    Transport t = transport(strat, ctx(comp.tops[u]), ctx(comp.tops[v]), wallId);
                    if (!t.iso) {
                        verdict.issues.push_back("transport across a wall is not an iso");
                        continue;
                    }
                    to_node[v] = t.phi.mul(*to_node[u]);
                } catch (const TransportNotIso&) {
                    verdict.issues.push_back("transport across a wall failed");
                    continue;
                }
                seen[v] = 1;
                order.push_back(v);
            }
        }
        for (auto& [u, v, wallId] : extra_edges) {
            if (!to_node[u] || !to_node[v])
                continue;
            CompatibilityVerdict::Loop loop;
            loop.stratum_dim = d;
            loop.walls = {wallId};
            try {
                Transport t = transport(strat, ctx(comp.tops[u]), ctx(comp.tops[v]), wallId);
                if (!t.iso)
                    throw TransportNotIso();
                DenseMatrix inv_target = to_dense(*to_node[v]);
                SparseMatrix comp_map = t.phi.mul(*to_node[u]);
                SparseMatrix psi(rk, rk); // to_node[v]^{-1} * t.phi * to_node[u]
                for (int64_t j = 0; j < rk; ++j) {
                    std::vector<Rational> rhs(rk, Rational(0));
                    for (auto& [r, c] : comp_map.col(j).e)
                        rhs[r] = c;
                    auto x = dense_solve(inv_target, rhs);
                    if (!x)
                        throw TransportNotIso();
                    for (size_t i = 0; i < x->size(); ++i)
                        if (sgn((*x)[i]) != 0)
                            psi.set((int64_t)i, j, (*x)[i]);
                }
                loop.preserved = subspace_preserved(psi, h_lag);
            } catch (const TransportNotIso&) {
                verdict.issues.push_back("loop transport failed");
                loop.preserved = false;
            }
            verdict.loops.push_back(std::move(loop));
        }
    }
    return verdict;
}

LagrangeAssignment auto_lagrangian(const Stratification& strat, const WittReport& witt,
                                   long height_bound)
{
    LagrangeAssignment out;
    for (const auto& sv : witt.strata) {
        if (sv.witt())
            continue;
        const auto& comps = strat.components(sv.stratum_dim);
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            auto lc = make_link_context(strat, comps[ci].rep);
            if (lc->h_m.rank(lc->middle) == 0)
                continue;
            auto form = intersection_form(*lc);
            auto res = find_lagrangian(form, height_bound);
            if (!res.found)
                throw std::runtime_error("automatic Lagrangian search failed: " + res.reason);
            out.by_component[{sv.stratum_dim, (int)ci}] = res.basis;
        }
    }
    return out;
}

} // namespace stratsig
