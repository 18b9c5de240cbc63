#include "stratsig/wcomplex.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace stratsig {

PrimeLevel::PrimeLevel(const SimplicialComplex& prime, std::vector<int> vertex_levels, int n,
                       std::vector<int> codims)
    : prime_(&prime), vlevel_(std::move(vertex_levels)), n_(n), codims_(std::move(codims))
{
    bnd_cache_.resize(n + 1);
}

PrimeLevel prime_level_of(const SimplicialComplex& complex, const Stratification& strat)
{
    std::vector<int> vl(complex.count(0));
    for (int64_t i = 0; i < complex.count(0); ++i)
        vl[i] = strat.skeleton_level({0, (int32_t)i});
    return PrimeLevel(complex, std::move(vl), complex.dim(), strat.singular_codims());
}

const SparseMatrix& PrimeLevel::ambient_boundary(int d) const
{
    return *ambient_boundary_shared(d);
}

std::shared_ptr<const SparseMatrix> PrimeLevel::ambient_boundary_shared(int d) const
{
    if (!bnd_cache_[d])
        bnd_cache_[d] = std::make_shared<const SparseMatrix>(prime_->boundary_matrix(d));
    return bnd_cache_[d];
}

int PrimeLevel::meet_dim(int d, int64_t idx, int e) const
{
    // vertices of a chain lying in X_e form a prefix; the meet is that face
    int cnt = 0;
    for (int32_t v : prime_->verts(d, idx))
        if (vlevel_[v] <= e)
            ++cnt;
    return cnt - 1;
}

bool PrimeLevel::allowable(const Perversity& p, int d, int64_t idx) const
{
    for (int codim : codims_) {
        int md = meet_dim(d, idx, n_ - codim);
        if (md < 0)
            continue; // empty intersection passes vacuously
        if (md > d - codim + p(codim))
            return false;
    }
    return true;
}

const std::vector<char>& PrimeLevel::allowable_flags(const Perversity& p, int d) const
{
    auto& per_p = allow_cache_[p.name()];
    if (per_p.empty())
        per_p.resize(n_ + 1);
    if (per_p[d].empty()) {
        per_p[d].resize(prime_->count(d));
        for (int64_t i = 0; i < prime_->count(d); ++i)
            per_p[d][i] = allowable(p, d, i) ? 1 : 0;
    }
    return per_p[d];
}

WEnvironment::WEnvironment(const SimplicialComplex& k, const Stratification& strat)
    : k_(&k), strat_(&strat), bs_(barycentric_subdivision(k))
{
    prime_ = &bs_.prime;
    n_ = k.dim();
    codims_ = strat.singular_codims();
    vlevel_.resize(bs_.vertex_to_simplex.size());
    for (size_t v = 0; v < bs_.vertex_to_simplex.size(); ++v)
        vlevel_[v] = strat.skeleton_level(bs_.vertex_to_simplex[v]);
    bnd_cache_.resize(n_ + 1);
}

SparseVec WComplex::to_ambient(int k, const SparseVec& v) const
{
    SparseVec out;
    for (auto& [b, c] : v.e)
        axpy(out, c, basis[k][b]);
    return out;
}

std::optional<SparseVec> WComplex::express(int k, const SparseVec& ambient) const
{
    SparseVec r = ambient;
    SparseVec coeff;
    while (!r.empty()) {
        int32_t lo = r.low();
        auto it = pivot_to_basis[k].find(lo);
        if (it == pivot_to_basis[k].end())
            return std::nullopt;
        const SparseVec& b = basis[k][it->second];
        Rational f = r.e.back().second / b.e.back().second;
        coeff.push((int32_t)it->second, f);
        axpy(r, -f, b);
    }
    coeff.sort_fix();
    return coeff;
}

SparseVec WComplex::require_express(int k, const SparseVec& ambient) const
{
    auto c = express(k, ambient);
    if (!c)
        throw std::runtime_error("chain is not in the W-subspace at degree " + std::to_string(k));
    return *c;
}

WComplex w_complex(const PrimeLevel& env, const Perversity& p)
{
    const SimplicialComplex& kp = env.prime();
    int n = env.n();
    WComplex w;
    w.perversity_name = p.name();
    w.basis.resize(n + 1);
    w.pivot_to_basis.resize(n + 1);
    w.all_free.assign(n + 1, 0);

    auto ambient_bnd = [&](int d) -> const SparseMatrix& { return env.ambient_boundary(d); };

    for (int d = 0; d <= n; ++d) {
        const auto& allow = env.allowable_flags(p, d);
        const auto& allow_below =
            d > 0 ? env.allowable_flags(p, d - 1) : std::vector<char>{};

        // constrained columns: those with a boundary entry on a non-allowable face
        std::vector<int64_t> constrained;
        int64_t free_count = 0;
        std::vector<char> is_constrained(kp.count(d), 0);
        for (int64_t i = 0; i < kp.count(d); ++i) {
            if (!allow[i])
                continue;
            bool bad = false;
            if (d > 0)
                for (auto& [r, c] : ambient_bnd(d).col(i).e)
                    if (!allow_below[r]) {
                        bad = true;
                        break;
                    }
            if (bad) {
                constrained.push_back(i);
                is_constrained[i] = 1;
            } else {
                ++free_count;
            }
        }

        // free columns become singleton basis vectors
        auto& B = w.basis[d];
        for (int64_t i = 0; i < kp.count(d); ++i)
            if (allow[i] && !is_constrained[i]) {
                SparseVec v;
                v.push((int32_t)i, Rational(1));
                B.push_back(std::move(v));
            }

        if (!constrained.empty()) {
            // group by connected constraint rows
            std::unordered_map<int32_t, int64_t> row_owner;
            std::vector<int64_t> uf(constrained.size());
            std::iota(uf.begin(), uf.end(), 0);
            std::function<int64_t(int64_t)> root = [&](int64_t x) {
                while (uf[x] != x)
                    x = uf[x] = uf[uf[x]];
                return x;
            };
            for (size_t t = 0; t < constrained.size(); ++t)
                for (auto& [r, c] : ambient_bnd(d).col(constrained[t]).e)
                    if (!allow_below[r]) {
                        auto [it, fresh] = row_owner.try_emplace(r, (int64_t)t);
                        if (!fresh)
                            uf[root(it->second)] = root((int64_t)t);
                    }
            std::unordered_map<int64_t, std::vector<int64_t>> groups;
            for (size_t t = 0; t < constrained.size(); ++t)
                groups[root((int64_t)t)].push_back(constrained[t]);
            std::vector<int64_t> group_keys;
            for (auto& [gk, cols] : groups)
                group_keys.push_back(gk);
            std::sort(group_keys.begin(), group_keys.end(),
                      [&](int64_t a, int64_t b) { return groups[a][0] < groups[b][0]; });

            for (int64_t gk : group_keys) {
                auto& cols = groups[gk];
                std::sort(cols.begin(), cols.end());
                // constraint matrix: rows = non-allowable faces hit
                std::unordered_map<int32_t, int32_t> rowid;
                SparseMatrix cm(0, (int64_t)cols.size());
                std::vector<SparseVec> tmp(cols.size());
                int32_t nrows = 0;
                for (size_t t = 0; t < cols.size(); ++t)
                    for (auto& [r, c] : ambient_bnd(d).col(cols[t]).e)
                        if (!allow_below[r]) {
                            auto [it, fresh] = rowid.try_emplace(r, nrows);
                            if (fresh)
                                ++nrows;
                            tmp[t].push(it->second, c);
                        }
                cm = SparseMatrix(nrows, (int64_t)cols.size());
                for (size_t t = 0; t < cols.size(); ++t) {
                    tmp[t].sort_fix();
                    cm.col((int64_t)t) = std::move(tmp[t]);
                }
                Reduction red = reduce_columns(cm, true);
                for (int64_t j = 0; j < cm.cols(); ++j)
                    if (red.column_is_zero(j)) {
                        // kernel vector over local columns -> ambient chain
                        SparseVec v;
                        for (auto& [lc, c] : red.basis->col(j).e)
                            v.push((int32_t)cols[lc], c);
                        v.sort_fix();
                        B.push_back(std::move(v));
                    }
            }
        }

        std::sort(B.begin(), B.end(),
                  [](const SparseVec& a, const SparseVec& b) { return a.low() < b.low(); });
        for (size_t b = 0; b < B.size(); ++b) {
            auto [it, fresh] = w.pivot_to_basis[d].try_emplace(B[b].low(), (int64_t)b);
            if (!fresh)
                throw std::runtime_error("duplicate pivot in W basis");
        }
        w.all_free[d] =
            (free_count == (int64_t)B.size() && free_count == kp.count(d)) ? 1 : 0;
    }

    // graded complex over the bases
    std::vector<int64_t> dims(n + 1);
    std::vector<std::shared_ptr<const SparseMatrix>> bnd(n + 1);
    for (int d = 0; d <= n; ++d)
        dims[d] = (int64_t)w.basis[d].size();
    bnd[0] = std::make_shared<const SparseMatrix>(SparseMatrix(0, dims[0]));
    for (int d = 1; d <= n; ++d) {
        if (w.all_free[d] && w.all_free[d - 1]) {
            bnd[d] = env.ambient_boundary_shared(d);
            continue;
        }
        SparseMatrix m(dims[d - 1], dims[d]);
        for (int64_t b = 0; b < dims[d]; ++b) {
            SparseVec amb = ambient_bnd(d).apply(w.basis[d][b]);
            m.col(b) = w.require_express(d - 1, amb);
        }
        bnd[d] = std::make_shared<const SparseMatrix>(std::move(m));
    }
    w.gc = GradedComplex(n, std::move(dims), std::move(bnd));

    // labels: pivot simplices
    for (int d = 0; d <= n; ++d)
        for (int64_t b = 0; b < w.gc.dim(d); ++b) {
            const auto& v = w.basis[d][b];
            std::string lab = "p" + std::to_string(v.low());
            if (v.e.size() > 1)
                lab += "+" + std::to_string(v.e.size() - 1);
            w.gc.set_label(d, b, std::move(lab));
        }
    return w;
}

WComplex restrict_w(const PrimeLevel& env, const WComplex& w,
                    const std::vector<std::vector<char>>& keep)
{
    const SimplicialComplex& kp = env.prime();
    int n = env.n();
    WComplex r;
    r.perversity_name = w.perversity_name + "|Y";
    r.basis.resize(n + 1);
    r.pivot_to_basis.resize(n + 1);
    r.all_free.assign(n + 1, 0);

    auto ambient_bnd = [&](int d) -> const SparseMatrix& { return env.ambient_boundary(d); };
    (void)kp;

    for (int d = 0; d <= n; ++d) {
        // subspace of W_d spanned by chains supported on the kept simplices
        // with kept boundary support: compute kernel of the "outside" part
        // over the W-basis coordinates
        std::unordered_map<int32_t, int32_t> rowid;
        int32_t nrows = 0;
        std::vector<SparseVec> cols;
        std::vector<int64_t> wcols;
        for (int64_t b = 0; b < (int64_t)w.basis[d].size(); ++b) {
            const SparseVec& amb = w.basis[d][b];
            SparseVec cons;
            for (auto& [i, c] : amb.e)
                if (!keep[d][i]) {
                    auto [it, fresh] = rowid.try_emplace(i, nrows);
                    if (fresh)
                        ++nrows;
                    cons.push(it->second, c);
                }
            SparseVec bd = ambient_bnd(d).apply(amb);
            for (auto& [i, c] : bd.e)
                if (d > 0 && !keep[d - 1][i]) {
                    auto [it, fresh] = rowid.try_emplace((int32_t)(i | (1 << 30)), nrows);
                    if (fresh)
                        ++nrows;
                    cons.push(it->second, c);
                }
            cons.sort_fix();
            cols.push_back(std::move(cons));
            wcols.push_back(b);
        }
        SparseMatrix cm(nrows, (int64_t)cols.size());
        for (size_t t = 0; t < cols.size(); ++t)
            cm.col((int64_t)t) = std::move(cols[t]);
        Reduction red = reduce_columns(cm, true);
        auto& B = r.basis[d];
        for (int64_t j = 0; j < cm.cols(); ++j)
            if (red.column_is_zero(j)) {
                SparseVec amb;
                for (auto& [lc, c] : red.basis->col(j).e)
                    axpy(amb, c, w.basis[d][wcols[lc]]);
                if (!amb.empty())
                    B.push_back(std::move(amb));
            }
        std::sort(B.begin(), B.end(),
                  [](const SparseVec& a, const SparseVec& b) { return a.low() < b.low(); });
        // pivots can collide after arbitrary combinations; re-echelonize
        std::vector<SparseVec> ech;
        for (auto& v : B) {
            SparseVec x = v;
            bool changed = true;
            while (changed && !x.empty()) {
                changed = false;
                for (auto& pv : ech)
                    if (!x.empty() && pv.low() == x.low()) {
                        Rational f = -x.e.back().second / pv.e.back().second;
                        axpy(x, f, pv);
                        changed = true;
                    }
            }
            if (!x.empty())
                ech.push_back(std::move(x));
        }
        std::sort(ech.begin(), ech.end(),
                  [](const SparseVec& a, const SparseVec& b) { return a.low() < b.low(); });
        B = std::move(ech);
        for (size_t b = 0; b < B.size(); ++b)
            r.pivot_to_basis[d].emplace(B[b].low(), (int64_t)b);
    }

    std::vector<int64_t> dims(n + 1);
    std::vector<SparseMatrix> bnd(n + 1);
    for (int d = 0; d <= n; ++d)
        dims[d] = (int64_t)r.basis[d].size();
    bnd[0] = SparseMatrix(0, dims[0]);
    for (int d = 1; d <= n; ++d) {
        SparseMatrix m(dims[d - 1], dims[d]);
        for (int64_t b = 0; b < dims[d]; ++b) {
            SparseVec amb = ambient_bnd(d).apply(r.basis[d][b]);
            m.col(b) = r.require_express(d - 1, amb);
        }
        bnd[d] = std::move(m);
    }
    r.gc = GradedComplex(n, std::move(dims), std::move(bnd));
    return r;
}

bool w_subspace_of(const WComplex& a, const WComplex& b)
{
    for (int d = 0; d < (int)a.basis.size(); ++d)
        for (const auto& v : a.basis[d])
            if (!b.contains(d, v))
                return false;
    return true;
}

ChainMap w_inclusion(const WComplex& a, const WComplex& b)
{
    ChainMap f;
    f.src = &a.gc;
    f.dst = &b.gc;
    int top = a.gc.top();
    f.comp.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        SparseMatrix m(b.gc.dim(d), a.gc.dim(d));
        for (int64_t j = 0; j < a.gc.dim(d); ++j)
            m.col(j) = b.require_express(d, a.basis[d][j]);
        f.comp[d] = std::move(m);
    }
    return f;
}

ChainMap subdivision_operator(const WEnvironment& env, const GradedComplex& ck,
                              const GradedComplex& ckp)
{
    const SimplicialComplex& k = env.base();
    const SimplicialComplex& kp = env.prime();
    const auto& bs = env.bs();
    int n = k.dim();

    ChainMap f;
    f.src = &ck;
    f.dst = &ckp;
    f.comp.resize(n + 1);

    // sd(s) = (-1)^{dim s} (shat * sd(ds)); apex id is larger than all chain
    // members, so join appends at the end with no reordering sign
    std::vector<std::vector<SparseVec>> memo(n + 1);
    std::vector<SparseMatrix> kbnd(n + 1);
    for (int d = 0; d <= n; ++d) {
        kbnd[d] = k.boundary_matrix(d);
        memo[d].resize(k.count(d));
    }
    VertexList tmp;
    for (int d = 0; d <= n; ++d) {
        for (int64_t i = 0; i < k.count(d); ++i) {
            int32_t apex = (int32_t)bs.vertex_id({(int16_t)d, (int32_t)i});
            SparseVec out;
            if (d == 0) {
                int32_t v[1] = {apex};
                out.push((int32_t)kp.require(std::span<const int32_t>(v, 1)).idx, Rational(1));
            } else {
                // join apex onto sd of the boundary
                SparseVec below;
                for (auto& [r, c] : kbnd[d].col(i).e)
                    axpy(below, c, memo[d - 1][r]);
                for (auto& [pidx, c] : below.e) {
                    auto pv = kp.verts(d - 1, pidx);
                    tmp.assign(pv.begin(), pv.end());
                    tmp.push_back(apex);
                    auto s = kp.require(tmp);
                    out.push((int32_t)s.idx, (d % 2 == 0) ? c : -c);
                }
                out.sort_fix();
            }
            memo[d][i] = std::move(out);
        }
        SparseMatrix m(ckp.dim(d), ck.dim(d));
        for (int64_t i = 0; i < k.count(d); ++i)
            m.col(i) = memo[d][i];
        f.comp[d] = std::move(m);
    }
    return f;
}

ChainMap last_vertex_operator(const WEnvironment& env, const GradedComplex& ckp,
                              const GradedComplex& ck)
{
    const SimplicialComplex& k = env.base();
    const SimplicialComplex& kp = env.prime();
    const auto& bs = env.bs();
    int n = k.dim();

    ChainMap f;
    f.src = &ckp;
    f.dst = &ck;
    f.comp.resize(n + 1);
    VertexList img;
    for (int d = 0; d <= n; ++d) {
        SparseMatrix m(ck.dim(d), ckp.dim(d));
        for (int64_t i = 0; i < kp.count(d); ++i) {
            img.clear();
            bool degenerate = false;
            for (int32_t pv : kp.verts(d, i)) {
                SimplexId s = bs.vertex_to_simplex[pv];
                auto vs = k.verts(s);
                int32_t last = vs.back();
                if (!img.empty() && img.back() == last) {
                    degenerate = true;
                    break;
                }
                img.push_back(last);
            }
            if (degenerate)
                continue;
            // vertices may repeat non-adjacently only if unsorted; the chain
            // order makes last-vertex weakly monotone, so repeats are adjacent
            auto s = k.find(img);
            assert(s && s->d == d);
            m.col(i).push(s->idx, Rational(1));
        }
        f.comp[d] = std::move(m);
    }
    return f;
}

std::vector<int64_t> cone_formula_expected(const std::vector<int64_t>& ih_z, int dim_z,
                                           const Perversity& p_cone)
{
    int cutoff = dim_z - p_cone(dim_z + 1); // ranks survive strictly below this
    std::vector<int64_t> out(dim_z + 2, 0);
    for (int i = 0; i <= dim_z + 1; ++i)
        if (i < cutoff && i < (int)ih_z.size())
            out[i] = ih_z[i];
    return out;
}

} // namespace stratsig
