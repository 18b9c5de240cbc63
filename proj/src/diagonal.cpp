#include "stratsig/diagonal.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace stratsig {

void TensorAmbChain::sort_fix()
{
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t w = 0;
    for (size_t i = 0; i < e.size();) {
        uint64_t k = e[i].first;
        Rational c = e[i].second;
        size_t j = i + 1;
        while (j < e.size() && e[j].first == k)
            c += e[j++].second;
        if (sgn(c) != 0)
            e[w++] = {k, c};
        i = j;
    }
    e.resize(w);
}

void axpy(TensorAmbChain& r, const Rational& c, const TensorAmbChain& a)
{
    if (sgn(c) == 0 || a.e.empty())
        return;
    TensorAmbChain out;
    out.e.reserve(r.e.size() + a.e.size());
    size_t i = 0, j = 0;
    while (i < r.e.size() && j < a.e.size()) {
        if (r.e[i].first < a.e[j].first)
            out.e.push_back(r.e[i++]);
        else if (r.e[i].first > a.e[j].first) {
            out.e.emplace_back(a.e[j].first, c * a.e[j].second);
            ++j;
        } else {
            Rational v = r.e[i].second + c * a.e[j].second;
            if (sgn(v) != 0)
                out.e.emplace_back(r.e[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    for (; i < r.e.size(); ++i)
        out.e.push_back(r.e[i]);
    for (; j < a.e.size(); ++j)
        out.e.emplace_back(a.e[j].first, c * a.e[j].second);
    r.e.swap(out.e);
}

bool equal(const TensorAmbChain& a, const TensorAmbChain& b)
{
    if (a.e.size() != b.e.size())
        return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i])
            return false;
    return true;
}

TensorAmbChain tensor_amb_boundary(const WEnvironment& env, int degree, const TensorAmbChain& v)
{
    TensorAmbChain out;
    for (auto& [key, c] : v.e) {
        int a = TensorAmbChain::key_a(key);
        int b = degree - a;
        int32_t i = TensorAmbChain::key_i(key);
        int32_t j = TensorAmbChain::key_j(key);
        if (a >= 1)
            for (auto& [r, s] : env.ambient_boundary(a).col(i).e)
                out.push(a - 1, r, j, c * s);
        if (b >= 1) {
            Rational sg((a % 2 == 0) ? 1 : -1);
            for (auto& [r, s] : env.ambient_boundary(b).col(j).e)
                out.push(a, i, r, c * sg * s);
        }
    }
    out.sort_fix();
    return out;
}

TensorAmbChain DiagonalApproximation::apply(int k, const SparseVec& w0_chain) const
{
    TensorAmbChain out;
    for (auto& [b, c] : w0_chain.e)
        axpy(out, c, val[k][b]);
    return out;
}

namespace {

// reversed copy of a graded complex (basis order flipped per degree); used to
// vary the deterministic pivot order in model solves
GradedComplex reverse_complex(const GradedComplex& c)
{
    int top = c.top();
    std::vector<int64_t> dims(top + 1);
    for (int k = 0; k <= top; ++k)
        dims[k] = c.dim(k);
    std::vector<SparseMatrix> bnd(top + 1);
    bnd[0] = SparseMatrix(0, dims[0]);
    for (int k = 1; k <= top; ++k) {
        SparseMatrix m(dims[k - 1], dims[k]);
        for (int64_t j = 0; j < dims[k]; ++j) {
            for (auto& [r, s] : c.boundary(k).col(dims[k] - 1 - j).e)
                m.col(j).push((int32_t)(dims[k - 1] - 1 - r), s);
            m.col(j).sort_fix();
        }
        bnd[k] = std::move(m);
    }
    return GradedComplex(top, std::move(dims), std::move(bnd));
}

struct ModelSolver {
    const WEnvironment& env;
    const WComplex& wm;
    const WComplex& wn;
    bool reverse;

    TensorAmbChain solve(int k, const SparseVec& omega_ambient, const TensorAmbChain& target,
                         const std::string& label)
    {
        // model: closure of the support of omega
        int n = env.n();
        std::vector<std::vector<char>> keep(n + 1);
        for (int d = 0; d <= n; ++d)
            keep[d].assign(env.prime().count(d), 0);
        VertexList sub;
        for (auto& [idx, c] : omega_ambient.e) {
            auto verts = env.prime().verts(k, idx);
            for (uint32_t mask = 1; mask < (1u << (k + 1)); ++mask) {
                sub.clear();
                for (int q = 0; q <= k; ++q)
                    if (mask & (1u << q))
                        sub.push_back(verts[q]);
                auto f = env.prime().find(sub);
                assert(f);
                keep[f->d][f->idx] = 1;
            }
        }

        WComplex wm_r = restrict_w(env, wm, keep);
        WComplex wn_r = restrict_w(env, wn, keep);
        TensorComplex tc = tensor(wm_r.gc, wn_r.gc);

        GradedComplex reversed;
        if (reverse)
            reversed = reverse_complex(tc.gc);
        const GradedComplex& tgc = reverse ? reversed : tc.gc;
        BoundarySolver solver(tgc);

        // acyclicity oracle before extending (the paper's obstruction)
        if (solver.homology_rank(k - 1) != 0)
            throw AcyclicityFailure(label, k - 1);

        // express target in restricted tensor coordinates, per x-degree block
        SparseVec target_flat; // over tc.gc degree k-1
        {
            std::map<int, std::vector<std::tuple<int32_t, int32_t, Rational>>> blocks;
            for (auto& [key, c] : target.e)
                blocks[TensorAmbChain::key_a(key)].push_back(
                    {TensorAmbChain::key_i(key), TensorAmbChain::key_j(key), c});
            for (auto& [a, terms] : blocks) {
                int b = (k - 1) - a;
                // phase 1: per ambient j, express the x-slice in wm_r
                std::map<int32_t, SparseVec> slice;
                for (auto& [i, j, c] : terms)
                    slice[j].push(i, c);
                std::map<int64_t, SparseVec> mu; // wm_r index -> y chain
                for (auto& [j, sl] : slice) {
                    sl.sort_fix();
                    SparseVec coeff = wm_r.require_express(a, sl);
                    for (auto& [p, cc] : coeff.e)
                        mu[p].push(j, cc);
                }
                // phase 2: per p, express the y-slice in wn_r
                for (auto& [p, ys] : mu) {
                    ys.sort_fix();
                    SparseVec coeff = wn_r.require_express(b, ys);
                    for (auto& [q, cc] : coeff.e)
                        target_flat.push((int32_t)tc.index(k - 1, a, p, q), cc);
                }
            }
            target_flat.sort_fix();
        }
        if (reverse) {
            SparseVec rv;
            int64_t dim = tc.gc.dim(k - 1);
            for (auto& [r, c] : target_flat.e)
                rv.push((int32_t)(dim - 1 - r), c);
            rv.sort_fix();
            target_flat = std::move(rv);
        }

        SparseVec zeta = solver.solve(k - 1, target_flat);
        if (reverse) {
            SparseVec rv;
            int64_t dim = tc.gc.dim(k);
            for (auto& [r, c] : zeta.e)
                rv.push((int32_t)(dim - 1 - r), c);
            rv.sort_fix();
            zeta = std::move(rv);
        }

        // back to ambient pairs
        TensorAmbChain out;
        for (auto& [flat, c] : zeta.e) {
            auto part = tc.part(k, flat);
            const SparseVec& xa = wm_r.basis[part.a][part.i];
            const SparseVec& yb = wn_r.basis[k - part.a][part.j];
            for (auto& [xi, xc] : xa.e)
                for (auto& [yj, yc] : yb.e)
                    out.push(part.a, xi, yj, c * xc * yc);
        }
        out.sort_fix();
        return out;
    }
};

} // namespace

DiagonalApproximation diagonal_approximation(const WEnvironment& env, const WComplex& wm,
                                             const WComplex& wn, bool reverse_pivots)
{
    int n = env.n();
    DiagonalApproximation da;
    da.env = &env;
    da.w0 = w_complex(env, Perversity::zero(std::max(n, 2)));
    da.val.resize(n + 1);

    ModelSolver solver{env, wm, wn, reverse_pivots};
    const SimplicialComplex& kp = env.prime();

    auto singleton_in = [&](const WComplex& w, int d, int32_t amb) -> bool {
        auto it = w.pivot_to_basis[d].find(amb);
        if (it == w.pivot_to_basis[d].end())
            return false;
        const SparseVec& b = w.basis[d][it->second];
        return b.e.size() == 1 && b.e[0].second == 1;
    };

    for (int k = 0; k <= n; ++k) {
        int64_t nb = da.w0.gc.dim(k);
        da.val[k].resize(nb);
        for (int64_t el = 0; el < nb; ++el) {
            const SparseVec& amb = da.w0.basis[k][el];

            // target: Delta of the boundary
            TensorAmbChain target;
            if (k > 0)
                for (auto& [f, c] : da.w0.gc.boundary(k).col(el).e)
                    axpy(target, c, da.val[k - 1][f]);

            if (k == 0) {
                // base case of the construction: x (x) x on allowable vertices
                if (amb.e.size() != 1 || amb.e[0].second != 1)
                    throw std::runtime_error("degree-0 W basis is not vertexwise");
                int32_t v = amb.e[0].first;
                if (!singleton_in(wm, 0, v) || !singleton_in(wn, 0, v))
                    throw std::runtime_error("allowable vertex missing from a W factor");
                TensorAmbChain base;
                base.push(0, v, v, Rational(1));
                base.sort_fix();
                da.val[0][el] = std::move(base);
                continue;
            }

            TensorAmbChain value;
            bool aw_ok = false;
            if (amb.e.size() == 1 && amb.e[0].second == 1 && !reverse_pivots) {
                int32_t idx = amb.e[0].first;
                auto verts = kp.verts(k, idx);
                // Alexander-Whitney candidate: sum of front (x) back faces
                TensorAmbChain cand;
                bool faces_ok = true;
                VertexList front, back;
                for (int r = 0; r <= k && faces_ok; ++r) {
                    front.assign(verts.begin(), verts.begin() + r + 1);
                    back.assign(verts.begin() + r, verts.end());
                    auto fs = kp.find(front);
                    auto bs = kp.find(back);
                    if (!fs || !bs || !singleton_in(wm, r, fs->idx) ||
                        !singleton_in(wn, k - r, bs->idx)) {
                        faces_ok = false;
                        break;
                    }
                    cand.push(r, fs->idx, bs->idx, Rational(1));
                }
                if (faces_ok) {
                    cand.sort_fix();
                    if (k == 0 || equal(tensor_amb_boundary(env, k, cand), target)) {
                        value = std::move(cand);
                        aw_ok = true;
                    }
                }
            }

            if (!aw_ok) {
                value = solver.solve(k, amb, target,
                                     "deg" + std::to_string(k) + "#" + std::to_string(el));
                da.log.push_back({k, el, false, "solve"});
            }

            // chain-map identity, exact
            if (k > 0 && !equal(tensor_amb_boundary(env, k, value), target))
                throw std::runtime_error("diagonal approximation violates the chain identity");
            da.val[k][el] = std::move(value);
        }
    }
    return da;
}

} // namespace stratsig
