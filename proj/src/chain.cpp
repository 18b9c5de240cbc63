#include "stratsig/chain.hpp"
#include "stratsig/simplicial.hpp"

#include <cassert>

namespace stratsig {

int64_t GradedComplex::total_dim() const
{
    int64_t t = 0;
    for (int k = 0; k <= top_; ++k)
        t += dims_[k];
    return t;
}

void GradedComplex::set_label(int k, int64_t i, std::string s)
{
    if (labels_.empty())
        labels_.resize(top_ + 1);
    if ((int64_t)labels_[k].size() < dims_[k])
        labels_[k].resize(dims_[k]);
    labels_[k][i] = std::move(s);
}

const std::string& GradedComplex::label(int k, int64_t i) const
{
    static const std::string empty;
    if (labels_.empty() || (int64_t)labels_[k].size() <= i)
        return empty;
    return labels_[k][i];
}

void GradedComplex::verify_dd() const
{
    for (int k = 2; k <= top_; ++k) {
        const auto& a = *bnd_[k - 1];
        const auto& b = *bnd_[k];
        for (int64_t j = 0; j < b.cols(); ++j) {
            SparseVec v = a.apply(b.col(j));
            if (!v.empty())
                throw std::runtime_error("boundary of boundary is nonzero at degree " +
                                         std::to_string(k));
        }
    }
}

GradedComplex GradedComplex::zero(int top)
{
    std::vector<int64_t> dims(top + 1, 0);
    std::vector<SparseMatrix> bnd(top + 1);
    return GradedComplex(top, std::move(dims), std::move(bnd));
}

GradedComplex simplicial_chains(const SimplicialComplex& k)
{
    int n = k.dim();
    std::vector<int64_t> dims(n + 1);
    std::vector<SparseMatrix> bnd(n + 1);
    for (int d = 0; d <= n; ++d) {
        dims[d] = k.count(d);
        bnd[d] = k.boundary_matrix(d);
    }
    return GradedComplex(n, std::move(dims), std::move(bnd));
}

namespace {

// Kernel-streaming reduction: V-columns kept only for pivot columns; each
// zero-reducing column's kernel combination is handed to the callback.
void reduce_streaming(const SparseMatrix& m,
                      const std::function<void(int64_t, const SparseVec&)>& on_kernel,
                      Reduction& red)
{
    red.reduced = m;
    red.pivot_col.assign(m.rows(), -1);
    red.rank = 0;
    std::vector<SparseVec> vcol(m.cols());
    for (int64_t j = 0; j < m.cols(); ++j) {
        vcol[j].push((int32_t)j, Rational(1));
        auto& cj = red.reduced.col(j);
        while (!cj.empty()) {
            int32_t lo = cj.low();
            int64_t k = red.pivot_col[lo];
            if (k < 0)
                break;
            const auto& ck = red.reduced.col(k);
            Rational f = -cj.e.back().second / ck.e.back().second;
            axpy(cj, f, ck);
            axpy(vcol[j], f, vcol[k]);
        }
        if (!cj.empty()) {
            red.pivot_col[cj.low()] = j;
            red.rank++;
        } else {
            if (on_kernel)
                on_kernel(j, vcol[j]);
            vcol[j].clear();
            vcol[j].e.shrink_to_fit();
        }
    }
}

void normalize_pivot(SparseVec& v)
{
    if (v.empty())
        return;
    Rational inv = 1 / v.e.back().second;
    for (auto& p : v.e)
        p.second *= inv;
}

// Reduce v against the boundary basis and a pivot-echelon set of reps,
// interleaved: subtracting a rep can expose a boundary pivot again and vice
// versa. The leading row strictly decreases, so this terminates. coeff, when
// given, receives the rep coefficients by index.
SparseVec reduce_mod_classes(const Reduction& boundary_red, const std::vector<SparseVec>& reps,
                             SparseVec v, std::vector<Rational>* coeff = nullptr)
{
    for (;;) {
        v = boundary_red.reduce_vector(v);
        if (v.empty())
            return v;
        int32_t lo = v.low();
        bool hit = false;
        for (size_t i = 0; i < reps.size(); ++i) {
            if (!reps[i].empty() && reps[i].low() == lo) {
                Rational f = v.e.back().second / reps[i].e.back().second;
                if (coeff)
                    (*coeff)[i] += f;
                axpy(v, -f, reps[i]);
                hit = true;
                break;
            }
        }
        if (!hit)
            return v;
    }
}

} // namespace

HomologyBasis homology(const GradedComplex& c)
{
    int top = c.top();
    HomologyBasis h;
    h.ranks.assign(top + 1, 0);
    h.reps.resize(top + 1);
    h.boundary_basis.resize(top + 1);
    h.boundary_red.resize(top + 1);

    // boundary bases first
    std::vector<int64_t> bnd_rank(top + 2, 0);
    for (int k = 0; k <= top; ++k) {
        Reduction r = (k + 1 <= top)
                          ? reduce_columns(c.boundary(k + 1), false)
                          : Reduction{SparseMatrix(c.dim(k), 0), std::nullopt, {}, 0};
        // collect nonzero reduced columns as an image basis, re-reduced for
        // canonical pivots
        SparseMatrix img(c.dim(k), r.rank);
        int64_t t = 0;
        for (int64_t j = 0; j < r.reduced.cols(); ++j)
            if (!r.reduced.col(j).empty())
                img.col(t++) = r.reduced.col(j);
        h.boundary_basis[k] = std::move(img);
        h.boundary_red[k] = reduce_columns(h.boundary_basis[k], false);
        bnd_rank[k + 1] = r.rank;
    }

    for (int k = 0; k <= top; ++k) {
        // cycles: kernel of boundary(k); degree 0 kernel is everything when
        // boundary(0) has zero rows
        std::vector<SparseVec> reps;
        Reduction dummy;
        auto on_kernel = [&](int64_t, const SparseVec& z) {
            SparseVec r = reduce_mod_classes(h.boundary_red[k], reps, z);
            if (!r.empty()) {
                normalize_pivot(r);
                reps.push_back(std::move(r));
            }
        };
        reduce_streaming(c.boundary(k), on_kernel, dummy);
        int64_t cycles = c.dim(k) - dummy.rank;
        h.ranks[k] = cycles - bnd_rank[k + 1];
        if ((int64_t)reps.size() != h.ranks[k])
            throw std::runtime_error("homology representative extraction mismatch");
        h.reps[k] = std::move(reps);
    }
    return h;
}

std::vector<int64_t> homology_ranks(const GradedComplex& c)
{
    int top = c.top();
    std::vector<int64_t> rk(top + 2, 0);
    for (int k = 1; k <= top; ++k)
        rk[k] = rank(c.boundary(k));
    std::vector<int64_t> out(top + 1);
    for (int k = 0; k <= top; ++k)
        out[k] = c.dim(k) - rk[k] - rk[k + 1];
    return out;
}

HomologyBasis homology_with_seeds(const GradedComplex& c,
                                  const std::vector<std::vector<SparseVec>>& seeds)
{
    int top = c.top();
    HomologyBasis h;
    h.ranks.assign(top + 1, 0);
    h.reps.resize(top + 1);
    h.boundary_basis.resize(top + 1);
    h.boundary_red.resize(top + 1);

    std::vector<int64_t> bnd_rank(top + 2, 0);
    for (int k = 0; k <= top + 1; ++k) {
        if (k > top)
            break;
        Reduction r = k + 1 <= top ? reduce_columns(c.boundary(k + 1), false)
                                   : Reduction{SparseMatrix(c.dim(k), 0), std::nullopt, {}, 0};
        SparseMatrix img(c.dim(k), r.rank);
        int64_t t = 0;
        for (int64_t j = 0; j < r.reduced.cols(); ++j)
            if (!r.reduced.col(j).empty())
                img.col(t++) = r.reduced.col(j);
        h.boundary_basis[k] = std::move(img);
        h.boundary_red[k] = reduce_columns(h.boundary_basis[k], false);
        bnd_rank[k + 1] = r.rank;
    }
    for (int k = 0; k <= top; ++k) {
        int64_t cycles = c.dim(k) - (k >= 1 ? rank(c.boundary(k)) : 0);
        h.ranks[k] = cycles - bnd_rank[k + 1];
        std::vector<SparseVec> reps;
        const auto& sk = (k < (int)seeds.size()) ? seeds[k] : std::vector<SparseVec>{};
        for (const auto& z : sk) {
            if (!c.boundary(k).apply(z).empty())
                throw std::runtime_error("seed is not a cycle at degree " + std::to_string(k));
            SparseVec r = reduce_mod_classes(h.boundary_red[k], reps, z);
            if (!r.empty()) {
                normalize_pivot(r);
                reps.push_back(std::move(r));
            }
        }
        if ((int64_t)reps.size() != h.ranks[k])
            throw std::runtime_error("seed representatives do not span homology at degree " +
                                     std::to_string(k));
        h.reps[k] = std::move(reps);
    }
    return h;
}

std::vector<Rational> HomologyBasis::express(int k, const SparseVec& cycle) const
{
    std::vector<Rational> coeff(reps[k].size(), Rational(0));
    SparseVec r = reduce_mod_classes(boundary_red[k], reps[k], cycle, &coeff);
    if (!r.empty())
        throw std::runtime_error("vector is not a cycle class of this basis");
    return coeff;
}

bool verify_chain_map(const ChainMap& f)
{
    const GradedComplex& s = *f.src;
    const GradedComplex& d = *f.dst;
    int top = std::min<int>(s.top(), (int)f.comp.size() - 1);
    for (int k = 0; k <= top; ++k) {
        if (f.comp[k].cols() != s.dim(k) || f.comp[k].rows() != d.dim(k))
            return false;
        if (k == 0)
            continue;
        for (int64_t j = 0; j < s.dim(k); ++j) {
            SparseVec lhs = d.boundary(k).apply(f.comp[k].col(j));
            SparseVec rhs = f.comp[k - 1].apply(s.boundary(k).col(j));
            rhs *= Rational(f.sgn(k));
            if (!equal(lhs, rhs))
                return false;
        }
    }
    return true;
}

SparseMatrix induced_on_homology(const ChainMap& f, int k, const HomologyBasis& hsrc,
                                 const HomologyBasis& hdst)
{
    SparseMatrix m(hdst.rank(k), hsrc.rank(k));
    for (int64_t j = 0; j < hsrc.rank(k); ++j) {
        SparseVec img = f.comp[k].apply(hsrc.reps[k][j]);
        auto coeff = hdst.express(k, img);
        for (size_t i = 0; i < coeff.size(); ++i)
            m.set((int64_t)i, j, coeff[i]);
    }
    return m;
}

QuasiIsoReport verify_quasi_iso(const ChainMap& f, const HomologyBasis& hsrc,
                                const HomologyBasis& hdst)
{
    QuasiIsoReport rep;
    int top = (int)f.comp.size() - 1;
    rep.degree_ok.assign(top + 1, false);
    for (int k = 0; k <= top; ++k) {
        if (hsrc.rank(k) != hdst.rank(k)) {
            rep.degree_ok[k] = false;
            continue;
        }
        if (hsrc.rank(k) == 0) {
            rep.degree_ok[k] = true;
            continue;
        }
        SparseMatrix m = induced_on_homology(f, k, hsrc, hdst);
        rep.degree_ok[k] = (rank(m) == hsrc.rank(k));
    }
    return rep;
}

GradedComplex mapping_cone(const ChainMap& f)
{
    const GradedComplex& c = *f.src;
    const GradedComplex& d = *f.dst;
    int top = std::max(c.top() + 1, d.top());
    std::vector<int64_t> dims(top + 1, 0);
    std::vector<SparseMatrix> bnd(top + 1);
    auto cdim = [&](int k) { return (k - 1 >= 0 && k - 1 <= c.top()) ? c.dim(k - 1) : 0; };
    auto ddim = [&](int k) { return (k >= 0 && k <= d.top()) ? d.dim(k) : 0; };
    for (int k = 0; k <= top; ++k)
        dims[k] = cdim(k) + ddim(k);
    for (int k = 1; k <= top; ++k) {
        SparseMatrix m(dims[k - 1], dims[k]);
        // block [ -dC  0 ; f  dD ], C part shifted down one degree
        for (int64_t j = 0; j < cdim(k); ++j) {
            if (k - 1 >= 1 && k - 1 <= c.top())
                for (auto& [r, v] : c.boundary(k - 1).col(j).e)
                    m.col(j).push(r, -v);
            if (k - 1 <= c.top())
                for (auto& [r, v] : f.comp[k - 1].col(j).e)
                    m.col(j).push((int32_t)(cdim(k - 1) + r), v);
            m.col(j).sort_fix();
        }
        for (int64_t j = 0; j < ddim(k); ++j) {
            if (k <= d.top())
                for (auto& [r, v] : d.boundary(k).col(j).e)
                    m.col(cdim(k) + j).push((int32_t)(cdim(k - 1) + r), v);
            m.col(cdim(k) + j).sort_fix();
        }
        bnd[k] = std::move(m);
    }
    bnd[0] = SparseMatrix(0, dims[0]);
    return GradedComplex(top, std::move(dims), std::move(bnd));
}

int64_t TensorComplex::index(int k, int a, int64_t i, int64_t j) const
{
    return offset[k][a] + i * d->dim(k - a) + j;
}

TensorComplex::Part TensorComplex::part(int k, int64_t flat) const
{
    for (int a = (int)offset[k].size() - 1; a >= 0; --a) {
        if (offset[k][a] >= 0 && flat >= offset[k][a]) {
            int64_t rel = flat - offset[k][a];
            int64_t w = d->dim(k - a);
            return {a, rel / w, rel % w};
        }
    }
    throw std::runtime_error("bad tensor index");
}

TensorComplex tensor(const GradedComplex& c, const GradedComplex& d)
{
    TensorComplex t;
    t.c = &c;
    t.d = &d;
    int top = c.top() + d.top();
    std::vector<int64_t> dims(top + 1, 0);
    t.offset.assign(top + 1, {});
    for (int k = 0; k <= top; ++k) {
        t.offset[k].assign(k + 1, -1);
        for (int a = 0; a <= k; ++a) {
            int b = k - a;
            if (a > c.top() || b > d.top())
                continue;
            if (c.dim(a) == 0 || d.dim(b) == 0)
                continue;
            t.offset[k][a] = dims[k];
            dims[k] += c.dim(a) * d.dim(b);
        }
    }
    std::vector<SparseMatrix> bnd(top + 1);
    bnd[0] = SparseMatrix(0, dims[0]);
    for (int k = 1; k <= top; ++k) {
        SparseMatrix m(dims[k - 1], dims[k]);
        for (int a = 0; a <= k; ++a) {
            int b = k - a;
            if (a > c.top() || b > d.top() || t.offset[k][a] < 0)
                continue;
            for (int64_t i = 0; i < c.dim(a); ++i)
                for (int64_t j = 0; j < d.dim(b); ++j) {
                    int64_t col = t.index(k, a, i, j);
                    auto& cv = m.col(col);
                    if (a >= 1 && t.offset[k - 1][a - 1] >= 0)
                        for (auto& [r, v] : c.boundary(a).col(i).e)
                            cv.push((int32_t)t.index(k - 1, a - 1, r, j), v);
                    if (b >= 1 && a < (int)t.offset[k - 1].size() && t.offset[k - 1][a] >= 0) {
                        Rational s((a % 2 == 0) ? 1 : -1);
                        for (auto& [r, v] : d.boundary(b).col(j).e)
                            cv.push((int32_t)t.index(k - 1, a, i, r), s * v);
                    }
                    cv.sort_fix();
                }
        }
        bnd[k] = std::move(m);
    }
    t.gc = GradedComplex(top, std::move(dims), std::move(bnd));
    return t;
}

GradedComplex dualize(const GradedComplex& c)
{
    int n = c.top();
    std::vector<int64_t> dims(n + 1);
    std::vector<SparseMatrix> bnd(n + 1);
    for (int k = 0; k <= n; ++k)
        dims[k] = c.dim(n - k);
    bnd[0] = SparseMatrix(0, dims[0]);
    for (int k = 1; k <= n; ++k)
        bnd[k] = c.boundary(n - k + 1).transpose();
    return GradedComplex(n, std::move(dims), std::move(bnd));
}

const Reduction& BoundarySolver::reduction(int k)
{
    if (!red_[k])
        red_[k] = reduce_columns(c_->boundary(k), true);
    return *red_[k];
}

std::optional<SparseVec> BoundarySolver::try_solve(int k, const SparseVec& z)
{
    if (k + 1 > c_->top()) {
        if (z.empty())
            return SparseVec{};
        return std::nullopt;
    }
    return solve_in_span(reduction(k + 1), c_->boundary(k + 1), z);
}

SparseVec BoundarySolver::solve(int k, const SparseVec& z)
{
    auto w = try_solve(k, z);
    if (!w)
        throw NoSolution();
    return *w;
}

int64_t BoundarySolver::homology_rank(int k)
{
    int64_t cyc = c_->dim(k) - (k >= 1 ? reduction(k).rank : 0);
    int64_t img = (k + 1 <= c_->top()) ? reduction(k + 1).rank : 0;
    return cyc - img;
}

} // namespace stratsig
