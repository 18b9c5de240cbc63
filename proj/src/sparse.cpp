#include "stratsig/sparse.hpp"

#include <cassert>
#include <stdexcept>

namespace stratsig {

void axpy(SparseVec& r, const Rational& c, const SparseVec& a)
{
    if (sgn(c) == 0 || a.empty())
        return;
    SparseVec out;
    out.e.reserve(r.e.size() + a.e.size());
    size_t i = 0, j = 0;
    while (i < r.e.size() && j < a.e.size()) {
        if (r.e[i].first < a.e[j].first) {
            out.e.push_back(r.e[i++]);
        } else if (r.e[i].first > a.e[j].first) {
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

Rational dot(const SparseVec& a, const SparseVec& b)
{
    Rational s(0);
    size_t i = 0, j = 0;
    while (i < a.e.size() && j < b.e.size()) {
        if (a.e[i].first < b.e[j].first)
            ++i;
        else if (a.e[i].first > b.e[j].first)
            ++j;
        else
            s += a.e[i++].second * b.e[j++].second;
    }
    return s;
}

void SparseMatrix::set(int64_t row, int64_t col, const Rational& c)
{
    assert(row >= 0 && row < rows_ && col >= 0 && col < cols_);
    auto& v = col_[col];
    auto it = std::lower_bound(v.e.begin(), v.e.end(), (int32_t)row,
                               [](const auto& a, int32_t r) { return a.first < r; });
    if (it != v.e.end() && it->first == row) {
        if (sgn(c) == 0)
            v.e.erase(it);
        else
            it->second = c;
    } else if (sgn(c) != 0) {
        v.e.insert(it, {(int32_t)row, c});
    }
}

SparseVec SparseMatrix::apply(const SparseVec& x) const
{
    SparseVec r;
    for (auto& [j, c] : x.e)
        axpy(r, c, col_[j]);
    return r;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_);
    std::vector<int64_t> cnt(rows_, 0);
    for (auto& c : col_)
        for (auto& [r, v] : c.e)
            cnt[r]++;
    for (int64_t r = 0; r < rows_; ++r)
        t.col_[r].e.reserve(cnt[r]);
    for (int64_t j = 0; j < cols_; ++j)
        for (auto& [r, v] : col_[j].e)
            t.col_[r].e.emplace_back((int32_t)j, v);
    return t; // rows were visited in increasing j, so entries are sorted
}

SparseMatrix SparseMatrix::mul(const SparseMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::runtime_error("SparseMatrix::mul shape mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    for (int64_t j = 0; j < rhs.cols_; ++j)
        out.col_[j] = apply(rhs.col(j));
    return out;
}

SparseMatrix SparseMatrix::add(const SparseMatrix& rhs, const Rational& scale_rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::runtime_error("SparseMatrix::add shape mismatch");
    SparseMatrix out = *this;
    for (int64_t j = 0; j < cols_; ++j)
        axpy(out.col_[j], scale_rhs, rhs.col(j));
    return out;
}

SparseMatrix SparseMatrix::identity(int64_t n)
{
    SparseMatrix m(n, n);
    for (int64_t i = 0; i < n; ++i)
        m.set(i, i, Rational(1));
    return m;
}

Rational SparseMatrix::max_abs() const
{
    Rational m(0);
    for (auto& c : col_)
        for (auto& [r, v] : c.e) {
            Rational a = abs(v);
            if (a > m)
                m = a;
        }
    return m;
}

Reduction reduce_columns(const SparseMatrix& m, bool track_basis)
{
    Reduction red;
    red.reduced = m;
    red.pivot_col.assign(m.rows(), -1);
    if (track_basis)
        red.basis = SparseMatrix::identity(m.cols());

    for (int64_t j = 0; j < m.cols(); ++j) {
        auto& cj = red.reduced.col(j);
        while (!cj.empty()) {
            int32_t lo = cj.low();
            int64_t k = red.pivot_col[lo];
            if (k < 0)
                break;
            const auto& ck = red.reduced.col(k);
            Rational f = -cj.e.back().second / ck.e.back().second;
            axpy(cj, f, ck);
            if (track_basis)
                axpy(red.basis->col(j), f, red.basis->col(k));
        }
        if (!cj.empty()) {
            red.pivot_col[cj.low()] = j;
            red.rank++;
        }
    }
    return red;
}

SparseVec Reduction::reduce_vector(const SparseVec& v, SparseVec* comb) const
{
    SparseVec r = v;
    while (!r.empty()) {
        int32_t lo = r.low();
        int64_t k = pivot_col[lo];
        if (k < 0)
            break;
        const auto& ck = reduced.col(k);
        Rational f = -r.e.back().second / ck.e.back().second;
        axpy(r, f, ck);
        if (comb)
            comb->push((int32_t)k, f);
    }
    if (comb)
        comb->sort_fix();
    return r;
}

std::optional<SparseVec> solve_in_span(const Reduction& red, const SparseMatrix& m,
                                       const SparseVec& z)
{
    if (!red.basis)
        throw std::runtime_error("solve_in_span needs a tracked reduction");
    SparseVec comb;
    SparseVec residual = red.reduce_vector(z, &comb);
    if (!residual.empty())
        return std::nullopt;
    // z = -sum comb[k] * reduced_k ; reduced_k = m * basis_k
    SparseVec w;
    for (auto& [k, f] : comb.e)
        axpy(w, -f, red.basis->col(k));
    (void)m;
    return w;
}

} // namespace stratsig
