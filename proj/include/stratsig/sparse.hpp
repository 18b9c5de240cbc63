// Sparse exact-rational vectors and column-major matrices, plus the
// column-reduction engine used for ranks, kernels, boundary solves and
// homology. Rows and columns are plain integer indices; callers keep the
// label tables.

#ifndef STRATSIG_SPARSE_HPP
#define STRATSIG_SPARSE_HPP

#include "stratsig/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace stratsig {

// Entries sorted by row index, no stored zeros.
struct SparseVec {
    std::vector<std::pair<int32_t, Rational>> e;

    bool empty() const { return e.empty(); }
    int32_t low() const { return e.back().first; } // largest row index
    void clear() { e.clear(); }

    Rational coeff(int32_t row) const
    {
        auto it = std::lower_bound(e.begin(), e.end(), row,
                                   [](const auto& a, int32_t r) { return a.first < r; });
        if (it != e.end() && it->first == row)
            return it->second;
        return Rational(0);
    }

    void push(int32_t row, const Rational& c)
    {
        if (sgn(c) != 0)
            e.emplace_back(row, c);
    }

    void sort_fix()
    {
        std::sort(e.begin(), e.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicates
        size_t w = 0;
        for (size_t i = 0; i < e.size();) {
            int32_t r = e[i].first;
            Rational c = e[i].second;
            size_t j = i + 1;
            while (j < e.size() && e[j].first == r)
                c += e[j++].second;
            if (sgn(c) != 0)
                e[w++] = {r, c};
            i = j;
        }
        e.resize(w);
    }

    SparseVec& operator*=(const Rational& c)
    {
        if (sgn(c) == 0) {
            e.clear();
            return *this;
        }
        for (auto& p : e)
            p.second *= c;
        return *this;
    }

    SparseVec operator-() const
    {
        SparseVec r = *this;
        for (auto& p : r.e)
            p.second = -p.second;
        return r;
    }
};

// r += c * a  (sorted merge)
void axpy(SparseVec& r, const Rational& c, const SparseVec& a);

Rational dot(const SparseVec& a, const SparseVec& b);

inline bool equal(const SparseVec& a, const SparseVec& b)
{
    if (a.e.size() != b.e.size())
        return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i].first != b.e[i].first || a.e[i].second != b.e[i].second)
            return false;
    return true;
}

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int64_t rows, int64_t cols) : rows_(rows), cols_(cols), col_(cols) {}

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    const SparseVec& col(int64_t j) const { return col_[j]; }
    SparseVec& col(int64_t j) { return col_[j]; }
    void set(int64_t row, int64_t col, const Rational& c);

    int64_t nnz() const
    {
        int64_t n = 0;
        for (auto& c : col_)
            n += (int64_t)c.e.size();
        return n;
    }

    SparseVec apply(const SparseVec& x) const; // matrix * vector
    SparseMatrix transpose() const;
    SparseMatrix mul(const SparseMatrix& rhs) const;
    SparseMatrix add(const SparseMatrix& rhs, const Rational& scale_rhs) const;
    static SparseMatrix identity(int64_t n);

    bool is_zero() const
    {
        for (auto& c : col_)
            if (!c.empty())
                return false;
        return true;
    }

    // max |entry| as rational (for audits)
    Rational max_abs() const;

private:
    int64_t rows_ = 0, cols_ = 0;
    std::vector<SparseVec> col_;
};

// Column reduction a la persistence: processes columns left to right and
// eliminates against earlier columns with the same low row. Deterministic.
// When track_basis is set, basis.col(j) expresses reduced column j as a
// combination of input columns (so zero columns yield kernel vectors).
struct Reduction {
    SparseMatrix reduced;              // same shape as input
    std::optional<SparseMatrix> basis; // cols x cols, only if tracked
    std::vector<int64_t> pivot_col;    // row -> column index owning that low, or -1
    int64_t rank = 0;

    bool column_is_zero(int64_t j) const { return reduced.col(j).empty(); }

    // Reduce an external vector against the reduced columns; returns the
    // residual. If comb is non-null, accumulates the coefficients applied
    // per column so that  v = residual + sum comb[j] * reduced_col_j.
    SparseVec reduce_vector(const SparseVec& v, SparseVec* comb = nullptr) const;
};

Reduction reduce_columns(const SparseMatrix& m, bool track_basis);

inline int64_t rank(const SparseMatrix& m)
{
    return reduce_columns(m, false).rank;
}

// Solve m*w = z exactly; nullopt when z is not in the column span.
std::optional<SparseVec> solve_in_span(const Reduction& red, const SparseMatrix& m,
                                       const SparseVec& z);

} // namespace stratsig

#endif
