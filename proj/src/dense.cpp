#include "stratsig/dense.hpp"

#include <algorithm>

namespace stratsig {

DenseMatrix to_dense(const SparseMatrix& m)
{
    DenseMatrix a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (int64_t j = 0; j < m.cols(); ++j)
        for (auto& [r, v] : m.col(j).e)
            a[r][j] = v;
    return a;
}

Inertia symmetric_inertia(DenseMatrix a)
{
    Inertia in;
    size_t n = a.size();
    std::vector<char> active(n, 1);
    size_t remaining = n;
    while (remaining > 0) {
        // diagonal pivot
        size_t piv = n;
        for (size_t i = 0; i < n; ++i)
            if (active[i] && sgn(a[i][i]) != 0) {
                piv = i;
                break;
            }
        if (piv < n) {
            (sgn(a[piv][piv]) > 0 ? in.pos : in.neg)++;
            active[piv] = 0;
            --remaining;
            for (size_t j = 0; j < n; ++j) {
                if (!active[j] || sgn(a[j][piv]) == 0)
                    continue;
                Rational f = a[j][piv] / a[piv][piv];
                for (size_t k2 = 0; k2 < n; ++k2)
                    if (active[k2])
                        a[j][k2] -= f * a[piv][k2];
            }
            continue;
        }
        // all active diagonals zero: hyperbolic 2x2 block or done
        size_t bi = n, bj = n;
        for (size_t i = 0; i < n && bi == n; ++i)
            if (active[i])
                for (size_t j = i + 1; j < n; ++j)
                    if (active[j] && sgn(a[i][j]) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
        if (bi == n) {
            in.zero += remaining;
            break;
        }
        in.pos++;
        in.neg++;
        Rational p = a[bi][bj];
        active[bi] = active[bj] = 0;
        remaining -= 2;
        // block elimination with B = [[0,p],[p,0]], zero diagonals
        for (size_t kq = 0; kq < n; ++kq) {
            if (!active[kq])
                continue;
            Rational ki = a[kq][bi], kj = a[kq][bj];
            if (sgn(ki) == 0 && sgn(kj) == 0)
                continue;
            for (size_t l = 0; l < n; ++l)
                if (active[l])
                    a[kq][l] -= (ki * a[bj][l] + kj * a[bi][l]) / p;
        }
    }
    return in;
}

std::optional<std::vector<Rational>> dense_solve(DenseMatrix a, std::vector<Rational> b)
{
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<int64_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = rows;
        for (size_t r = row; r < rows; ++r)
            if (sgn(a[r][col]) != 0) {
                piv = r;
                break;
            }
        if (piv == rows)
            continue;
        std::swap(a[piv], a[row]);
        std::swap(b[piv], b[row]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || sgn(a[r][col]) == 0)
                continue;
            Rational f = a[r][col] / a[row][col];
            for (size_t c = col; c < cols; ++c)
                a[r][c] -= f * a[row][c];
            b[r] -= f * b[row];
        }
        pivot_col.push_back((int64_t)col);
        ++row;
    }
    for (size_t r = row; r < rows; ++r)
        if (sgn(b[r]) != 0)
            return std::nullopt; // inconsistent
    std::vector<Rational> x(cols, Rational(0));
    for (size_t r = 0; r < pivot_col.size(); ++r)
        x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return x;
}

Rational dense_det(DenseMatrix a)
{
    size_t n = a.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r)
            if (sgn(a[r][col]) != 0) {
                piv = r;
                break;
            }
        if (piv == n)
            return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0)
                continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

std::vector<Rational> char_poly(const DenseMatrix& a)
{
    // Faddeev-LeVerrier; fine for the tiny sizes it is used at
    size_t n = a.size();
    std::vector<Rational> c(n + 1, Rational(0));
    c[0] = 1;
    DenseMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (size_t k = 1; k <= n; ++k) {
        // m = a * (m + c_{k-1} I)
        DenseMatrix t = m;
        for (size_t i = 0; i < n; ++i)
            t[i][i] += c[k - 1];
        DenseMatrix nm(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rational s(0);
                for (size_t q = 0; q < n; ++q)
                    s += a[i][q] * t[q][j];
                nm[i][j] = s;
            }
        m = std::move(nm);
        Rational tr(0);
        for (size_t i = 0; i < n; ++i)
            tr += m[i][i];
        c[k] = -tr / (long)k;
    }
    return c;
}

namespace {

int sign_changes_at(const std::vector<std::vector<Rational>>& seq, bool at_infinity)
{
    // at 0+ : sign of lowest nonzero coefficient; at +inf : leading coeff
    int changes = 0, prev = 0;
    for (auto& p : seq) {
        int s = 0;
        if (at_infinity) {
            for (auto& c : p)
                if (sgn(c) != 0) {
                    s = sgn(c);
                    break;
                }
        } else {
            for (auto it = p.rbegin(); it != p.rend(); ++it)
                if (sgn(*it) != 0) {
                    s = sgn(*it);
                    break;
                }
        }
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++changes;
        prev = s;
    }
    return changes;
}

} // namespace

int sturm_positive_roots(const std::vector<Rational>& monic_high_first)
{
    // strip zero roots
    std::vector<Rational> p = monic_high_first;
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
    if (p.size() <= 1)
        return 0;
    auto deriv = [](const std::vector<Rational>& q) {
        std::vector<Rational> d;
        int deg = (int)q.size() - 1;
        for (int i = 0; i < deg; ++i)
            d.push_back(q[i] * (deg - i));
        return d;
    };
    auto rem = [](std::vector<Rational> a, const std::vector<Rational>& b) {
        while (a.size() >= b.size() && !a.empty()) {
            if (sgn(a[0]) == 0) {
                a.erase(a.begin());
                continue;
            }
            Rational f = a[0] / b[0];
            for (size_t i = 0; i < b.size(); ++i)
                a[i] -= f * b[i];
            a.erase(a.begin());
        }
        while (!a.empty() && sgn(a[0]) == 0)
            a.erase(a.begin());
        return a;
    };
    std::vector<std::vector<Rational>> seq = {p, deriv(p)};
    while (!seq.back().empty() && seq.back().size() > 1) {
        auto r = rem(seq[seq.size() - 2], seq.back());
        if (r.empty())
            break;
        for (auto& c : r)
            c = -c;
        seq.push_back(std::move(r));
    }
    return sign_changes_at(seq, false) - sign_changes_at(seq, true);
}

} // namespace stratsig
