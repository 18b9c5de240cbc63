// Shared fixtures: small reference complexes and an independent dense rank
// oracle used to cross-check the sparse reduction engine.

#ifndef STRATSIG_TEST_HELPERS_HPP
#define STRATSIG_TEST_HELPERS_HPP

#include "stratsig/chain.hpp"
#include "stratsig/simplicial.hpp"

#include <random>

namespace test_helpers {

using namespace stratsig;

inline SimplicialComplex boundary_delta(int n)
{
    // boundary of the n-simplex on vertices 0..n
    std::vector<VertexList> fac;
    for (int skip = 0; skip <= n; ++skip) {
        VertexList f;
        for (int v = 0; v <= n; ++v)
            if (v != skip)
                f.push_back(v);
        fac.push_back(f);
    }
    return SimplicialComplex::from_facets(fac);
}

// Csaszar torus: the 7-vertex triangulation of T^2.
inline SimplicialComplex torus7()
{
    std::vector<VertexList> fac = {
        {0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {2, 3, 5}, {3, 5, 6}, {3, 4, 6},
        {4, 6, 0}, {4, 5, 0}, {5, 0, 1}, {5, 6, 1}, {6, 1, 2}, {6, 0, 2}, {0, 2, 3}};
    return SimplicialComplex::from_facets(fac);
}

// 6-vertex real projective plane.
inline SimplicialComplex rp2_6()
{
    std::vector<VertexList> fac = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                                   {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
    return SimplicialComplex::from_facets(fac);
}

// suspension over a complex: two fresh apexes
inline SimplicialComplex suspension(const SimplicialComplex& z, int32_t north, int32_t south)
{
    std::vector<VertexList> fac;
    for (auto f : z.facets()) {
        auto v = z.verts(f);
        VertexList a(v.begin(), v.end()), b(v.begin(), v.end());
        a.push_back(north);
        b.push_back(south);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        fac.push_back(a);
        fac.push_back(b);
    }
    return SimplicialComplex::from_facets(fac);
}

// Dense rational Gaussian elimination, written independently of the sparse
// engine, used as a rank oracle.
inline int64_t dense_rank(const SparseMatrix& m)
{
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (int64_t j = 0; j < m.cols(); ++j)
        for (auto& [r, v] : m.col(j).e)
            a[r][j] = v;
    int64_t rank = 0;
    int64_t row = 0;
    for (int64_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        int64_t piv = -1;
        for (int64_t r = row; r < m.rows(); ++r)
            if (sgn(a[r][col]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[piv], a[row]);
        for (int64_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(a[r][col]) == 0)
                continue;
            Rational f = a[r][col] / a[row][col];
            for (int64_t c = col; c < m.cols(); ++c)
                a[r][c] -= f * a[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace test_helpers

#endif
