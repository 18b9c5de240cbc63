#include "doctest.h"
#include "helpers.hpp"
#include "stratsig/sparse.hpp"

#include <random>

using namespace stratsig;

static SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, int density_pct)
{
    SparseMatrix m(rows, cols);
    std::uniform_int_distribution<int> pct(0, 99), val(-3, 3);
    for (int j = 0; j < cols; ++j) {
        for (int r = 0; r < rows; ++r)
            if (pct(rng) < density_pct)
                m.col(j).push(r, Rational(val(rng)));
        m.col(j).sort_fix();
    }
    return m;
}

TEST_CASE("axpy and dot")
{
    SparseVec a, b;
    a.push(0, rat(1));
    a.push(3, rat(2));
    a.sort_fix();
    b.push(3, rat(-1));
    b.push(5, rat(4));
    b.sort_fix();
    axpy(a, rat(2), b);
    CHECK(a.coeff(0) == rat(1));
    CHECK(a.coeff(3) == rat(0));
    CHECK(a.coeff(5) == rat(8));
    CHECK(dot(a, b) == rat(32));
}

TEST_CASE("rank agrees with dense oracle on random matrices")
{
    std::mt19937 rng(7);
    for (int it = 0; it < 30; ++it) {
        auto m = random_matrix(rng, 8, 10, 35);
        CHECK(rank(m) == test_helpers::dense_rank(m));
    }
}

TEST_CASE("kernel vectors from tracked reduction annihilate the matrix")
{
    std::mt19937 rng(11);
    auto m = random_matrix(rng, 6, 9, 40);
    Reduction red = reduce_columns(m, true);
    int kernel = 0;
    for (int64_t j = 0; j < m.cols(); ++j)
        if (red.column_is_zero(j)) {
            ++kernel;
            CHECK(m.apply(red.basis->col(j)).empty());
        }
    CHECK(kernel == m.cols() - red.rank);
}

TEST_CASE("solve_in_span finds exact preimages")
{
    std::mt19937 rng(3);
    auto m = random_matrix(rng, 7, 5, 50);
    Reduction red = reduce_columns(m, true);
    SparseVec x;
    x.push(1, rat(2));
    x.push(4, rat(-5, 3));
    x.sort_fix();
    SparseVec z = m.apply(x);
    auto w = solve_in_span(red, m, z);
    REQUIRE(w.has_value());
    CHECK(equal(m.apply(*w), z));
    // off-span vector
    SparseVec probe;
    for (int r = 0; r < 7; ++r)
        probe.push(r, rat(1 + r * r));
    probe.sort_fix();
    if (red.rank < 7) {
        auto residual = red.reduce_vector(probe);
        if (!residual.empty())
            CHECK_FALSE(solve_in_span(red, m, probe).has_value());
    }
}

TEST_CASE("transpose and multiply")
{
    std::mt19937 rng(19);
    auto a = random_matrix(rng, 5, 4, 50);
    auto b = random_matrix(rng, 4, 6, 50);
    auto ab = a.mul(b);
    auto abt = ab.transpose();
    auto btat = b.transpose().mul(a.transpose());
    for (int64_t j = 0; j < abt.cols(); ++j)
        CHECK(equal(abt.col(j), btat.col(j)));
}
