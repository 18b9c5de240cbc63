// Small dense exact-rational routines: Sylvester inertia via symmetric
// elimination, linear solves, determinants, characteristic polynomials
// (Faddeev-LeVerrier) and Sturm root counting for the tiny cross-checks.

#ifndef STRATSIG_DENSE_HPP
#define STRATSIG_DENSE_HPP

#include "stratsig/sparse.hpp"

#include <vector>

namespace stratsig {

using DenseMatrix = std::vector<std::vector<Rational>>;

DenseMatrix to_dense(const SparseMatrix& m);

struct Inertia {
    int64_t pos = 0, neg = 0, zero = 0;
};

// exact inertia of a symmetric matrix (consumed); diagonal pivots first,
// zero-diagonal hyperbolic 2x2 blocks contribute (+1, -1)
Inertia symmetric_inertia(DenseMatrix a);

// solve a x = b ; nullopt if singular/inconsistent
std::optional<std::vector<Rational>> dense_solve(DenseMatrix a, std::vector<Rational> b);

Rational dense_det(DenseMatrix a);

// characteristic polynomial coefficients, highest degree first (monic)
std::vector<Rational> char_poly(const DenseMatrix& a);

// number of real roots in (0, +inf) counted without multiplicity via Sturm
int sturm_positive_roots(const std::vector<Rational>& monic_high_first);

} // namespace stratsig

#endif
