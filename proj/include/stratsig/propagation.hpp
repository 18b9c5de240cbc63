// Geometric-control audits: how far a chain map moves supports, measured
// against a control map sending every basis element to a point of the
// complex (its pivot simplex's barycenter). Distances are exact: squared
// euclidean when coordinates exist, else graph distance on the 1-skeleton.

#ifndef STRATSIG_PROPAGATION_HPP
#define STRATSIG_PROPAGATION_HPP

#include "stratsig/wcomplex.hpp"

namespace stratsig {

struct ControlPoints {
    // one control vertex of K' per basis element, per degree
    std::vector<std::vector<int32_t>> vertex;
};

// control vertex = last vertex of the pivot simplex of each basis chain
ControlPoints control_points(const WEnvironment& env, const WComplex& w);
// control for the dual complex (degree k holds cochains of degree n-k)
ControlPoints control_points_dual(const WEnvironment& env, const WComplex& w);

struct PropagationAudit {
    bool euclidean = false;      // squared distances when true
    Rational radius;             // max control distance over nonzero entries
    Rational max_coeff;          // max |matrix coefficient|
    int64_t entries = 0;
    std::vector<int64_t> row_support_max; // per degree: max nonzeros per row
    std::vector<int64_t> col_support_max; // per degree: max nonzeros per column
};

// audit a family of per-degree matrices mapping src basis elements to dst;
// force_graph measures combinatorially even when coordinates exist
PropagationAudit propagation(const WEnvironment& env, const std::vector<SparseMatrix>& comp,
                             const ControlPoints& src, const ControlPoints& dst,
                             bool force_graph = false);

// diagonal-support audit for geometric-module locality: every component must
// map the stalk over a simplex into stalks over its faces/cofaces within the
// stated graph radius
bool geometric_module_locality(const WEnvironment& env, const SparseMatrix& m,
                               const ControlPoints& src, const ControlPoints& dst, int degree_src,
                               int degree_dst, int radius);

} // namespace stratsig

#endif
