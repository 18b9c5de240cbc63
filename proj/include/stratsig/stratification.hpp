// Skeleton filtrations X = X_n > X_{n-2} > ... > X_0, validation against
// the triangulation, stratum components and their adjacency, and intrinsic
// links of stratum simplices.

#ifndef STRATSIG_STRATIFICATION_HPP
#define STRATSIG_STRATIFICATION_HPP

#include "stratsig/simplicial.hpp"

#include <optional>

namespace stratsig {

class Stratification {
public:
    // skeleta[d] = simplices (vertex lists) generating X_d; entries for
    // d = n-2 .. 0; missing/empty means X_d is empty. The complex itself is
    // X_n. Facets of skeleta may be lower-dimensional than d.
    static Stratification build(const SimplicialComplex& k,
                                const std::vector<std::vector<VertexList>>& skeleta);
    // trivial stratification (no singular strata)
    static Stratification trivial(const SimplicialComplex& k);

    const SimplicialComplex& complex() const { return *k_; }
    int n() const { return k_->dim(); }

    // smallest d with the simplex contained in X_d ; n for regular simplices
    int skeleton_level(SimplexId s) const { return level_[linear(s)]; }
    bool is_singular(SimplexId s) const { return skeleton_level(s) < n(); }
    bool skeleton_nonempty(int d) const
    {
        return d >= 0 && d < (int)nonempty_.size() && nonempty_[d];
    }
    // codims k >= 2 with X_{n-k} nonempty (allowability conditions to check)
    const std::vector<int>& singular_codims() const { return codims_; }
    // codims k >= 2 whose open stratum chi_{n-k} is nonempty
    const std::vector<int>& stratum_codims() const { return stratum_codims_; }

    struct Validation {
        bool chain_condition = true;     // X_{d-1} subset of X_d
        bool dimensions_ok = true;       // dim X_d <= d and X_{n-1} == X_{n-2}
        bool flag_like = true;           // vertex set of any simplex inside X_d spans
                                         // a simplex of X_d
        std::vector<std::string> issues;
        bool ok() const { return chain_condition && dimensions_ok && flag_like; }
    };
    const Validation& validation() const { return valid_; }

    // --- stratum components ---------------------------------------------
    // A component of the open stratum chi_d, carried by its d-simplices.
    struct Component {
        int d = -1;                         // stratum dimension
        std::vector<SimplexId> tops;        // d-simplices of the component
        SimplexId rep;                      // lexicographically smallest top
    };
    // all components of chi_d (empty vector if stratum empty)
    const std::vector<Component>& components(int d) const;
    // adjacency inside one stratum: pairs of component-top simplices sharing
    // a (d-1)-wall not in X_{d-1}; used for transport. Walls within a single
    // component also listed (loops in the dual graph).
    struct Wall {
        SimplexId a, b; // adjacent d-simplices
        SimplexId face; // shared (d-1)-simplex
    };
    const std::vector<Wall>& walls(int d) const;

    int64_t linear(SimplexId s) const { return off_[s.d] + s.idx; }

private:
    friend struct StratAccess;
    const SimplicialComplex* k_ = nullptr;
    std::vector<int> level_;
    std::vector<int64_t> off_;
    std::vector<bool> nonempty_;
    std::vector<int> codims_;
    std::vector<int> stratum_codims_;
    Validation valid_;
    std::vector<std::vector<Component>> comps_;
    std::vector<std::vector<Wall>> walls_;
};

// Intrinsic link of a stratum simplex: the ascending link with the induced
// stratification and a deterministic orientation of its own.
struct IntrinsicLink {
    SimplicialComplex complex;                // order complex of proper cofaces
    std::vector<SimplexId> vertex_to_coface;  // link vertex -> coface in K
    Stratification strat;                     // induced filtration
    OrientationData orientation;
    int stratum_dim = -1;                     // d of the carrying stratum simplex
    SimplexId carrier;                        // the stratum simplex
};
class NotAStratumSimplex : public std::runtime_error {
public:
    NotAStratumSimplex() : std::runtime_error("simplex is not in the requested stratum") {}
};
IntrinsicLink intrinsic_link(const Stratification& s, SimplexId stratum_simplex);

} // namespace stratsig

#endif
