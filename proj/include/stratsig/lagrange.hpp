// Intersection forms on middle link homology, exact Lagrangian search
// (Darboux in the skew case, bounded-height hyperbolic peeling in the
// symmetric case), transport of link homology across stratum walls, and
// compatibility of a Lagrangian assignment around loops of the stratum.

#ifndef STRATSIG_LAGRANGE_HPP
#define STRATSIG_LAGRANGE_HPP

#include "stratsig/duality.hpp"
#include "stratsig/witt.hpp"

#include <map>

namespace stratsig {

class DualityUnavailable : public std::runtime_error {
public:
    explicit DualityUnavailable(const std::string& m) : std::runtime_error(m) {}
};
class TransportNotIso : public std::runtime_error {
public:
    TransportNotIso() : std::runtime_error("wall inclusion does not induce an isomorphism") {}
};

struct IntersectionForm {
    int s = -1;          // middle degree of the 2s-dimensional link
    int symmetry = 1;    // (-1)^s
    SparseMatrix gram;   // on the link's IH^m middle basis
    bool symmetry_ok = false;
    bool nondegenerate = false;
};

// Builds the link's own duality package; the link must be orientable and
// Witt (else DualityUnavailable, the recursive Lagrange requirement).
IntersectionForm intersection_form(const LinkContext& lc);

struct LagrangianResult {
    bool found = false;
    std::vector<SparseVec> basis; // over the middle homology basis
    std::string reason;           // "signature != 0" / "search exhausted" / ""
};
LagrangianResult find_lagrangian(const IntersectionForm& form, long height_bound = 10000);

// gram-vanishing check of a candidate subspace
bool lagrangian_valid(const IntersectionForm& form, const std::vector<SparseVec>& basis);

// ---- transport -------------------------------------------------------------
// phi: IH^m_s(L(a)) -> IH^m_s(L(b)) through the link of the shared wall.
struct Transport {
    SparseMatrix phi;
    bool iso = false;
};
Transport transport(const Stratification& strat, const LinkContext& la, const LinkContext& lb,
                    SimplexId wall);

// chain-level inclusion of an intrinsic link into the ascending link of a
// face of its carrier; induced matrix on middle homology
SparseMatrix link_inclusion_on_middle(const LinkContext& small, const LinkContext& big);

// ---- assignments -------------------------------------------------------------
struct LagrangeAssignment {
    // (stratum dim, component index) -> H_lag basis over the component
    // representative link's middle homology basis
    std::map<std::pair<int, int>, std::vector<SparseVec>> by_component;
    bool has(int d, int c) const { return by_component.count({d, c}) > 0; }
};

struct CompatibilityVerdict {
    struct Loop {
        int stratum_dim;
        std::vector<SimplexId> walls;
        bool preserved;
    };
    std::vector<Loop> loops;
    std::vector<std::string> issues; // transports that failed to be isos etc.
    bool compatible() const
    {
        if (!issues.empty())
            return false;
        for (auto& l : loops)
            if (!l.preserved)
                return false;
        return true;
    }
};

// For a generating set of edge loops of each stratum's dual graph, check the
// composite transports map H_lag onto H_lag (subspace equality over Q).
// Also checks adjacent components' assignments match under single transports.
CompatibilityVerdict check_compatibility(const Stratification& strat,
                                         const LagrangeAssignment& assign, int stratum_dim,
                                         std::map<int64_t, std::unique_ptr<LinkContext>>& links);

// automatic search: per component of every non-Witt odd-codim stratum
LagrangeAssignment auto_lagrangian(const Stratification& strat, const WittReport& witt,
                                   long height_bound = 10000);

} // namespace stratsig

#endif
