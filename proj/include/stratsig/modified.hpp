// The Lagrangian-modified interpolation complexes: cones over middle link
// cycles at non-Witt strata are split by the assignment into Lagrangian,
// complementary and nullhomologous parts, the first and last joining the
// lower-middle chains while the complementary part leaves the upper-middle
// ones. Iterates over non-Witt strata in decreasing codimension.

#ifndef STRATSIG_MODIFIED_HPP
#define STRATSIG_MODIFIED_HPP

#include "stratsig/lagrange.hpp"

namespace stratsig {

class MissingAssignment : public std::runtime_error {
public:
    explicit MissingAssignment(const std::string& m) : std::runtime_error(m) {}
};
class IncompatibleAssignment : public std::runtime_error {
public:
    explicit IncompatibleAssignment(const std::string& m) : std::runtime_error(m) {}
};
class FactorizationFailed : public std::runtime_error {
public:
    explicit FactorizationFailed(const std::string& m) : std::runtime_error(m) {}
};

struct UDecomposition {
    int codim = 0;
    int stratum_dim = 0;
    struct DegreeInfo {
        int degree;
        int64_t dim_u = 0;    // complement dimension at this degree
        int64_t dim_lag = 0;  // classes inside H_lag (net of boundaries)
        int64_t dim_perp = 0; // classes outside
        int64_t dim_o = 0;    // nullhomologous cone directions
    };
    std::vector<DegreeInfo> degrees;
};

struct ModifiedPair {
    WComplex wm, wn;
    bool trivial = true; // Witt input: both equal the plain complexes
    std::vector<UDecomposition> stages;
};

// Decomposition report for one non-Witt stratum (requires an assignment for
// every component of that stratum).
UDecomposition decompose_U(const WEnvironment& env, const Stratification& strat, int stratum_dim,
                           const LagrangeAssignment& assign,
                           std::map<int64_t, std::unique_ptr<LinkContext>>& links);

// The full construction. Throws MissingAssignment / IncompatibleAssignment;
// FactorizationFailed if the cone structure of the complement fails.
ModifiedPair modified_chains(const WEnvironment& env, const Stratification& strat,
                             const WittReport& witt, const LagrangeAssignment& assign,
                             std::map<int64_t, std::unique_ptr<LinkContext>>& links);

} // namespace stratsig

#endif
