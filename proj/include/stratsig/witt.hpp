// Witt-condition detection: middle intersection homology of the intrinsic
// links of odd-codimension strata, computed per stratum component.

#ifndef STRATSIG_WITT_HPP
#define STRATSIG_WITT_HPP

#include "stratsig/wcomplex.hpp"

#include <memory>

namespace stratsig {

// Everything needed to work inside one intrinsic link. The ascending-link
// complex is already the subdivided classical link, so the W complexes are
// built on it directly; its middle homology basis is the reference basis
// for Lagrangian coefficients.
struct LinkContext {
    IntrinsicLink link;
    PrimeLevel pl; // over link.complex
    WComplex wm, wn;
    HomologyBasis h_m; // homology of wm.gc
    int middle = -1;   // s, for a 2s-dimensional link

    LinkContext() = default;
    LinkContext(const LinkContext&) = delete;
    LinkContext(LinkContext&&) = delete;
};

std::unique_ptr<LinkContext> make_link_context(const Stratification& strat, SimplexId carrier);

struct WittComponentVerdict {
    SimplexId rep;                  // lexicographically smallest top simplex
    std::vector<int64_t> link_ih_m; // IH^m ranks of the intrinsic link
    int64_t middle_rank = 0;
    bool witt = false;
};

struct WittStratumVerdict {
    int codim = 0;       // odd, 2l+1
    int stratum_dim = 0; // n - codim
    std::vector<WittComponentVerdict> components;
    bool witt() const
    {
        for (auto& c : components)
            if (!c.witt)
                return false;
        return true;
    }
};

struct WittReport {
    std::vector<WittStratumVerdict> strata; // odd codims only, ascending codim
    bool witt() const
    {
        for (auto& s : strata)
            if (!s.witt())
                return false;
        return true;
    }
};

WittReport witt_check(const Stratification& strat);

} // namespace stratsig

#endif
