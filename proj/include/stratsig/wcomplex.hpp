// The filtered chain complexes W^p on the barycentric subdivision: allowable
// simplex sets, kernel bases with star-local pivots, the induced graded
// complex, and the canonical subdivision / last-vertex chain maps used to
// seed homology representatives at scale.

#ifndef STRATSIG_WCOMPLEX_HPP
#define STRATSIG_WCOMPLEX_HPP

#include "stratsig/chain.hpp"
#include "stratsig/perversity.hpp"
#include "stratsig/stratification.hpp"

#include <memory>

namespace stratsig {

// A T'-like complex: flag-structured, with a skeleton level attached to
// every vertex (levels are monotone along each simplex). Allowability and
// the W construction only need this much; both the barycentric subdivision
// of an input and an intrinsic link qualify.
class PrimeLevel {
public:
    PrimeLevel() = default;
    PrimeLevel(const SimplicialComplex& prime, std::vector<int> vertex_levels, int n,
               std::vector<int> codims);

    const SimplicialComplex& prime() const { return *prime_; }
    int n() const { return n_; }
    int vertex_level(int32_t pv) const { return vlevel_[pv]; }
    // dim of the intersection of a simplex with X_e ; -1 when empty
    int meet_dim(int d, int64_t idx, int e) const;
    bool allowable(const Perversity& p, int d, int64_t idx) const;
    const std::vector<char>& allowable_flags(const Perversity& p, int d) const;
    const std::vector<int>& check_codims() const { return codims_; }

    GradedComplex prime_chains() const { return simplicial_chains(*prime_); }
    const SparseMatrix& ambient_boundary(int d) const;
    std::shared_ptr<const SparseMatrix> ambient_boundary_shared(int d) const;

protected:
    const SimplicialComplex* prime_ = nullptr;
    std::vector<int> vlevel_;
    int n_ = -1;
    std::vector<int> codims_; // codims whose allowability condition binds
    mutable std::unordered_map<std::string, std::vector<std::vector<char>>> allow_cache_;
    mutable std::vector<std::shared_ptr<const SparseMatrix>> bnd_cache_;
};

// prime level of a stratification's own complex (viewed as already
// subdivided, e.g. an intrinsic link)
PrimeLevel prime_level_of(const SimplicialComplex& complex, const Stratification& strat);

// Shared per-input data: K' and skeleton levels of its vertices.
class WEnvironment : public PrimeLevel {
public:
    WEnvironment(const SimplicialComplex& k, const Stratification& strat);

    const SimplicialComplex& base() const { return *k_; }
    const Stratification& strat() const { return *strat_; }
    const BarycentricSubdivision& bs() const { return bs_; }

private:
    const SimplicialComplex* k_;
    const Stratification* strat_;
    BarycentricSubdivision bs_;
};

// A W^p complex: subspace bases over the chains of K'.
struct WComplex {
    GradedComplex gc;
    // basis chains over ambient K'-simplices, pivot = own largest row,
    // pivots distinct within a degree
    std::vector<std::vector<SparseVec>> basis;
    std::vector<std::unordered_map<int32_t, int64_t>> pivot_to_basis;
    std::vector<char> all_free; // per degree: basis is exactly the allowable simplices
    std::string perversity_name;

    SparseVec to_ambient(int k, const SparseVec& v) const;
    // express an ambient chain; nullopt when outside the subspace
    std::optional<SparseVec> express(int k, const SparseVec& ambient) const;
    SparseVec require_express(int k, const SparseVec& ambient) const;
    bool contains(int k, const SparseVec& ambient) const { return express(k, ambient).has_value(); }
};

WComplex w_complex(const PrimeLevel& env, const Perversity& p);

// W restricted to a subcomplex: chains supported on the subcomplex whose
// boundary also is (intersection with the subspace happens chainwise).
// keep[d][idx] marks ambient K'-simplices of the subcomplex.
WComplex restrict_w(const PrimeLevel& env, const WComplex& w,
                    const std::vector<std::vector<char>>& keep);

// Subspace inclusion test (per degree) and the inclusion chain map.
bool w_subspace_of(const WComplex& a, const WComplex& b);
ChainMap w_inclusion(const WComplex& a, const WComplex& b);

// ---- canonical chain maps on the subdivision ------------------------------
// subdivision operator sd : C_*(K) -> C_*(K'), sd(s) = (-1)^{dim s} shat * sd(ds)
ChainMap subdivision_operator(const WEnvironment& env, const GradedComplex& ck,
                              const GradedComplex& ckp);
// last-vertex retraction C_*(K') -> C_*(K) (degenerate chains collapse to 0)
ChainMap last_vertex_operator(const WEnvironment& env, const GradedComplex& ckp,
                              const GradedComplex& ck);

// ---- cone formula -----------------------------------------------------------
// expected IH ranks of C(Z) from IH of Z: rank_i = rank IH_i(Z) for
// i < dimZ - p(dimZ+1), else 0
std::vector<int64_t> cone_formula_expected(const std::vector<int64_t>& ih_z, int dim_z,
                                           const Perversity& p_cone);

} // namespace stratsig

#endif
