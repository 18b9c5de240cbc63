// Graded chain complexes over Q with sparse boundary matrices, homology
// with deterministic representatives, chain maps with per-degree sign
// conventions, tensor products and (complement-reindexed) duals.

#ifndef STRATSIG_CHAIN_HPP
#define STRATSIG_CHAIN_HPP

#include "stratsig/sparse.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace stratsig {

// Boundary matrices are shared between copies (complexes are immutable once
// built; at subdivision scale a deep copy would be hundreds of MB).
class GradedComplex {
public:
    GradedComplex() = default;
    GradedComplex(int top, std::vector<int64_t> dims, std::vector<SparseMatrix> bnd)
        : top_(top), dims_(std::move(dims))
    {
        bnd_.reserve(bnd.size());
        for (auto& m : bnd)
            bnd_.push_back(std::make_shared<const SparseMatrix>(std::move(m)));
    }
    GradedComplex(int top, std::vector<int64_t> dims,
                  std::vector<std::shared_ptr<const SparseMatrix>> bnd)
        : top_(top), dims_(std::move(dims)), bnd_(std::move(bnd))
    {
    }

    int top() const { return top_; }
    int64_t dim(int k) const { return (k < 0 || k > top_) ? 0 : dims_[k]; }
    int64_t total_dim() const;

    // boundary: dim(k-1) x dim(k); boundary(0) has zero rows unless set
    const SparseMatrix& boundary(int k) const { return *bnd_[k]; }
    std::shared_ptr<const SparseMatrix> boundary_shared(int k) const { return bnd_[k]; }

    void set_label(int k, int64_t i, std::string s);
    const std::string& label(int k, int64_t i) const;
    bool has_labels() const { return !labels_.empty(); }

    void verify_dd() const; // throws unless d.d == 0 exactly

    static GradedComplex zero(int top);

private:
    int top_ = -1;
    std::vector<int64_t> dims_;
    std::vector<std::shared_ptr<const SparseMatrix>> bnd_;
    std::vector<std::vector<std::string>> labels_;
};

// Simplicial chains of a complex as a GradedComplex.
class SimplicialComplex;
GradedComplex simplicial_chains(const SimplicialComplex& k);

// ---- homology ---------------------------------------------------------------
struct HomologyBasis {
    std::vector<int64_t> ranks;                  // degree 0..top
    std::vector<std::vector<SparseVec>> reps;    // canonical cycle representatives
    std::vector<SparseMatrix> boundary_basis;    // reduced image basis of boundary(k+1)
    std::vector<Reduction> boundary_red;         // its reduction (for class expression)

    int64_t rank(int k) const
    {
        return (k < 0 || k >= (int)ranks.size()) ? 0 : ranks[k];
    }
    // coordinates of a cycle in the homology basis; throws if not a cycle of
    // the complex the basis was computed from
    std::vector<Rational> express(int k, const SparseVec& cycle) const;
};

// Full computation (kernel tracking; deterministic representatives).
HomologyBasis homology(const GradedComplex& c);

// Ranks only; reps empty. Cheap at large scale.
std::vector<int64_t> homology_ranks(const GradedComplex& c);

// Ranks computed exactly; representatives taken from caller-provided seed
// cycles (verified: cycles, independent mod boundaries, count matches rank).
HomologyBasis homology_with_seeds(const GradedComplex& c,
                                  const std::vector<std::vector<SparseVec>>& seeds);

// ---- chain maps --------------------------------------------------------------
// comp[k]: dst.dim(k) x src.dim(k); commutation verified as
//   dst.boundary(k) * comp[k] == sign[k] * comp[k-1] * src.boundary(k)
struct ChainMap {
    const GradedComplex* src = nullptr;
    const GradedComplex* dst = nullptr;
    std::vector<SparseMatrix> comp;
    std::vector<int> sign; // per degree; empty means all +1

    int sgn(int k) const { return sign.empty() ? 1 : sign[k]; }
    SparseVec apply(int k, const SparseVec& v) const { return comp[k].apply(v); }
};

bool verify_chain_map(const ChainMap& f);

struct QuasiIsoReport {
    std::vector<bool> degree_ok;
    bool all() const
    {
        for (bool b : degree_ok)
            if (!b)
                return false;
        return true;
    }
};
// Checked by rank of the induced matrix between homology bases.
QuasiIsoReport verify_quasi_iso(const ChainMap& f, const HomologyBasis& hsrc,
                                const HomologyBasis& hdst);

// Induced matrix on homology at degree k (rows: dst classes, cols: src classes).
SparseMatrix induced_on_homology(const ChainMap& f, int k, const HomologyBasis& hsrc,
                                 const HomologyBasis& hdst);

// Mapping cone (plain sign convention); acyclic iff f is a quasi-iso.
GradedComplex mapping_cone(const ChainMap& f);

// ---- tensor product -----------------------------------------------------------
struct TensorComplex {
    GradedComplex gc;
    // flat index of x_i (x) y_j at degree k with |x| = a
    int64_t index(int k, int a, int64_t i, int64_t j) const;
    // inverse lookup
    struct Part {
        int a;
        int64_t i, j;
    };
    Part part(int k, int64_t flat) const;

    const GradedComplex* c = nullptr;
    const GradedComplex* d = nullptr;
    std::vector<std::vector<int64_t>> offset; // offset[k][a]
};
TensorComplex tensor(const GradedComplex& c, const GradedComplex& d);

// ---- dual ---------------------------------------------------------------------
// Complement-reindexed dual: degree k of the result holds cochains of degree
// n_top - k, so the result is again a chain complex; dualize twice returns a
// complex equal to the original.
GradedComplex dualize(const GradedComplex& c);

// ---- boundary solving -----------------------------------------------------------
class NoSolution : public std::runtime_error {
public:
    NoSolution() : std::runtime_error("cycle is not a boundary") {}
};

// Caches one tracked reduction per degree of a fixed complex.
class BoundarySolver {
public:
    explicit BoundarySolver(const GradedComplex& c) : c_(&c), red_(c.top() + 2) {}
    // find w of degree k+1 with boundary(k+1) w = z (z of degree k)
    std::optional<SparseVec> try_solve(int k, const SparseVec& z);
    SparseVec solve(int k, const SparseVec& z);
    // rank of H_k, computed from the cached reductions
    int64_t homology_rank(int k);

private:
    const GradedComplex* c_;
    std::vector<std::optional<Reduction>> red_; // red_[k]: reduction of boundary(k)
    const Reduction& reduction(int k);
};

} // namespace stratsig

#endif
