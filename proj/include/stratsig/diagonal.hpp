// Diagonal approximation by acyclic models on the W complexes: the base
// case sends allowable vertices to x (x) x, singleton elements take the
// Alexander-Whitney chain when its faces stay allowable, and everything
// else is solved inside the model cone of the element (the closure of its
// support), after the cone's tensor acyclicity has been verified.

#ifndef STRATSIG_DIAGONAL_HPP
#define STRATSIG_DIAGONAL_HPP

#include "stratsig/wcomplex.hpp"

namespace stratsig {

// chain in (wm ⊗ wn) written over pairs of ambient K'-simplices
struct TensorAmbChain {
    // key packs (a, i, j): x-part degree a, ambient simplex indices
    std::vector<std::pair<uint64_t, Rational>> e;

    static uint64_t key(int a, int32_t i, int32_t j)
    {
        return ((uint64_t)a << 56) | ((uint64_t)(uint32_t)i << 28) | (uint64_t)(uint32_t)j;
    }
    static int key_a(uint64_t k) { return (int)(k >> 56); }
    static int32_t key_i(uint64_t k) { return (int32_t)((k >> 28) & 0xFFFFFFF); }
    static int32_t key_j(uint64_t k) { return (int32_t)(k & 0xFFFFFFF); }

    void push(int a, int32_t i, int32_t j, const Rational& c)
    {
        if (sgn(c) != 0)
            e.emplace_back(key(a, i, j), c);
    }
    void sort_fix();
    bool empty() const { return e.empty(); }
};

void axpy(TensorAmbChain& r, const Rational& c, const TensorAmbChain& a);
bool equal(const TensorAmbChain& a, const TensorAmbChain& b);

// boundary in the ambient tensor coordinates
TensorAmbChain tensor_amb_boundary(const WEnvironment& env, int degree, const TensorAmbChain& v);

class AcyclicityFailure : public std::runtime_error {
public:
    AcyclicityFailure(std::string cone, int degree)
        : std::runtime_error("tensor complex of model cone " + cone +
                             " has homology in degree " + std::to_string(degree)),
          cone_label(std::move(cone)), at_degree(degree)
    {
    }
    std::string cone_label;
    int at_degree;
};

struct DiagonalApproximation {
    const WEnvironment* env = nullptr;
    WComplex w0;                                  // domain complex W^0
    std::vector<std::vector<TensorAmbChain>> val; // per degree, per w0 basis element
    struct LogEntry {
        int degree;
        int64_t element;
        bool aw_path; // Alexander-Whitney vs model-cone solve
        std::string model;
    };
    std::vector<LogEntry> log;

    TensorAmbChain apply(int k, const SparseVec& w0_chain) const;
};

// pivot_order: flips the deterministic processing order inside model solves
// (used by the uniqueness-up-to-homotopy property test).
DiagonalApproximation diagonal_approximation(const WEnvironment& env, const WComplex& wm,
                                             const WComplex& wn, bool reverse_pivots = false);

} // namespace stratsig

#endif
