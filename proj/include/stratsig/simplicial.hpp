// Abstract ordered simplicial complexes with optional exact rational
// coordinates: closure, star/link, cones, joins-with-a-point, barycentric
// and standard (edgewise) subdivision, staircase products, orientation and
// pseudomanifold validation.

#ifndef STRATSIG_SIMPLICIAL_HPP
#define STRATSIG_SIMPLICIAL_HPP

#include "stratsig/rational.hpp"
#include "stratsig/sparse.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace stratsig {

struct SimplexId {
    int16_t d = -1;
    int32_t idx = -1;
    bool valid() const { return d >= 0; }
    bool operator==(const SimplexId&) const = default;
    auto operator<=>(const SimplexId&) const = default;
};

using VertexList = std::vector<int32_t>;

class SimplexNotFound : public std::runtime_error {
public:
    SimplexNotFound() : std::runtime_error("simplex not found in complex") {}
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    // Facets given as vertex lists (any order, deduplicated); closure is
    // generated. Dimension is the max facet dimension.
    static SimplicialComplex from_facets(const std::vector<VertexList>& facets);

    // Builder used by subdivision code: all simplices listed explicitly,
    // must already be face-closed. Verified in debug only.
    static SimplicialComplex from_all_simplices(std::vector<std::vector<VertexList>> by_dim);

    int dim() const { return dim_; }
    int64_t count(int d) const { return (d < 0 || d > dim_) ? 0 : counts_[d]; }
    int64_t total_count() const;

    std::span<const int32_t> verts(int d, int64_t idx) const
    {
        return {flat_[d].data() + (int64_t)(d + 1) * idx, (size_t)(d + 1)};
    }
    std::span<const int32_t> verts(SimplexId s) const { return verts(s.d, s.idx); }

    std::optional<SimplexId> find(std::span<const int32_t> sorted_verts) const;
    SimplexId require(std::span<const int32_t> sorted_verts) const;
    bool contains(std::span<const int32_t> sorted_verts) const
    {
        return find(sorted_verts).has_value();
    }

    const std::vector<SimplexId>& facets() const { return facets_; }
    const std::vector<int32_t>& vertex_ids() const { return vertex_ids_; }

    // Simplicial boundary: rows index (d-1)-simplices, columns d-simplices,
    // signs (-1)^i for dropping the i-th vertex.
    SparseMatrix boundary_matrix(int d) const;

    // Classical star and link of a simplex (closed star; both are
    // subcomplexes on the same vertex ids).
    SimplicialComplex star(std::span<const int32_t> s) const;
    SimplicialComplex link(std::span<const int32_t> s) const;
    std::vector<SimplexId> cofaces(std::span<const int32_t> s) const;

    // Euler characteristic.
    int64_t euler() const;

    // --- coordinates -----------------------------------------------------
    bool has_coords() const { return !coords_.empty(); }
    const std::vector<Rational>& coord(int32_t vertex) const;
    void set_coord(int32_t vertex, std::vector<Rational> c);
    // Standard-basis embedding for abstract inputs (vertex i -> e_i).
    void assign_canonical_coords();
    // Exact squared euclidean distance between two vertices.
    Rational dist2(int32_t u, int32_t v) const;

    // --- derived complexes -----------------------------------------------
    SimplicialComplex relabeled(const std::unordered_map<int32_t, int32_t>& perm) const;
    static SimplicialComplex disjoint_union(const SimplicialComplex& a,
                                            const SimplicialComplex& b,
                                            int32_t offset_b);

    int32_t max_vertex_id() const;

private:
    friend SimplicialComplex cone(const SimplicialComplex&, int32_t);
    int dim_ = -1;
    std::vector<std::vector<int32_t>> flat_;     // flat_[d]: (d+1)*count ids, blocks sorted lex
    std::vector<int64_t> counts_;
    std::vector<SimplexId> facets_;
    std::vector<int32_t> vertex_ids_;            // sorted distinct vertex ids
    std::unordered_map<uint64_t, std::vector<SimplexId>> index_;
    std::vector<std::vector<Rational>> coords_;  // by position in vertex_ids_
    std::unordered_map<int32_t, int32_t> vpos_;  // vertex id -> position

    void build_index();
    void collect_facets();
    static uint64_t hash_verts(std::span<const int32_t> v);
};

// ---- cone / join with a fresh apex ---------------------------------------
SimplicialComplex cone(const SimplicialComplex& base, int32_t apex);

// ---- barycentric subdivision ----------------------------------------------
struct BarycentricSubdivision {
    SimplicialComplex prime;             // K'
    // K'-vertex id -> simplex of K (id equals linear index by (dim, idx))
    std::vector<SimplexId> vertex_to_simplex;
    std::vector<int64_t> dim_offset;     // K-simplex (d, idx) -> K'-vertex id = dim_offset[d]+idx
    int64_t vertex_id(SimplexId s) const { return dim_offset[s.d] + s.idx; }
};
BarycentricSubdivision barycentric_subdivision(const SimplicialComplex& k);

// ---- standard (edgewise) subdivision Sub(K) -------------------------------
struct StandardSubdivision {
    SimplicialComplex sub;
    // Sub-vertex id -> (a, b) original vertices with a <= b, midpoint (a+b)/2
    std::vector<std::pair<int32_t, int32_t>> vertex_pair;
};
StandardSubdivision standard_subdivision(const SimplicialComplex& k);

// ---- staircase product -----------------------------------------------------
struct ProductComplex {
    SimplicialComplex prod;
    std::vector<std::pair<int32_t, int32_t>> vertex_pair; // product vertex -> (a, b)
};
ProductComplex staircase_product(const SimplicialComplex& a, const SimplicialComplex& b);

// ---- pseudomanifold validation --------------------------------------------
struct PseudomanifoldReport {
    bool pure = false;
    bool non_branching = false;
    bool strongly_connected = false;
    std::vector<VertexList> branching_faces; // (n-1)-faces in > 2 facets
    std::vector<VertexList> boundary_faces;  // (n-1)-faces in exactly 1 facet
    std::vector<VertexList> impure_maximal;  // maximal simplices of dim < n
    bool ok() const { return pure && non_branching && strongly_connected; }
    bool ok_with_boundary() const
    {
        return pure && branching_faces.empty() && strongly_connected;
    }
};
PseudomanifoldReport validate_pseudomanifold(const SimplicialComplex& k);

// ---- orientation ------------------------------------------------------------
struct OrientationData {
    bool orientable = false;
    std::vector<int> sign; // per facet, +1/-1; empty if non-orientable
    VertexList obstruction; // a face witnessing the sign conflict
};
// Sign propagation over the facet adjacency graph; the lexicographically
// first facet of each component gets +1. For complexes with boundary the
// propagation runs across interior faces only.
OrientationData fundamental_cycle(const SimplicialComplex& k);

// Chain of the fundamental cycle as a vector over top simplices.
SparseVec fundamental_chain(const SimplicialComplex& k, const OrientationData& o);

// ---- ascending link (intrinsic link machinery) -----------------------------
// Order complex of the proper cofaces of s: vertices are coface simplex ids
// of k (encoded by their linear index), simplices are flags. Isomorphic to
// the barycentric subdivision of the classical link.
struct AscendingLink {
    SimplicialComplex complex;                 // vertex ids = positions into cofaces
    std::vector<SimplexId> vertex_to_coface;   // link vertex -> coface of k
};
AscendingLink ascending_link(const SimplicialComplex& k, std::span<const int32_t> s);

} // namespace stratsig

#endif
