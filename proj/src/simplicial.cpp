#include "stratsig/simplicial.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace stratsig {

namespace {

bool lex_less(std::span<const int32_t> a, std::span<const int32_t> b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct BlockLess {
    const std::vector<int32_t>& flat;
    int w;
    bool operator()(int64_t i, int64_t j) const
    {
        return std::lexicographical_compare(flat.data() + w * i, flat.data() + w * (i + 1),
                                            flat.data() + w * j, flat.data() + w * (j + 1));
    }
};

// sort blocks of width w lexicographically, return permutation applied
std::vector<int32_t> sort_blocks(std::vector<int32_t>& flat, int w)
{
    int64_t n = (int64_t)flat.size() / w;
    std::vector<int64_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), BlockLess{flat, w});
    std::vector<int32_t> out;
    out.reserve(flat.size());
    std::vector<int32_t> where(n);
    for (int64_t p = 0; p < n; ++p) {
        for (int q = 0; q < w; ++q)
            out.push_back(flat[w * perm[p] + q]);
        where[perm[p]] = (int32_t)p;
    }
    flat.swap(out);
    return where;
}

} // namespace

uint64_t SimplicialComplex::hash_verts(std::span<const int32_t> v)
{
    uint64_t h = 1469598103934665603ull ^ (uint64_t)v.size();
    for (int32_t x : v) {
        h ^= (uint64_t)(uint32_t)x;
        h *= 1099511628211ull;
    }
    return h;
}

void SimplicialComplex::build_index()
{
    index_.clear();
    int64_t total = 0;
    for (int d = 0; d <= dim_; ++d)
        total += count(d);
    index_.reserve(total * 13 / 10);
    for (int d = 0; d <= dim_; ++d)
        for (int64_t i = 0; i < count(d); ++i)
            index_[hash_verts(verts(d, i))].push_back({(int16_t)d, (int32_t)i});

    std::set<int32_t> vs;
    if (dim_ >= 0)
        for (int64_t i = 0; i < count(0); ++i)
            vs.insert(flat_[0][i]);
    vertex_ids_.assign(vs.begin(), vs.end());
    vpos_.clear();
    for (size_t i = 0; i < vertex_ids_.size(); ++i)
        vpos_[vertex_ids_[i]] = (int32_t)i;
}

std::optional<SimplexId> SimplicialComplex::find(std::span<const int32_t> v) const
{
    auto it = index_.find(hash_verts(v));
    if (it == index_.end())
        return std::nullopt;
    for (SimplexId s : it->second) {
        if (s.d != (int)v.size() - 1)
            continue;
        auto w = verts(s);
        if (std::equal(w.begin(), w.end(), v.begin(), v.end()))
            return s;
    }
    return std::nullopt;
}

SimplexId SimplicialComplex::require(std::span<const int32_t> v) const
{
    auto s = find(v);
    if (!s)
        throw SimplexNotFound();
    return *s;
}

int64_t SimplicialComplex::total_count() const
{
    int64_t t = 0;
    for (int d = 0; d <= dim_; ++d)
        t += count(d);
    return t;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<VertexList>& facets)
{
    SimplicialComplex k;
    int n = -1;
    for (auto& f : facets)
        n = std::max<int>(n, (int)f.size() - 1);
    if (n < 0)
        throw std::runtime_error("empty facet list");
    k.dim_ = n;
    k.flat_.resize(n + 1);
    k.counts_.assign(n + 1, 0);

    std::vector<std::set<VertexList>> seen(n + 1);
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            throw std::runtime_error("facet has repeated vertices");
        int d = (int)f.size() - 1;
        // all nonempty subsets
        for (uint32_t mask = 1; mask < (1u << (d + 1)); ++mask) {
            VertexList s;
            for (int i = 0; i <= d; ++i)
                if (mask & (1u << i))
                    s.push_back(f[i]);
            seen[(int)s.size() - 1].insert(std::move(s));
        }
    }
    for (int d = 0; d <= n; ++d) {
        k.counts_[d] = (int64_t)seen[d].size();
        k.flat_[d].reserve(k.counts_[d] * (d + 1));
        for (auto& s : seen[d])
            k.flat_[d].insert(k.flat_[d].end(), s.begin(), s.end());
    }
    k.build_index();
    k.collect_facets();
    return k;
}

// maximal = not marked as a face of a one-higher simplex
void SimplicialComplex::collect_facets()
{
    facets_.clear();
    for (int d = 0; d <= dim_; ++d) {
        std::vector<char> is_face(count(d), 0);
        VertexList face(std::max(d + 1, 1));
        for (int64_t j = 0; j < count(d + 1); ++j) {
            auto v = verts(d + 1, j);
            for (int i = 0; i <= d + 1; ++i) {
                int t = 0;
                for (int q = 0; q <= d + 1; ++q)
                    if (q != i)
                        face[t++] = v[q];
                auto f = find(std::span<const int32_t>(face.data(), (size_t)(d + 1)));
                assert(f);
                is_face[f->idx] = 1;
            }
        }
        for (int64_t i = 0; i < count(d); ++i)
            if (!is_face[i])
                facets_.push_back({(int16_t)d, (int32_t)i});
    }
}

SimplicialComplex SimplicialComplex::from_all_simplices(std::vector<std::vector<VertexList>> by_dim)
{
    SimplicialComplex k;
    k.dim_ = (int)by_dim.size() - 1;
    k.flat_.resize(k.dim_ + 1);
    k.counts_.assign(k.dim_ + 1, 0);
    for (int d = 0; d <= k.dim_; ++d) {
        auto& list = by_dim[d];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        k.counts_[d] = (int64_t)list.size();
        k.flat_[d].reserve(k.counts_[d] * (d + 1));
        for (auto& s : list) {
            assert((int)s.size() == d + 1);
            assert(std::is_sorted(s.begin(), s.end()));
            k.flat_[d].insert(k.flat_[d].end(), s.begin(), s.end());
        }
    }
    k.build_index();
    k.collect_facets();
    return k;
}

SparseMatrix SimplicialComplex::boundary_matrix(int d) const
{
    if (d <= 0 || d > dim_)
        return SparseMatrix(std::max<int64_t>(count(d - 1), 0), std::max<int64_t>(count(d), 0));
    SparseMatrix m(count(d - 1), count(d));
    VertexList face(d);
    for (int64_t j = 0; j < count(d); ++j) {
        auto v = verts(d, j);
        for (int i = 0; i <= d; ++i) {
            int t = 0;
            for (int q = 0; q <= d; ++q)
                if (q != i)
                    face[t++] = v[q];
            auto f = find(std::span<const int32_t>(face.data(), (size_t)d));
            assert(f && f->d == d - 1);
            m.col(j).push(f->idx, Rational((i % 2 == 0) ? 1 : -1));
        }
        m.col(j).sort_fix();
    }
    return m;
}

std::vector<SimplexId> SimplicialComplex::cofaces(std::span<const int32_t> s) const
{
    require(s);
    std::vector<SimplexId> out;
    int sd = (int)s.size() - 1;
    for (int d = sd; d <= dim_; ++d)
        for (int64_t i = 0; i < count(d); ++i) {
            auto v = verts(d, i);
            if (std::includes(v.begin(), v.end(), s.begin(), s.end()))
                out.push_back({(int16_t)d, (int32_t)i});
        }
    return out;
}

SimplicialComplex SimplicialComplex::star(std::span<const int32_t> s) const
{
    auto cf = cofaces(s);
    std::vector<VertexList> fac;
    for (auto c : cf) {
        auto v = verts(c);
        fac.emplace_back(v.begin(), v.end());
    }
    auto st = SimplicialComplex::from_facets(fac);
    if (has_coords())
        for (int32_t v : st.vertex_ids())
            st.set_coord(v, coord(v));
    return st;
}

SimplicialComplex SimplicialComplex::link(std::span<const int32_t> s) const
{
    auto cf = cofaces(s);
    std::vector<VertexList> fac;
    for (auto c : cf) {
        VertexList rest;
        auto v = verts(c);
        std::set_difference(v.begin(), v.end(), s.begin(), s.end(), std::back_inserter(rest));
        if (!rest.empty())
            fac.push_back(std::move(rest));
    }
    if (fac.empty())
        throw std::runtime_error("link is empty");
    auto lk = SimplicialComplex::from_facets(fac);
    if (has_coords())
        for (int32_t v : lk.vertex_ids())
            lk.set_coord(v, coord(v));
    return lk;
}

int64_t SimplicialComplex::euler() const
{
    int64_t chi = 0;
    for (int d = 0; d <= dim_; ++d)
        chi += (d % 2 == 0) ? count(d) : -count(d);
    return chi;
}

const std::vector<Rational>& SimplicialComplex::coord(int32_t vertex) const
{
    auto it = vpos_.find(vertex);
    if (it == vpos_.end() || coords_.empty())
        throw std::runtime_error("no coordinates for vertex");
    return coords_[it->second];
}

void SimplicialComplex::set_coord(int32_t vertex, std::vector<Rational> c)
{
    if (coords_.empty())
        coords_.resize(vertex_ids_.size());
    coords_[vpos_.at(vertex)] = std::move(c);
}

void SimplicialComplex::assign_canonical_coords()
{
    coords_.assign(vertex_ids_.size(), {});
    for (size_t i = 0; i < vertex_ids_.size(); ++i) {
        std::vector<Rational> c(vertex_ids_.size(), Rational(0));
        c[i] = 1;
        coords_[i] = std::move(c);
    }
}

Rational SimplicialComplex::dist2(int32_t u, int32_t v) const
{
    const auto& a = coord(u);
    const auto& b = coord(v);
    size_t n = std::max(a.size(), b.size());
    Rational s(0);
    for (size_t i = 0; i < n; ++i) {
        Rational d = (i < a.size() ? a[i] : Rational(0)) - (i < b.size() ? b[i] : Rational(0));
        s += d * d;
    }
    return s;
}

int32_t SimplicialComplex::max_vertex_id() const
{
    return vertex_ids_.empty() ? -1 : vertex_ids_.back();
}

SimplicialComplex SimplicialComplex::relabeled(const std::unordered_map<int32_t, int32_t>& perm) const
{
    std::vector<VertexList> fac;
    for (auto f : facets_) {
        VertexList v;
        for (int32_t x : verts(f))
            v.push_back(perm.at(x));
        fac.push_back(std::move(v));
    }
    auto k = SimplicialComplex::from_facets(fac);
    if (has_coords())
        for (int32_t v : vertex_ids_)
            k.set_coord(perm.at(v), coord(v));
    return k;
}

SimplicialComplex SimplicialComplex::disjoint_union(const SimplicialComplex& a,
                                                    const SimplicialComplex& b, int32_t offset_b)
{
    std::vector<VertexList> fac;
    for (auto f : a.facets_) {
        auto v = a.verts(f);
        fac.emplace_back(v.begin(), v.end());
    }
    for (auto f : b.facets_) {
        VertexList v;
        for (int32_t x : b.verts(f))
            v.push_back(x + offset_b);
        fac.push_back(std::move(v));
    }
    return SimplicialComplex::from_facets(fac);
}

SimplicialComplex cone(const SimplicialComplex& base, int32_t apex)
{
    for (int32_t v : base.vertex_ids())
        if (v == apex)
            throw std::runtime_error("cone apex must be a fresh vertex");
    std::vector<VertexList> fac;
    for (auto f : base.facets()) {
        auto v = base.verts(f);
        VertexList w(v.begin(), v.end());
        w.push_back(apex);
        std::sort(w.begin(), w.end());
        fac.push_back(std::move(w));
    }
    auto c = SimplicialComplex::from_facets(fac);
    if (base.has_coords()) {
        size_t dimc = 0;
        for (int32_t v : base.vertex_ids())
            dimc = std::max(dimc, base.coord(v).size());
        for (int32_t v : base.vertex_ids())
            c.set_coord(v, base.coord(v));
        // apex at the centroid of the base vertex set, lifted one unit in a
        // fresh axis so cones stay non-degenerate
        std::vector<Rational> apex_c(dimc + 1, Rational(0));
        for (int32_t v : base.vertex_ids()) {
            const auto& cv = base.coord(v);
            for (size_t i = 0; i < cv.size(); ++i)
                apex_c[i] += cv[i];
        }
        for (size_t i = 0; i < dimc; ++i)
            apex_c[i] /= (long)base.vertex_ids().size();
        apex_c[dimc] = 1;
        c.set_coord(apex, std::move(apex_c));
    }
    return c;
}

BarycentricSubdivision barycentric_subdivision(const SimplicialComplex& k)
{
    BarycentricSubdivision out;
    out.dim_offset.assign(k.dim() + 1, 0);
    int64_t acc = 0;
    for (int d = 0; d <= k.dim(); ++d) {
        out.dim_offset[d] = acc;
        acc += k.count(d);
    }
    out.vertex_to_simplex.resize(acc);
    for (int d = 0; d <= k.dim(); ++d)
        for (int64_t i = 0; i < k.count(d); ++i)
            out.vertex_to_simplex[out.dim_offset[d] + i] = {(int16_t)d, (int32_t)i};

    // chains of the face poset, generated per top element
    std::vector<std::vector<VertexList>> by_dim(k.dim() + 1);
    // chains_at[v] = all chains ending at K-simplex with K'-vertex id v
    std::vector<std::vector<VertexList>> chains_at(acc);
    for (int d = 0; d <= k.dim(); ++d) {
        VertexList face;
        for (int64_t i = 0; i < k.count(d); ++i) {
            int64_t vid = out.dim_offset[d] + i;
            auto& mine = chains_at[vid];
            mine.push_back({(int32_t)vid});
            if (d > 0) {
                auto v = k.verts(d, i);
                // proper faces: all sub-tuples
                for (uint32_t mask = 1; mask + 1 < (1u << (d + 1)); ++mask) {
                    face.clear();
                    for (int q = 0; q <= d; ++q)
                        if (mask & (1u << q))
                            face.push_back(v[q]);
                    auto f = k.find(face);
                    assert(f);
                    int64_t fv = out.dim_offset[f->d] + f->idx;
                    // chains ending at the face, extended by vid: only those
                    // whose top is exactly fv (all of chains_at[fv])
                    for (auto c : chains_at[fv]) {
                        c.push_back((int32_t)vid);
                        mine.push_back(std::move(c));
                    }
                }
            }
            for (auto& c : mine)
                by_dim[(int)c.size() - 1].push_back(c);
        }
    }
    // release chains_at before building (memory)
    chains_at.clear();
    chains_at.shrink_to_fit();
    out.prime = SimplicialComplex::from_all_simplices(std::move(by_dim));

    if (k.has_coords()) {
        size_t dimc = 0;
        for (int32_t v : k.vertex_ids())
            dimc = std::max(dimc, k.coord(v).size());
        for (int64_t vid = 0; vid < acc; ++vid) {
            SimplexId s = out.vertex_to_simplex[vid];
            std::vector<Rational> c(dimc, Rational(0));
            for (int32_t u : k.verts(s)) {
                const auto& cu = k.coord(u);
                for (size_t i = 0; i < cu.size(); ++i)
                    c[i] += cu[i];
            }
            for (auto& x : c)
                x /= (long)(s.d + 1);
            out.prime.set_coord((int32_t)vid, std::move(c));
        }
    }
    return out;
}

StandardSubdivision standard_subdivision(const SimplicialComplex& k)
{
    StandardSubdivision out;
    std::map<std::pair<int32_t, int32_t>, int32_t> vid;
    auto intern = [&](int32_t a, int32_t b) {
        if (a > b)
            std::swap(a, b);
        auto it = vid.find({a, b});
        if (it != vid.end())
            return it->second;
        int32_t id = (int32_t)vid.size();
        vid[{a, b}] = id;
        return id;
    };
    // intern in deterministic order: all (a,a) then edges by lex
    for (int32_t v : k.vertex_ids())
        intern(v, v);
    for (int64_t i = 0; i < k.count(1); ++i) {
        auto e = k.verts(1, i);
        intern(e[0], e[1]);
    }

    std::vector<VertexList> cells;
    for (auto f : k.facets()) {
        auto u = k.verts(f);
        int d = (int)u.size() - 1;
        // maximal chains of nested intervals [i,j] from a point to [0,d]:
        // start at [i,i], extend one endpoint at a time
        VertexList cell(d + 1);
        for (int start = 0; start <= d; ++start) {
            for (uint32_t moves = 0; moves < (1u << d); ++moves) {
                // move bit 1 = extend left, 0 = extend right
                int lo = start, hi = start;
                cell[0] = intern(u[lo], u[hi]);
                bool okseq = true;
                for (int m = 0; m < d; ++m) {
                    if ((moves >> m) & 1) {
                        if (lo == 0) {
                            okseq = false;
                            break;
                        }
                        lo--;
                    } else {
                        if (hi == d) {
                            okseq = false;
                            break;
                        }
                        hi++;
                    }
                    cell[m + 1] = intern(u[lo], u[hi]);
                }
                if (!okseq)
                    continue;
                VertexList c = cell;
                std::sort(c.begin(), c.end());
                cells.push_back(std::move(c));
            }
        }
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    out.sub = SimplicialComplex::from_facets(cells);
    out.vertex_pair.resize(vid.size());
    for (auto& [pr, id] : vid)
        out.vertex_pair[id] = pr;

    if (k.has_coords()) {
        for (auto& [pr, id] : vid) {
            const auto& ca = k.coord(pr.first);
            const auto& cb = k.coord(pr.second);
            size_t n = std::max(ca.size(), cb.size());
            std::vector<Rational> c(n, Rational(0));
            for (size_t i = 0; i < n; ++i) {
                Rational x = (i < ca.size() ? ca[i] : Rational(0)) +
                             (i < cb.size() ? cb[i] : Rational(0));
                c[i] = x / 2;
            }
            out.sub.set_coord(id, std::move(c));
        }
    }
    return out;
}

ProductComplex staircase_product(const SimplicialComplex& a, const SimplicialComplex& b)
{
    ProductComplex out;
    std::map<std::pair<int32_t, int32_t>, int32_t> vid;
    auto intern = [&](int32_t x, int32_t y) {
        auto it = vid.find({x, y});
        if (it != vid.end())
            return it->second;
        int32_t id = (int32_t)vid.size();
        vid[{x, y}] = id;
        return id;
    };
    for (int32_t x : a.vertex_ids())
        for (int32_t y : b.vertex_ids())
            intern(x, y);

    std::vector<VertexList> cells;
    for (auto fa : a.facets()) {
        auto u = a.verts(fa);
        int p = (int)u.size() - 1;
        for (auto fb : b.facets()) {
            auto w = b.verts(fb);
            int q = (int)w.size() - 1;
            // monotone lattice paths (0,0) -> (p,q)
            std::vector<int> steps(p + q, 0);
            std::fill(steps.begin(), steps.begin() + p, 1); // 1 = move in a
            std::sort(steps.begin(), steps.end());
            do {
                VertexList cell;
                int i = 0, j = 0;
                cell.push_back(intern(u[0], w[0]));
                for (int s : steps) {
                    if (s == 1)
                        ++i;
                    else
                        ++j;
                    cell.push_back(intern(u[i], w[j]));
                }
                std::sort(cell.begin(), cell.end());
                cells.push_back(std::move(cell));
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    out.prod = SimplicialComplex::from_facets(cells);
    out.vertex_pair.resize(vid.size());
    for (auto& [pr, id] : vid)
        out.vertex_pair[id] = pr;

    if (a.has_coords() && b.has_coords()) {
        for (auto& [pr, id] : vid) {
            std::vector<Rational> c = a.coord(pr.first);
            const auto& cb = b.coord(pr.second);
            c.insert(c.end(), cb.begin(), cb.end());
            out.prod.set_coord(id, std::move(c));
        }
    }
    return out;
}

PseudomanifoldReport validate_pseudomanifold(const SimplicialComplex& k)
{
    PseudomanifoldReport rep;
    int n = k.dim();

    rep.pure = true;
    for (auto f : k.facets())
        if (f.d != n) {
            rep.pure = false;
            auto v = k.verts(f);
            rep.impure_maximal.emplace_back(v.begin(), v.end());
        }

    // count facets per (n-1)-face
    std::vector<int> cnt(std::max<int64_t>(k.count(n - 1), 0), 0);
    VertexList face(std::max(n, 1));
    for (int64_t j = 0; j < k.count(n); ++j) {
        auto v = k.verts(n, j);
        for (int i = 0; i <= n; ++i) {
            int t = 0;
            for (int q = 0; q <= n; ++q)
                if (q != i)
                    face[t++] = v[q];
            auto f = k.find(std::span<const int32_t>(face.data(), (size_t)n));
            cnt[f->idx]++;
        }
    }
    rep.non_branching = true;
    for (int64_t i = 0; i < k.count(n - 1); ++i) {
        auto v = k.verts(n - 1, i);
        if (cnt[i] > 2) {
            rep.non_branching = false;
            rep.branching_faces.emplace_back(v.begin(), v.end());
        } else if (cnt[i] == 1) {
            rep.non_branching = false;
            rep.boundary_faces.emplace_back(v.begin(), v.end());
        }
    }

    // facet components through shared (n-1)-faces vs vertex components
    std::vector<int64_t> uf(k.count(n));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int64_t(int64_t)> root = [&](int64_t x) {
        while (uf[x] != x)
            x = uf[x] = uf[uf[x]];
        return x;
    };
    {
        std::unordered_map<int64_t, int64_t> first_owner;
        for (int64_t j = 0; j < k.count(n); ++j) {
            auto v = k.verts(n, j);
            for (int i = 0; i <= n; ++i) {
                int t = 0;
                for (int q = 0; q <= n; ++q)
                    if (q != i)
                        face[t++] = v[q];
                auto f = k.find(std::span<const int32_t>(face.data(), (size_t)n));
                auto [it, fresh] = first_owner.try_emplace(f->idx, j);
                if (!fresh)
                    uf[root(it->second)] = root(j);
            }
        }
    }
    std::set<int64_t> fcomp;
    for (int64_t j = 0; j < k.count(n); ++j)
        fcomp.insert(root(j));

    // vertex components via edges
    std::unordered_map<int32_t, int32_t> vuf;
    for (int32_t v : k.vertex_ids())
        vuf[v] = v;
    std::function<int32_t(int32_t)> vroot = [&](int32_t x) {
        while (vuf[x] != x)
            x = vuf[x] = vuf[vuf[x]];
        return x;
    };
    for (int64_t i = 0; i < k.count(1); ++i) {
        auto e = k.verts(1, i);
        vuf[vroot(e[0])] = vroot(e[1]);
    }
    std::set<int32_t> vcomp;
    for (int32_t v : k.vertex_ids())
        vcomp.insert(vroot(v));

    rep.strongly_connected = (fcomp.size() == vcomp.size()) && !fcomp.empty();
    return rep;
}

OrientationData fundamental_cycle(const SimplicialComplex& k)
{
    OrientationData o;
    int n = k.dim();
    int64_t nf = k.count(n);
    o.sign.assign(nf, 0);

    // adjacency across interior (n-1)-faces
    struct Inc {
        int64_t facet;
        int sign; // incidence of the face in that facet
    };
    std::unordered_map<int64_t, std::vector<Inc>> by_face;
    VertexList face(std::max(n, 1));
    for (int64_t j = 0; j < nf; ++j) {
        auto v = k.verts(n, j);
        for (int i = 0; i <= n; ++i) {
            int t = 0;
            for (int q = 0; q <= n; ++q)
                if (q != i)
                    face[t++] = v[q];
            auto f = k.find(std::span<const int32_t>(face.data(), (size_t)n));
            by_face[f->idx].push_back({j, (i % 2 == 0) ? 1 : -1});
        }
    }

    for (int64_t seed = 0; seed < nf; ++seed) {
        if (o.sign[seed] != 0)
            continue;
        o.sign[seed] = 1; // lexicographically first facet of the component
        std::vector<int64_t> stack = {seed};
        while (!stack.empty()) {
            int64_t j = stack.back();
            stack.pop_back();
            auto v = k.verts(n, j);
            for (int i = 0; i <= n; ++i) {
                int t = 0;
                for (int q = 0; q <= n; ++q)
                    if (q != i)
                        face[t++] = v[q];
                auto f = k.find(std::span<const int32_t>(face.data(), (size_t)n));
                const auto& inc = by_face.at(f->idx);
                if (inc.size() != 2)
                    continue; // boundary face
                for (const Inc& other : inc) {
                    if (other.facet == j)
                        continue;
                    int my_sign = (i % 2 == 0) ? 1 : -1;
                    int need = -o.sign[j] * my_sign * other.sign;
                    if (o.sign[other.facet] == 0) {
                        o.sign[other.facet] = need;
                        stack.push_back(other.facet);
                    } else if (o.sign[other.facet] != need) {
                        o.obstruction.assign(face.begin(), face.begin() + n);
                        o.orientable = false;
                        o.sign.clear();
                        return o;
                    }
                }
            }
        }
    }
    o.orientable = true;
    return o;
}

SparseVec fundamental_chain(const SimplicialComplex& k, const OrientationData& o)
{
    SparseVec z;
    for (int64_t j = 0; j < k.count(k.dim()); ++j)
        z.push((int32_t)j, Rational(o.sign[j]));
    z.sort_fix();
    return z;
}

AscendingLink ascending_link(const SimplicialComplex& k, std::span<const int32_t> s)
{
    AscendingLink out;
    auto cf = k.cofaces(s);
    // drop s itself
    std::vector<SimplexId> proper;
    for (auto c : cf)
        if (c.d > (int)s.size() - 1)
            proper.push_back(c);
    if (proper.empty())
        throw std::runtime_error("ascending link is empty");
    std::sort(proper.begin(), proper.end());
    out.vertex_to_coface = proper;
    std::unordered_map<int64_t, int32_t> pos;
    for (size_t i = 0; i < proper.size(); ++i)
        pos[((int64_t)proper[i].d << 32) | (uint32_t)proper[i].idx] = (int32_t)i;

    // flags: chains of proper cofaces under face relation
    auto contains = [&](SimplexId big, SimplexId small) {
        auto bv = k.verts(big);
        auto sv = k.verts(small);
        return std::includes(bv.begin(), bv.end(), sv.begin(), sv.end());
    };
    std::vector<std::vector<VertexList>> by_dim;
    std::vector<std::vector<VertexList>> chains_at(proper.size());
    for (size_t i = 0; i < proper.size(); ++i) {
        chains_at[i].push_back({(int32_t)i});
        for (size_t j = 0; j < i; ++j) {
            if (proper[j].d < proper[i].d && contains(proper[i], proper[j])) {
                for (auto c : chains_at[j]) {
                    c.push_back((int32_t)i);
                    chains_at[i].push_back(std::move(c));
                }
            }
        }
    }
    for (auto& v : chains_at)
        for (auto& c : v) {
            if ((int)c.size() > (int)by_dim.size())
                by_dim.resize(c.size());
            by_dim[c.size() - 1].push_back(c);
        }
    out.complex = SimplicialComplex::from_all_simplices(std::move(by_dim));
    return out;
}

} // namespace stratsig
