#include "stratsig/stratification.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace stratsig {

struct StratAccess {
    static Stratification make(const SimplicialComplex& k, std::vector<int> level)
    {
        Stratification s;
        s.k_ = &k;
        int n = k.dim();
        s.off_.assign(n + 1, 0);
        int64_t acc = 0;
        for (int d = 0; d <= n; ++d) {
            s.off_[d] = acc;
            acc += k.count(d);
        }
        s.level_ = std::move(level);

        // dimension sanity and flag-likeness
        auto& v = s.valid_;
        for (int d = 0; d <= n; ++d)
            for (int64_t i = 0; i < k.count(d); ++i) {
                int lev = s.level_[s.off_[d] + i];
                if (lev < d) {
                    v.dimensions_ok = false;
                    v.issues.push_back("simplex of dimension " + std::to_string(d) +
                                       " assigned to skeleton X_" + std::to_string(lev));
                }
                if (lev == n - 1) {
                    v.dimensions_ok = false;
                    v.issues.push_back("skeleton X_{n-1} must be absent (codimension >= 2)");
                }
            }

        s.nonempty_.assign(n + 1, false);
        for (int d = 0; d <= n; ++d)
            for (int64_t i = 0; i < k.count(d); ++i) {
                int lev = s.level_[s.off_[d] + i];
                if (lev < n)
                    for (int e = lev; e < n; ++e)
                        s.nonempty_[e] = true;
            }
        for (int kk = 2; kk <= n; ++kk)
            if (n - kk >= 0 && s.nonempty_[n - kk])
                s.codims_.push_back(kk);
        {
            std::vector<bool> has_level(n + 1, false);
            for (int d = 0; d <= n; ++d)
                for (int64_t i = 0; i < k.count(d); ++i)
                    has_level[s.level_[s.off_[d] + i]] = true;
            for (int kk = 2; kk <= n; ++kk)
                if (n - kk >= 0 && has_level[n - kk])
                    s.stratum_codims_.push_back(kk);
        }

        // flag-likeness: vertices of any simplex lying in X_e span a face in X_e
        for (int d = 1; d <= n && v.flag_like; ++d) {
            for (int64_t i = 0; i < k.count(d); ++i) {
                auto verts = k.verts(d, i);
                for (int e = 0; e < n; ++e) {
                    if (!s.nonempty_[e])
                        continue;
                    VertexList in;
                    for (int32_t u : verts) {
                        int32_t uu[1] = {u};
                        auto vs = k.find(std::span<const int32_t>(uu, 1));
                        if (vs && s.level_[s.off_[0] + vs->idx] <= e)
                            in.push_back(u);
                    }
                    if (in.empty() || (int)in.size() == d + 1)
                        continue;
                    auto f = k.find(in);
                    if (!f || s.level_[s.off_[f->d] + f->idx] > e) {
                        v.flag_like = false;
                        v.issues.push_back("simplex meets X_" + std::to_string(e) +
                                           " in a non-face");
                        break;
                    }
                }
                if (!v.flag_like)
                    break;
            }
        }

        // stratum components and walls
        s.comps_.assign(n + 1, {});
        s.walls_.assign(n + 1, {});
        for (int d = 0; d < n; ++d) {
            if (!s.nonempty_[d] && d > 0)
                continue;
            std::vector<int64_t> tops;
            for (int64_t i = 0; i < k.count(d); ++i)
                if (s.level_[s.off_[d] + i] == d)
                    tops.push_back(i);
            if (tops.empty())
                continue;
            // union-find over tops through (d-1)-walls of level >= d
            std::unordered_map<int64_t, int64_t> pos;
            for (size_t t = 0; t < tops.size(); ++t)
                pos[tops[t]] = (int64_t)t;
            std::vector<int64_t> uf(tops.size());
            std::iota(uf.begin(), uf.end(), 0);
            std::function<int64_t(int64_t)> root = [&](int64_t x) {
                while (uf[x] != x)
                    x = uf[x] = uf[uf[x]];
                return x;
            };
            if (d > 0) {
                std::unordered_map<int64_t, std::vector<int64_t>> by_wall;
                VertexList face(d);
                for (int64_t i : tops) {
                    auto vv = k.verts(d, i);
                    for (int q = 0; q <= d; ++q) {
                        int t2 = 0;
                        for (int p = 0; p <= d; ++p)
                            if (p != q)
                                face[t2++] = vv[p];
                        auto f = k.find(std::span<const int32_t>(face.data(), (size_t)d));
                        if (!f)
                            continue;
                        if (s.level_[s.off_[d - 1] + f->idx] <= d - 1)
                            continue; // wall sits in a lower skeleton
                        by_wall[f->idx].push_back(i);
                    }
                }
                for (auto& [w, inc] : by_wall) {
                    for (size_t a = 1; a < inc.size(); ++a)
                        uf[root(pos[inc[0]])] = root(pos[inc[a]]);
                    if (inc.size() == 2)
                        s.walls_[d].push_back({{(int16_t)d, (int32_t)inc[0]},
                                               {(int16_t)d, (int32_t)inc[1]},
                                               {(int16_t)(d - 1), (int32_t)w}});
                }
            }
            std::unordered_map<int64_t, size_t> comp_of_root;
            for (size_t t = 0; t < tops.size(); ++t) {
                int64_t r = root(t);
                auto [it, fresh] = comp_of_root.try_emplace(r, s.comps_[d].size());
                if (fresh) {
                    Stratification::Component c;
                    c.d = d;
                    s.comps_[d].push_back(c);
                }
                s.comps_[d][it->second].tops.push_back({(int16_t)d, (int32_t)tops[t]});
            }
            for (auto& c : s.comps_[d])
                c.rep = *std::min_element(c.tops.begin(), c.tops.end());
        }
        return s;
    }
};

Stratification Stratification::build(const SimplicialComplex& k,
                                     const std::vector<std::vector<VertexList>>& skeleta)
{
    int n = k.dim();
    std::vector<int> level;
    int64_t total = k.total_count();
    level.assign(total, n);
    std::vector<int64_t> off(n + 1, 0);
    int64_t acc = 0;
    for (int d = 0; d <= n; ++d) {
        off[d] = acc;
        acc += k.count(d);
    }
    // closures of the generators, deepest wins
    for (int d = (int)skeleta.size() - 1; d >= 0; --d) {
        for (auto gen : skeleta[d]) {
            std::sort(gen.begin(), gen.end());
            auto top = k.find(gen);
            if (!top)
                throw std::runtime_error("stratification generator is not a simplex of the complex");
            int gd = top->d;
            for (uint32_t mask = 1; mask < (1u << (gd + 1)); ++mask) {
                VertexList sub;
                for (int q = 0; q <= gd; ++q)
                    if (mask & (1u << q))
                        sub.push_back(gen[q]);
                auto f = k.find(sub);
                int64_t lin = off[f->d] + f->idx;
                level[lin] = std::min(level[lin], d);
            }
        }
    }
    return StratAccess::make(k, std::move(level));
}

Stratification Stratification::trivial(const SimplicialComplex& k)
{
    return StratAccess::make(k, std::vector<int>(k.total_count(), k.dim()));
}

const std::vector<Stratification::Component>& Stratification::components(int d) const
{
    static const std::vector<Component> empty;
    if (d < 0 || d >= (int)comps_.size())
        return empty;
    return comps_[d];
}

const std::vector<Stratification::Wall>& Stratification::walls(int d) const
{
    static const std::vector<Wall> empty;
    if (d < 0 || d >= (int)walls_.size())
        return empty;
    return walls_[d];
}

IntrinsicLink intrinsic_link(const Stratification& s, SimplexId stratum_simplex)
{
    const SimplicialComplex& k = s.complex();
    int d = stratum_simplex.d;
    // top stratum simplices have level == dim; interior walls have level ==
    // dim + 1; regular simplices are rejected
    if (s.skeleton_level(stratum_simplex) >= s.n())
        throw NotAStratumSimplex();

    IntrinsicLink out;
    auto asc = ascending_link(k, k.verts(stratum_simplex));
    out.complex = std::move(asc.complex);
    out.vertex_to_coface = std::move(asc.vertex_to_coface);
    out.stratum_dim = d;
    out.carrier = stratum_simplex;

    // induced level of a link simplex: max member level, shifted past the
    // stratum directions
    std::vector<int> level(out.complex.total_count());
    int64_t acc = 0;
    std::vector<int64_t> off(out.complex.dim() + 1, 0);
    for (int e = 0; e <= out.complex.dim(); ++e) {
        off[e] = acc;
        acc += out.complex.count(e);
    }
    for (int e = 0; e <= out.complex.dim(); ++e)
        for (int64_t i = 0; i < out.complex.count(e); ++i) {
            int lev = 0;
            for (int32_t v : out.complex.verts(e, i))
                lev = std::max(lev, s.skeleton_level(out.vertex_to_coface[v]));
            level[off[e] + i] = std::max(lev - d - 1, e); // clamp to simplex dim
        }
    out.strat = StratAccess::make(out.complex, std::move(level));
    out.orientation = fundamental_cycle(out.complex);
    return out;
}

} // namespace stratsig
