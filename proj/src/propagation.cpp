#include "stratsig/propagation.hpp"

#include <deque>
#include <map>

namespace stratsig {

namespace {

int32_t pivot_control_vertex(const SimplicialComplex& kp, int d, int32_t pivot)
{
    auto v = kp.verts(d, pivot);
    return v.back(); // barycenter vertex of the largest chain member
}

} // namespace

ControlPoints control_points(const WEnvironment& env, const WComplex& w)
{
    ControlPoints cp;
    int n = env.n();
    cp.vertex.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        cp.vertex[d].resize(w.gc.dim(d));
        for (int64_t b = 0; b < w.gc.dim(d); ++b)
            cp.vertex[d][b] = pivot_control_vertex(env.prime(), d, w.basis[d][b].low());
    }
    return cp;
}

ControlPoints control_points_dual(const WEnvironment& env, const WComplex& w)
{
    ControlPoints cp;
    int n = env.n();
    cp.vertex.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        int j = n - k;
        cp.vertex[k].resize(w.gc.dim(j));
        for (int64_t b = 0; b < w.gc.dim(j); ++b)
            cp.vertex[k][b] = pivot_control_vertex(env.prime(), j, w.basis[j][b].low());
    }
    return cp;
}

PropagationAudit propagation(const WEnvironment& env, const std::vector<SparseMatrix>& comp,
                             const ControlPoints& src, const ControlPoints& dst,
                             bool force_graph)
{
    PropagationAudit audit;
    const SimplicialComplex& kp = env.prime();
    audit.euclidean = kp.has_coords() && !force_graph;
    audit.radius = Rational(0);
    audit.max_coeff = Rational(0);

    // graph mode: BFS distances, one lazily computed layer per source vertex
    std::vector<std::vector<int32_t>> adj;
    if (!audit.euclidean) {
        adj.assign(kp.count(0), {});
        for (int64_t e = 0; e < kp.count(1); ++e) {
            auto v = kp.verts(1, e);
            adj[v[0]].push_back(v[1]);
            adj[v[1]].push_back(v[0]);
        }
    }
    std::map<int32_t, std::vector<int>> bfs_cache;
    auto graph_dist = [&](int32_t a, int32_t b) -> int {
        if (a == b)
            return 0;
        auto it = bfs_cache.find(a);
        if (it == bfs_cache.end()) {
            std::vector<int> dist(kp.count(0), -1);
            std::deque<int32_t> q;
            dist[a] = 0;
            q.push_back(a);
            while (!q.empty()) {
                int32_t x = q.front();
                q.pop_front();
                for (int32_t y : adj[x])
                    if (dist[y] < 0) {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
            }
            it = bfs_cache.emplace(a, std::move(dist)).first;
        }
        return it->second[b];
    };

    audit.row_support_max.assign(comp.size(), 0);
    audit.col_support_max.assign(comp.size(), 0);
    for (size_t k = 0; k < comp.size(); ++k) {
        const SparseMatrix& m = comp[k];
        std::vector<int64_t> row_cnt(m.rows(), 0);
        for (int64_t jcol = 0; jcol < m.cols(); ++jcol) {
            const auto& cv = m.col(jcol);
            audit.col_support_max[k] =
                std::max(audit.col_support_max[k], (int64_t)cv.e.size());
            for (auto& [r, c] : cv.e) {
                ++row_cnt[r];
                audit.entries++;
                Rational a = abs(c);
                if (a > audit.max_coeff)
                    audit.max_coeff = a;
                int32_t sv = src.vertex[k][jcol];
                int32_t dv = dst.vertex[k][r];
                if (audit.euclidean) {
                    Rational d2 = kp.dist2(sv, dv);
                    if (d2 > audit.radius)
                        audit.radius = d2;
                } else {
                    int d = graph_dist(sv, dv);
                    if (Rational(d) > audit.radius)
                        audit.radius = Rational(d);
                }
            }
        }
        for (int64_t r = 0; r < m.rows(); ++r)
            audit.row_support_max[k] = std::max(audit.row_support_max[k], row_cnt[r]);
    }
    return audit;
}

bool geometric_module_locality(const WEnvironment& env, const SparseMatrix& m,
                               const ControlPoints& src, const ControlPoints& dst, int degree_src,
                               int degree_dst, int radius)
{
    std::vector<SparseMatrix> comp = {m};
    ControlPoints s, d;
    s.vertex = {src.vertex[degree_src]};
    d.vertex = {dst.vertex[degree_dst]};
    PropagationAudit a = propagation(env, comp, s, d, /*force_graph=*/true);
    return a.radius <= Rational(radius);
}

} // namespace stratsig
