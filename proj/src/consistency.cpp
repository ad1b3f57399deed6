#include "pbif/consistency.hpp"

#include <algorithm>
#include <stdexcept>

#include "pbif/union_find.hpp"
#include "pbif/z2.hpp"

namespace pbif {

namespace {

// Position of a global vertex id within the complex's vertex list.
std::uint32_t vertex_position(const SimplicialComplex& c, std::uint32_t id) {
    auto it = std::lower_bound(c.vertices.begin(), c.vertices.end(), id);
    if (it == c.vertices.end() || *it != id)
        throw std::invalid_argument("estimator: vertex not contained in the target complex");
    return static_cast<std::uint32_t>(it - c.vertices.begin());
}

std::uint32_t edge_position(const SimplicialComplex& c, std::array<std::uint32_t, 2> e) {
    auto it = std::lower_bound(c.edges.begin(), c.edges.end(), e);
    if (it == c.edges.end() || *it != e)
        throw std::invalid_argument("estimator: edge not contained in the target complex");
    return static_cast<std::uint32_t>(it - c.edges.begin());
}

// Columns e_v for the vertices of a, over b's vertex rows.
z2::Matrix vertex_cycles(std::span<const std::uint32_t> a_vertices, const SimplicialComplex& b) {
    z2::Matrix m;
    m.rows = static_cast<std::uint32_t>(b.vertices.size());
    for (std::uint32_t v : a_vertices) m.columns.push_back({vertex_position(b, v)});
    return m;
}

z2::Matrix edge_boundaries(const SimplicialComplex& b) {
    z2::Matrix m;
    m.rows = static_cast<std::uint32_t>(b.vertices.size());
    m.columns.reserve(b.edges.size());
    for (const auto& e : b.edges) {
        z2::Column col{vertex_position(b, e[0]), vertex_position(b, e[1])};
        std::sort(col.begin(), col.end());
        m.columns.push_back(std::move(col));
    }
    return m;
}

z2::Matrix triangle_boundaries(const SimplicialComplex& b) {
    z2::Matrix m;
    m.rows = static_cast<std::uint32_t>(b.edges.size());
    m.columns.reserve(b.triangles.size());
    for (const auto& t : b.triangles) {
        z2::Column col{edge_position(b, {t[0], t[1]}), edge_position(b, {t[0], t[2]}),
                       edge_position(b, {t[1], t[2]})};
        std::sort(col.begin(), col.end());
        m.columns.push_back(std::move(col));
    }
    return m;
}

// Spanning set of the cycle space of a's 1-skeleton: one fundamental cycle
// per non-forest edge, expressed over b's edge rows.
z2::Matrix fundamental_cycles(const SimplicialComplex& a, const SimplicialComplex& b) {
    const std::size_t n = a.vertices.size();
    auto local_of = [&](std::uint32_t id) {
        auto it = std::lower_bound(a.vertices.begin(), a.vertices.end(), id);
        return static_cast<std::uint32_t>(it - a.vertices.begin());
    };

    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n);  // (nbr, edge idx)
    for (std::uint32_t e = 0; e < a.edges.size(); ++e) {
        std::uint32_t u = local_of(a.edges[e][0]), v = local_of(a.edges[e][1]);
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }

    // BFS forest with parent edges and depths.
    constexpr std::uint32_t kNone = 0xffffffffu;
    std::vector<std::uint32_t> parent(n, kNone), parent_edge(n, kNone), depth(n, 0);
    std::vector<char> seen(n, 0), tree_edge(a.edges.size(), 0);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        queue.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint32_t u = queue[head];
            for (auto [v, e] : adj[u]) {
                if (seen[v]) continue;
                seen[v] = 1;
                parent[v] = u;
                parent_edge[v] = e;
                depth[v] = depth[u] + 1;
                tree_edge[e] = 1;
                queue.push_back(v);
            }
        }
    }

    z2::Matrix m;
    m.rows = static_cast<std::uint32_t>(b.edges.size());
    for (std::uint32_t e = 0; e < a.edges.size(); ++e) {
        if (tree_edge[e]) continue;
        z2::Column col{edge_position(b, a.edges[e])};
        std::uint32_t u = local_of(a.edges[e][0]), v = local_of(a.edges[e][1]);
        while (depth[u] > depth[v]) {
            col.push_back(edge_position(b, a.edges[parent_edge[u]]));
            u = parent[u];
        }
        while (depth[v] > depth[u]) {
            col.push_back(edge_position(b, a.edges[parent_edge[v]]));
            v = parent[v];
        }
        while (u != v) {
            col.push_back(edge_position(b, a.edges[parent_edge[u]]));
            col.push_back(edge_position(b, a.edges[parent_edge[v]]));
            u = parent[u];
            v = parent[v];
        }
        std::sort(col.begin(), col.end());
        m.columns.push_back(std::move(col));
    }
    return m;
}

}  // namespace

double clamp_radius(double bandwidth) {
    return std::clamp(bandwidth, EstimatorConfig::r_lo, EstimatorConfig::r_hi);
}

std::vector<std::uint32_t> superlevel_points(std::span<const double> densities, double level) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < densities.size(); ++i)
        if (densities[i] >= level) out.push_back(i);
    return out;
}

int estimate_betti(const PointCloud& points, std::span<const double> densities,
                   const EstimatorConfig& cfg) {
    if (cfg.dim != 0 && cfg.dim != 1)
        throw std::invalid_argument("estimate_betti: only dimensions 0 and 1 are supported");
    if (densities.size() != points.size())
        throw std::invalid_argument("estimate_betti: density values not aligned with points");
    if (!(cfg.epsilon > 0)) throw std::invalid_argument("estimate_betti: epsilon must be positive");
    if (!(cfg.r > 0)) throw std::invalid_argument("estimate_betti: r must be positive");

    const auto upper = superlevel_points(densities, cfg.level + cfg.epsilon);
    if (upper.empty()) return 0;
    const auto lower = superlevel_points(densities, cfg.level - cfg.epsilon);

    // Rips at edge threshold 2r matches the connectivity of radius-r balls.
    const double scale = 2.0 * cfg.r;
    if (cfg.dim == 0) {
        const auto b = complex_at(points, lower, scale, 1);
        return static_cast<int>(z2::image_rank(vertex_cycles(upper, b), edge_boundaries(b)));
    }
    const auto b = complex_at(points, lower, scale, 2);
    const auto a = complex_at(points, upper, scale, 1);
    return static_cast<int>(z2::image_rank(fundamental_cycles(a, b), triangle_boundaries(b)));
}

int estimate_betti(const PointCloud& points, const KdeModel& kde, const EstimatorConfig& cfg) {
    return estimate_betti(points, kde_evaluate_all(kde, points), cfg);
}

int h0_image_rank_unionfind(std::span<const std::uint32_t> a_vertices,
                            const SimplicialComplex& b) {
    if (b.vertices.empty()) return 0;
    UnionFind uf(b.vertices.size());
    for (const auto& e : b.edges) uf.unite(vertex_position(b, e[0]), vertex_position(b, e[1]));
    std::vector<std::uint32_t> roots;
    for (std::uint32_t v : a_vertices) roots.push_back(uf.find(vertex_position(b, v)));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<int>(roots.size());
}

BettiVector estimated_betti_vector(const PointCloud& points, const KdeModel& kde,
                                   std::span<const double> levels, double r, double epsilon,
                                   int dim) {
    // Levels are fractions of the peak estimated density over the thresholded
    // points themselves, so the level scale is self-contained in the same
    // index set the superlevel sets draw from.
    const auto dens = kde_evaluate_all(kde, points);
    double peak = 0.0;
    for (double v : dens) peak = std::max(peak, v);
    if (!(peak > 0)) throw std::runtime_error("estimated_betti_vector: zero density estimate");

    BettiVector out;
    out.dim = dim;
    out.levels.assign(levels.begin(), levels.end());
    EstimatorConfig cfg;
    cfg.epsilon = epsilon;
    cfg.r = r;
    cfg.dim = dim;
    for (double level : levels) {
        cfg.level = level * peak;
        cfg.epsilon = epsilon * peak;
        out.counts.push_back(estimate_betti(points, dens, cfg));
    }
    return out;
}

}  // namespace pbif
