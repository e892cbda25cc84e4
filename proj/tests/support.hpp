#ifndef SGM_TESTS_SUPPORT_HPP
#define SGM_TESTS_SUPPORT_HPP

#include <cstddef>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/model.hpp"
#include "sgm/rng.hpp"

namespace sgm::test {

inline constexpr std::size_t kFar = 1u << 30;

/// All-pairs distances by Floyd-Warshall on the adjacency matrix; kFar when
/// unreachable.
inline std::vector<std::vector<std::size_t>> distances(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kFar));
    for (Vertex u = 0; u < n; ++u) {
        d[u][u] = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (u != v && g.has_edge(u, v)) d[u][v] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Per-pair coin flips; independent of the library's skipping sampler.
inline Graph coin_graph(std::size_t n, double p, Rng& rng) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.emplace_back(u, v);
    return build_graph(n, edges);
}

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return build_graph(n, edges);
}

inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return build_graph(leaves + 1, edges);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return build_graph(n, edges);
}

/// Starlike tree with root 1 and three 2-paths 1-2-5, 1-3-6, 1-4-7; vertex 0
/// is unused.
inline Graph starlike_tree() { return build_graph(8, {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}}); }

inline SeedMap seeds_from(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Vertex> a(n, kNoVertex);
    for (const auto& [g2, g1] : pairs) a[g2] = g1;
    return SeedMap(a);
}

inline SeedMap identity_seeds(std::size_t n, const std::vector<Vertex>& seeded) {
    std::vector<Vertex> a(n, kNoVertex);
    for (Vertex v : seeded) a[v] = v;
    return SeedMap(a);
}

}  // namespace sgm::test

#endif  // SGM_TESTS_SUPPORT_HPP
