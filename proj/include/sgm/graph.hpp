#ifndef SGM_GRAPH_HPP
#define SGM_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgm/common.hpp"

namespace sgm {

using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
   public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Vertex> members);
    VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Vertex v) const;
    std::span<const Vertex> members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

   private:
    std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

/// Immutable undirected simple graph on vertices 0..n-1, stored as CSR with
/// every neighbor list sorted ascending.
class Graph {
   public:
    Graph() = default;
    /// Edgeless graph on n vertices.
    explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

    std::size_t n() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::size_t degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }
    bool has_edge(Vertex u, Vertex v) const;

    /// Every edge once as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

   private:
    friend Graph build_graph(std::size_t n, std::span<const Edge> edges);

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

/// Builds a graph, storing each unordered pair once. Throws InputError on a
/// self-loop or an endpoint >= n.
Graph build_graph(std::size_t n, std::span<const Edge> edges);
inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
    return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Vertices at shortest-path distance exactly k from u.
VertexSet gamma_k(const Graph& g, Vertex u, std::uint32_t k);
/// Vertices within distance k from u (always contains u).
VertexSet n_k(const Graph& g, Vertex u, std::uint32_t k);

/// Deletes every edge incident to a member of s. Vertex ids are kept; removed
/// vertices become isolated.
Graph remove_vertices(const Graph& g, const VertexSet& s);

Graph graph_and(const Graph& g1, const Graph& g2);
Graph graph_or(const Graph& g1, const Graph& g2);

/// Reusable breadth-first search with per-run blocked vertices. Not
/// thread-safe; give each worker its own instance.
class Bfs {
   public:
    static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

    explicit Bfs(std::size_t n) : dist_(n, kUnreached), blocked_(n, 0) {}

    /// Explores from root up to `radius` hops. Blocked vertices are treated as
    /// deleted; a blocked root yields an empty ball.
    void run(const Graph& g, Vertex root, std::uint32_t radius, std::span<const Vertex> blocked = {});

    /// Ball members in BFS order (nondecreasing distance).
    std::span<const Vertex> ball() const { return order_; }
    /// Members at distance exactly k, for k <= radius of the last run.
    std::span<const Vertex> layer(std::uint32_t k) const;
    std::uint32_t dist(Vertex v) const { return dist_[v]; }
    bool reached(Vertex v) const { return dist_[v] != kUnreached; }

   private:
    std::vector<std::uint32_t> dist_;
    std::vector<std::uint8_t> blocked_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> layer_start_;
};

/// Edge-list text: a "n m" header line followed by m lines "u v" (0-based).
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);
void save_edge_list(const std::string& path, const Graph& g);
Graph load_edge_list(const std::string& path);

}  // namespace sgm

#endif  // SGM_GRAPH_HPP
