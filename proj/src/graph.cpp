#include "sgm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sgm {

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= n() || v >= n()) return false;
    const auto nb = degree(u) <= degree(v) ? neighbors(u) : neighbors(v);
    const Vertex other = degree(u) <= degree(v) ? v : u;
    return std::binary_search(nb.begin(), nb.end(), other);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::size_t> degree(n + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
        }
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        ++degree[u];
        ++degree[v];
    }

    // Fill with duplicates first, then sort and compact each row.
    std::vector<std::size_t> start(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) start[i + 1] = start[i] + degree[i];
    std::vector<Vertex> raw(start[n]);
    std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
    for (const auto& [u, v] : edges) {
        raw[cursor[u]++] = v;
        raw[cursor[v]++] = u;
    }

    Graph g;
    g.offsets_.assign(n + 1, 0);
    g.targets_.reserve(raw.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto first = raw.begin() + static_cast<std::ptrdiff_t>(start[i]);
        auto last = raw.begin() + static_cast<std::ptrdiff_t>(start[i + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        g.targets_.insert(g.targets_.end(), first, last);
        g.offsets_[i + 1] = g.targets_.size();
    }
    g.targets_.shrink_to_fit();
    return g;
}

namespace {

void check_vertex(const Graph& g, Vertex u) {
    if (u >= g.n()) {
        throw InputError("vertex " + std::to_string(u) + " out of range for graph with " + std::to_string(g.n()) +
                         " vertices");
    }
}

}  // namespace

VertexSet gamma_k(const Graph& g, Vertex u, std::uint32_t k) {
    check_vertex(g, u);
    Bfs bfs(g.n());
    bfs.run(g, u, k);
    const auto layer = bfs.layer(k);
    return VertexSet(std::vector<Vertex>(layer.begin(), layer.end()));
}

VertexSet n_k(const Graph& g, Vertex u, std::uint32_t k) {
    check_vertex(g, u);
    Bfs bfs(g.n());
    bfs.run(g, u, k);
    const auto ball = bfs.ball();
    return VertexSet(std::vector<Vertex>(ball.begin(), ball.end()));
}

Graph remove_vertices(const Graph& g, const VertexSet& s) {
    for (Vertex v : s) check_vertex(g, v);
    std::vector<Edge> kept;
    kept.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        if (!s.contains(e.first) && !s.contains(e.second)) kept.push_back(e);
    }
    return build_graph(g.n(), kept);
}

namespace {

template <typename Combine>
Graph combine(const Graph& g1, const Graph& g2, Combine op) {
    if (g1.n() != g2.n()) {
        throw InputError("graphs have different vertex counts (" + std::to_string(g1.n()) + " vs " +
                         std::to_string(g2.n()) + ")");
    }
    const auto e1 = g1.edges();
    const auto e2 = g2.edges();
    std::vector<Edge> out;
    op(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(out));
    return build_graph(g1.n(), out);
}

}  // namespace

Graph graph_and(const Graph& g1, const Graph& g2) {
    return combine(g1, g2, [](auto... args) { std::set_intersection(args...); });
}

Graph graph_or(const Graph& g1, const Graph& g2) {
    return combine(g1, g2, [](auto... args) { std::set_union(args...); });
}

void Bfs::run(const Graph& g, Vertex root, std::uint32_t radius, std::span<const Vertex> blocked) {
    for (Vertex v : order_) dist_[v] = kUnreached;
    order_.clear();
    layer_start_.clear();
    for (Vertex b : blocked) blocked_[b] = 1;

    if (!blocked_[root]) {
        dist_[root] = 0;
        order_.push_back(root);
        layer_start_.push_back(0);
        std::size_t head = 0;
        for (std::uint32_t depth = 0; depth < radius; ++depth) {
            const std::size_t layer_end = order_.size();
            layer_start_.push_back(layer_end);
            for (; head < layer_end; ++head) {
                for (Vertex w : g.neighbors(order_[head])) {
                    if (dist_[w] == kUnreached && !blocked_[w]) {
                        dist_[w] = depth + 1;
                        order_.push_back(w);
                    }
                }
            }
            if (order_.size() == layer_end) break;
        }
    }
    layer_start_.push_back(order_.size());

    for (Vertex b : blocked) blocked_[b] = 0;
}

std::span<const Vertex> Bfs::layer(std::uint32_t k) const {
    if (static_cast<std::size_t>(k) + 1 >= layer_start_.size()) return {};
    return {order_.data() + layer_start_[k], order_.data() + layer_start_[k + 1]};
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
    std::size_t n = 0;
    std::size_t m = 0;
    if (!(in >> n >> m)) throw InputError("edge list: missing \"n m\" header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        long long u = 0;
        long long v = 0;
        if (!(in >> u >> v)) {
            throw InputError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        }
        if (u < 0 || v < 0) throw InputError("edge list: negative vertex id");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return build_graph(n, edges);
}

void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_edge_list(out, g);
    if (!out) throw IoError("write failed: " + path);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_edge_list(in);
}

}  // namespace sgm
