#include "sgm/flow.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>

namespace sgm {

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

/// Residual graph over a unit-capacity network in CSR form. Edge 2a is the
/// forward copy of arc a, edge 2a+1 its reverse.
class UnitFlowSolver {
   public:
    explicit UnitFlowSolver(const FlowNetwork& net) : net_(net), cap_(2 * net.arcs().size(), 0) {
        const std::size_t nodes = net.node_count();
        start_.assign(nodes + 1, 0);
        for (const auto& a : net.arcs()) {
            ++start_[a.from + 1];
            ++start_[a.to + 1];
        }
        for (std::size_t i = 0; i < nodes; ++i) start_[i + 1] += start_[i];
        edges_.resize(start_[nodes]);
        std::vector<std::size_t> cursor(start_.begin(), start_.end() - 1);
        const auto arcs = net.arcs();
        for (std::size_t a = 0; a < arcs.size(); ++a) {
            edges_[cursor[arcs[a].from]++] = static_cast<std::uint32_t>(2 * a);
            edges_[cursor[arcs[a].to]++] = static_cast<std::uint32_t>(2 * a + 1);
            cap_[2 * a] = 1;
        }
    }

    std::size_t solve() {
        if (!net_.has_terminals() || net_.source() == net_.sink()) return 0;
        const std::size_t nodes = net_.node_count();
        std::vector<std::uint32_t> via(nodes);
        std::vector<std::uint8_t> seen(nodes);
        std::vector<NodeId> queue;
        queue.reserve(nodes);
        std::size_t flow = 0;
        for (;;) {
            std::fill(seen.begin(), seen.end(), 0);
            queue.clear();
            queue.push_back(net_.source());
            seen[net_.source()] = 1;
            bool found = false;
            for (std::size_t head = 0; head < queue.size() && !found; ++head) {
                const NodeId u = queue[head];
                for (std::size_t k = start_[u]; k < start_[u + 1]; ++k) {
                    const std::uint32_t e = edges_[k];
                    if (!cap_[e]) continue;
                    const NodeId v = head_of(e);
                    if (seen[v]) continue;
                    seen[v] = 1;
                    via[v] = e;
                    if (v == net_.sink()) {
                        found = true;
                        break;
                    }
                    queue.push_back(v);
                }
            }
            if (!found) return flow;
            for (NodeId v = net_.sink(); v != net_.source();) {
                const std::uint32_t e = via[v];
                cap_[e] = 0;
                cap_[e ^ 1U] = 1;
                v = tail_of(e);
            }
            ++flow;
        }
    }

    bool carries_flow(std::size_t arc) const { return cap_[2 * arc] == 0; }

   private:
    NodeId head_of(std::uint32_t e) const {
        const auto& a = net_.arcs()[e >> 1];
        return (e & 1U) ? a.from : a.to;
    }
    NodeId tail_of(std::uint32_t e) const {
        const auto& a = net_.arcs()[e >> 1];
        return (e & 1U) ? a.to : a.from;
    }

    const FlowNetwork& net_;
    std::vector<std::size_t> start_;
    std::vector<std::uint32_t> edges_;
    std::vector<std::uint8_t> cap_;
};

}  // namespace

PathCount max_flow(const FlowNetwork& net) {
    UnitFlowSolver solver(net);
    return {solver.solve()};
}

std::vector<std::vector<NodeId>> max_flow_paths(const FlowNetwork& net) {
    UnitFlowSolver solver(net);
    const std::size_t flow = solver.solve();
    std::vector<std::vector<NodeId>> paths;
    if (flow == 0) return paths;

    const auto arcs = net.arcs();
    std::vector<std::vector<NodeId>> next(net.node_count());
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (solver.carries_flow(a)) next[arcs[a].from].push_back(arcs[a].to);
    }
    // The network is acyclic, so following unused flow arcs from the source
    // always ends at the sink.
    for (std::size_t k = 0; k < flow; ++k) {
        std::vector<NodeId> path{net.source()};
        NodeId u = net.source();
        while (u != net.sink()) {
            const NodeId v = next[u].back();
            next[u].pop_back();
            path.push_back(v);
            u = v;
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

JointNetworkBuilder::JointNetworkBuilder(const Graph& g1, const Graph& g2, const SeedMap& seeds)
    : g1_(g1),
      g2_(g2),
      seeds_(seeds),
      bfs1_(g1.n()),
      bfs2_(g2.n()),
      in1_(g1.n(), kNone),
      in2_(g2.n(), kNone) {
    if (g1.n() != g2.n()) throw InputError("joint network: graphs have different vertex counts");
    if (seeds.n() != g2.n()) throw InputError("joint network: seed map size does not match graph");
}

void JointNetworkBuilder::build(Vertex i1, Vertex i2, std::uint32_t ell, FlowNetwork& net) {
    if (i1 >= g1_.n() || i2 >= g2_.n()) throw InputError("joint network: root out of range");
    if (ell < 1) throw InputError("joint network: ell must be at least 1");
    net.clear();

    bfs1_.run(g1_, i1, ell);
    bfs2_.run(g2_, i2, ell);

    // One in/out pair per ball vertex on each side; a seeded G2 leaf whose
    // image is a G1 leaf reuses the G1 pair.
    for (Vertex v : bfs1_.ball()) {
        in1_[v] = net.add_node({NodeSide::kFirst, v, false});
        net.add_node({NodeSide::kFirst, v, true});
    }
    for (Vertex w : bfs2_.ball()) {
        if (bfs2_.dist(w) == ell && seeds_.is_seeded(w)) {
            const Vertex image = seeds_[w];
            if (bfs1_.reached(image) && bfs1_.dist(image) == ell) {
                in2_[w] = in1_[image];
                net.retag(in2_[w], NodeSide::kShared);
                net.retag(in2_[w] + 1, NodeSide::kShared);
                continue;
            }
        }
        in2_[w] = net.add_node({NodeSide::kSecond, w, false});
        net.add_node({NodeSide::kSecond, w, true});
    }

    for (Vertex v : bfs1_.ball()) net.add_arc(in1_[v], in1_[v] + 1);
    for (Vertex w : bfs2_.ball()) {
        if (net.origins()[in2_[w]].side == NodeSide::kSecond) net.add_arc(in2_[w], in2_[w] + 1);
    }

    for (Vertex u : bfs1_.ball()) {
        const std::uint32_t du = bfs1_.dist(u);
        if (du == ell) continue;
        for (Vertex v : g1_.neighbors(u)) {
            if (bfs1_.reached(v) && bfs1_.dist(v) == du + 1) net.add_arc(in1_[u] + 1, in1_[v]);
        }
    }
    for (Vertex u : bfs2_.ball()) {
        const std::uint32_t du = bfs2_.dist(u);
        if (du == 0) continue;
        for (Vertex v : g2_.neighbors(u)) {
            if (bfs2_.reached(v) && bfs2_.dist(v) + 1 == du) net.add_arc(in2_[u] + 1, in2_[v]);
        }
    }

    net.set_terminals(in1_[i1] + 1, in2_[i2]);

    for (Vertex v : bfs1_.ball()) in1_[v] = kNone;
    for (Vertex w : bfs2_.ball()) in2_[w] = kNone;
}

FlowNetwork build_joint_network(const Graph& g1, Vertex i1, const Graph& g2, Vertex i2, std::uint32_t ell,
                                const SeedMap& seeds) {
    JointNetworkBuilder builder(g1, g2, seeds);
    FlowNetwork net;
    builder.build(i1, i2, ell, net);
    return net;
}

PathCount count_disjoint_paths_to_set(const Graph& g, Vertex root, std::uint32_t ell, const VertexSet& targets) {
    if (root >= g.n()) throw InputError("root out of range");
    Bfs bfs(g.n());
    bfs.run(g, root, ell);
    for (Vertex t : targets) {
        if (t >= g.n() || !bfs.reached(t) || bfs.dist(t) != ell) {
            throw InputError("target " + std::to_string(t) + " is not at distance " + std::to_string(ell) +
                             " from the root");
        }
    }
    if (ell == 0) return {targets.contains(root) ? 1U : 0U};

    FlowNetwork net;
    std::vector<NodeId> in(g.n(), kNone);
    for (Vertex v : bfs.ball()) {
        in[v] = net.add_node({NodeSide::kFirst, v, false});
        net.add_node({NodeSide::kFirst, v, true});
        net.add_arc(in[v], in[v] + 1);
    }
    const NodeId super_sink = net.add_node({NodeSide::kSuperSink, kNoVertex, false});
    for (Vertex u : bfs.ball()) {
        const std::uint32_t du = bfs.dist(u);
        if (du == ell) continue;
        for (Vertex v : g.neighbors(u)) {
            if (bfs.reached(v) && bfs.dist(v) == du + 1) net.add_arc(in[u] + 1, in[v]);
        }
    }
    for (Vertex t : targets) net.add_arc(in[t] + 1, super_sink);
    net.set_terminals(in[root] + 1, super_sink);
    return max_flow(net);
}

void write_network(std::ostream& out, const FlowNetwork& net) {
    out << "nodes " << net.node_count() << " source " << net.source() << " sink " << net.sink() << '\n';
    for (const auto& a : net.arcs()) out << a.from << ' ' << a.to << '\n';
}

}  // namespace sgm
