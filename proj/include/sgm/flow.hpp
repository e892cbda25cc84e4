#ifndef SGM_FLOW_HPP
#define SGM_FLOW_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/model.hpp"

namespace sgm {

/// Number of vertex-disjoint path families found by a max-flow computation.
struct PathCount {
    std::size_t value = 0;
    friend auto operator<=>(const PathCount&, const PathCount&) = default;
};

using NodeId = std::uint32_t;

struct FlowArc {
    NodeId from;
    NodeId to;
};

/// Which part of the network a split node came from. Identified seeded leaves
/// are owned by the G1 side and tagged kShared.
enum class NodeSide : std::uint8_t { kFirst, kSecond, kShared, kSuperSink };

struct NodeOrigin {
    NodeSide side;
    Vertex vertex;  // G1 id for kFirst/kShared, G2 id for kSecond
    bool out;       // out-half of a split vertex
};

/// Directed unit-capacity network. Node ids are assigned in construction
/// order (BFS order on each side), so the same inputs always give the same ids.
class FlowNetwork {
   public:
    NodeId add_node(NodeOrigin origin) {
        origins_.push_back(origin);
        return static_cast<NodeId>(origins_.size() - 1);
    }
    void add_arc(NodeId from, NodeId to) { arcs_.push_back({from, to}); }
    void retag(NodeId id, NodeSide side) { origins_[id].side = side; }
    void set_terminals(NodeId source, NodeId sink) {
        source_ = source;
        sink_ = sink;
    }
    void clear() {
        origins_.clear();
        arcs_.clear();
        source_ = sink_ = 0;
    }

    std::size_t node_count() const { return origins_.size(); }
    std::span<const FlowArc> arcs() const { return arcs_; }
    std::span<const NodeOrigin> origins() const { return origins_; }
    NodeId source() const { return source_; }
    NodeId sink() const { return sink_; }
    /// False for a network without nodes (nothing reachable).
    bool has_terminals() const { return !origins_.empty(); }

   private:
    std::vector<NodeOrigin> origins_;
    std::vector<FlowArc> arcs_;
    NodeId source_ = 0;
    NodeId sink_ = 0;
};

/// Builds the joint network for a candidate pair (i1 in g1, i2 in g2): BFS
/// layers of radius ell around each root with same-layer edges dropped, g1
/// arcs pointing away from i1 and g2 arcs pointing toward i2, seeded g2
/// vertices at layer ell merged with their seed image when that image sits at
/// layer ell of g1, and every vertex split into an in/out pair joined by a
/// unit arc. Source is i1's out-node, sink is i2's in-node.
FlowNetwork build_joint_network(const Graph& g1, Vertex i1, const Graph& g2, Vertex i2, std::uint32_t ell,
                                const SeedMap& seeds);

/// Maximum integral source-sink flow by BFS augmenting paths.
PathCount max_flow(const FlowNetwork& net);

/// Node sequences of one integral maximum flow, decomposed into unit paths.
std::vector<std::vector<NodeId>> max_flow_paths(const FlowNetwork& net);

/// Largest number of length-ell paths from root to distinct members of
/// `targets`, pairwise disjoint except at root. Every target must lie at
/// distance exactly ell from root (InputError otherwise).
PathCount count_disjoint_paths_to_set(const Graph& g, Vertex root, std::uint32_t ell, const VertexSet& targets);

/// Reusable scratch for building many joint networks on the same graph pair.
class JointNetworkBuilder {
   public:
    JointNetworkBuilder(const Graph& g1, const Graph& g2, const SeedMap& seeds);

    /// Rebuilds `net` in place for the pair (i1, i2).
    void build(Vertex i1, Vertex i2, std::uint32_t ell, FlowNetwork& net);

   private:
    const Graph& g1_;
    const Graph& g2_;
    const SeedMap& seeds_;
    Bfs bfs1_;
    Bfs bfs2_;
    std::vector<NodeId> in1_;
    std::vector<NodeId> in2_;
};

/// Plain-text dump: "nodes N source S sink T", then one "from to" line per arc.
void write_network(std::ostream& out, const FlowNetwork& net);

}  // namespace sgm

#endif  // SGM_FLOW_HPP
