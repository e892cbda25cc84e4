#ifndef SGM_ORACLE_HPP
#define SGM_ORACLE_HPP

#include <cstddef>
#include <cstdint>

#include "sgm/graph.hpp"
#include "sgm/model.hpp"

// Exhaustive reference computations for tiny graphs.

namespace sgm::oracle {

struct QapOptimum {
    std::size_t value = 0;
    Permutation argmin;  // lexicographically smallest optimal permutation
    std::size_t optimal_count = 0;
};

/// Scans all n! permutations. Throws ResourceError for n > 10.
QapOptimum brute_force_qap(const Graph& g1, const Graph& g2);

/// Largest L of seeded G2 vertices at distance ell from i2, whose images lie at
/// distance ell from i1, that admits ell-path families from i1 to pi0(L) in g1
/// and from i2 to L in g2, each family pairwise disjoint except at its root.
/// Enumerates paths and leaf sets directly; no flow.
std::size_t joint_paths(const Graph& g1, Vertex i1, const Graph& g2, Vertex i2, std::uint32_t ell,
                        const SeedMap& seeds);

/// Same search, one graph: ell-paths from root to distinct targets.
std::size_t paths_to_set(const Graph& g, Vertex root, std::uint32_t ell, const VertexSet& targets);

}  // namespace sgm::oracle

#endif  // SGM_ORACLE_HPP
