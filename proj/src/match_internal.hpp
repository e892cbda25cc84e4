#ifndef SGM_SRC_MATCH_INTERNAL_HPP
#define SGM_SRC_MATCH_INTERNAL_HPP

#include <utility>
#include <vector>

#include "sgm/matchers.hpp"

namespace sgm::detail {

void check_inputs(const Graph& g1, const Graph& g2, const SeedMap& seeds);

/// Applies (g2, g1) candidate pairs in id order. Pairs whose G2 or G1 vertex
/// appears in more than one candidate are logged as collisions and left
/// unassigned; the rest are assigned with `status`. Returns whether any
/// collision occurred (and then sets result.failed).
bool resolve_candidates(MatchResult& result, std::vector<std::pair<Vertex, Vertex>> candidates, MatchStatus status);

/// Writes every seed into the result. Throws InputError if an existing
/// assignment already uses a seed image.
void copy_seeds(MatchResult& result, const SeedMap& seeds);

}  // namespace sgm::detail

#endif  // SGM_SRC_MATCH_INTERNAL_HPP
