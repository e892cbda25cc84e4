#ifndef SGM_SEEDLESS_HPP
#define SGM_SEEDLESS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgm/matchers.hpp"

namespace sgm {

struct SeedlessOptions {
    Algorithm inner = Algorithm::kAlg2;
    ParamSet params;
    /// Largest number of seed maps to try.
    std::uint64_t budget = 1'000'000;
};

/// n! / (n - k)!, saturating at the uint64 maximum.
std::uint64_t injection_count(std::size_t n, std::size_t k);

/// Runs the inner matcher once per injective f: anchors -> V(g2), each time
/// with seeds f(i) -> i, and keeps the output with the smallest QAP objective
/// (lexicographically smallest permutation on ties). Throws ResourceError when
/// the number of maps exceeds the budget.
MatchResult match_seedless_anchored(const Graph& g1, const Graph& g2, const std::vector<Vertex>& anchors,
                                    const SeedlessOptions& options, Rng& rng);

/// Draws the anchor set from V(g1), each vertex with probability alpha, then
/// calls match_seedless_anchored.
MatchResult match_seedless(const Graph& g1, const Graph& g2, double alpha, const SeedlessOptions& options, Rng& rng);

}  // namespace sgm

#endif  // SGM_SEEDLESS_HPP
