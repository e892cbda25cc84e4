#ifndef SGM_MATCHERS_HPP
#define SGM_MATCHERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/model.hpp"
#include "sgm/params.hpp"
#include "sgm/rng.hpp"

namespace sgm {

enum class MatchStatus : std::uint8_t { kUnmatched, kSeedCopied, kHighDegree, kPropagated };

enum class ConflictKind : std::uint8_t {
    kCollision,  // two partners for one vertex; sets `failed`
    kAmbiguity,  // argmax tie broken by lowest id; informational
};

/// For a collision with rival_in_g1, G2 vertex `g2` was offered both `g1` and
/// `rival`; otherwise G1 vertex `g1` was claimed by both `g2` and G2 vertex
/// `rival`. For an ambiguity, `g1` won the tie against `rival`.
struct Conflict {
    ConflictKind kind;
    Vertex g2;
    Vertex g1;
    Vertex rival;
    bool rival_in_g1;

    friend bool operator==(const Conflict&, const Conflict&) = default;
};

/// Matcher output. `pi_hat` maps G2 vertices to G1 vertices (kNoVertex when
/// unassigned) and stays injective: vertices caught in a collision are left
/// unassigned and the collision is logged. `output` is the total permutation
/// the algorithm reports, after the random fallback if one was needed.
struct MatchResult {
    std::vector<Vertex> pi_hat;
    std::vector<MatchStatus> status;
    bool failed = false;
    bool fallback_used = false;
    std::vector<Conflict> conflicts;
    std::vector<std::string> warnings;
    std::optional<Permutation> output;

    static MatchResult empty(std::size_t n) {
        MatchResult r;
        r.pi_hat.assign(n, kNoVertex);
        r.status.assign(n, MatchStatus::kUnmatched);
        return r;
    }

    std::size_t n() const { return pi_hat.size(); }
    std::size_t assigned_count() const;
    bool complete() const { return assigned_count() == n(); }
    bool has_collision() const;
    void assign(Vertex g2, Vertex g1, MatchStatus st) {
        pi_hat[g2] = g1;
        status[g2] = st;
    }
};

enum class WitnessMode : std::uint8_t { kExact, kFast };

enum class Algorithm : std::uint8_t { kAlg1, kAlg2, kAlg3Fast, kAlg3Exact, kSeedless };

/// "alg1", "alg2", "alg3-fast", "alg3-exact", "seedless". Throws InputError on
/// an unknown name.
Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algo);

// -- Independent-path matching --------------------------------------------

/// Assigns pi_hat(i2) = i1 for every unseeded pair whose joint network carries
/// a flow of at least m. Seeds are not copied here.
MatchResult match_high_degree_alg1(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t ell,
                                   std::uint32_t m);

/// Copies the seeds, then repeatedly matches unmatched pairs (i1, i2) where
/// i1 neighbors a matched j1 and i2 neighbors its G2 partner, until nothing
/// changes. A vertex offered two partners in one pass fails the result.
/// Throws InputError if `partial` already failed.
MatchResult propagate_low_degree(const Graph& g1, const Graph& g2, const MatchResult& partial, const SeedMap& seeds);

/// Fills `output`. A complete, non-failed result is taken as is; otherwise the
/// result is marked failed and its unassigned vertices are paired with the
/// unused G1 vertices uniformly at random.
void finalize_with_fallback(MatchResult& result, Rng& rng);

MatchResult match_alg1(const Graph& g1, const Graph& g2, const SeedMap& seeds, const ParamSet& params, Rng& rng);

// -- Witness matching, dense regime ----------------------------------------

/// Seeds j with pi0(j) within r of i1 in g1 and j within r of i2 in g2.
std::size_t compute_witness(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t r, Vertex i1,
                            Vertex i2);

/// Every unseeded i2 takes the unseeded i1 with the largest witness count at
/// radius d - 1 (lowest id on ties, logged as an ambiguity).
MatchResult match_alg2(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t d, Rng& rng);

// -- Witness matching, sparse regime ---------------------------------------

/// Seed count shared by the radius-ell balls of i (in g1 minus {u, x}) and of j
/// (in g2 minus {v, y}). Exact mode minimizes over x != i and y != j; fast
/// mode removes {u, v} from both graphs, except the root itself. Requires
/// i ~ u in g1 and j ~ v in g2.
std::size_t compute_pair_witness(const Graph& g1, const Graph& g2, const SeedMap& seeds, Vertex u, Vertex v,
                                 Vertex i, Vertex j, std::uint32_t ell, WitnessMode mode);

/// Number of neighbor pairs (i, j) of (u, v) whose pair witness reaches eta.
/// A witness of 0 never counts, whatever eta is.
std::size_t compute_z(const Graph& g1, const Graph& g2, const SeedMap& seeds, Vertex u, Vertex v, std::uint32_t ell,
                      double eta, WitnessMode mode);

/// Assigns unseeded pairs with Z(u, v) >= sparse_match_threshold(n), then
/// propagates and falls back exactly as match_alg1 does.
MatchResult match_alg3(const Graph& g1, const Graph& g2, const SeedMap& seeds, const ParamSet& params,
                       WitnessMode mode, Rng& rng);

/// Runs the seeded algorithm `algo` (not kSeedless) with `params`.
MatchResult run_seeded(Algorithm algo, const Graph& g1, const Graph& g2, const SeedMap& seeds, const ParamSet& params,
                       Rng& rng);

}  // namespace sgm

#endif  // SGM_MATCHERS_HPP
