#include "sgm/matchers.hpp"

#include <algorithm>

#include "sgm/flow.hpp"
#include "src/match_internal.hpp"

namespace sgm {

std::size_t MatchResult::assigned_count() const {
    return static_cast<std::size_t>(std::count_if(pi_hat.begin(), pi_hat.end(), [](Vertex v) { return v != kNoVertex; }));
}

bool MatchResult::has_collision() const {
    return std::any_of(conflicts.begin(), conflicts.end(),
                       [](const Conflict& c) { return c.kind == ConflictKind::kCollision; });
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "alg1") return Algorithm::kAlg1;
    if (name == "alg2") return Algorithm::kAlg2;
    if (name == "alg3-fast" || name == "alg3") return Algorithm::kAlg3Fast;
    if (name == "alg3-exact") return Algorithm::kAlg3Exact;
    if (name == "seedless") return Algorithm::kSeedless;
    throw InputError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::kAlg1: return "alg1";
        case Algorithm::kAlg2: return "alg2";
        case Algorithm::kAlg3Fast: return "alg3-fast";
        case Algorithm::kAlg3Exact: return "alg3-exact";
        case Algorithm::kSeedless: return "seedless";
    }
    return "?";
}

namespace detail {

void check_inputs(const Graph& g1, const Graph& g2, const SeedMap& seeds) {
    if (g1.n() != g2.n()) throw InputError("graphs have different vertex counts");
    if (seeds.n() != g2.n()) throw InputError("seed map size does not match the graphs");
}

bool resolve_candidates(MatchResult& result, std::vector<std::pair<Vertex, Vertex>> candidates, MatchStatus status) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const std::size_t n = result.n();
    std::vector<std::uint32_t> per_g2(n, 0);
    std::vector<std::uint32_t> per_g1(n, 0);
    std::vector<Vertex> first_g2_of_g1(n, kNoVertex);
    for (const auto& [g2, g1] : candidates) {
        ++per_g2[g2];
        ++per_g1[g1];
    }

    bool collided = false;
    Vertex current_g2 = kNoVertex;
    Vertex first_g1 = kNoVertex;
    for (const auto& [g2, g1] : candidates) {
        if (g2 != current_g2) {
            current_g2 = g2;
            first_g1 = g1;
        } else {
            result.conflicts.push_back({ConflictKind::kCollision, g2, first_g1, g1, true});
            collided = true;
        }
        if (first_g2_of_g1[g1] == kNoVertex) {
            first_g2_of_g1[g1] = g2;
        } else {
            result.conflicts.push_back({ConflictKind::kCollision, first_g2_of_g1[g1], g1, g2, false});
            collided = true;
        }
    }
    for (const auto& [g2, g1] : candidates) {
        if (per_g2[g2] == 1 && per_g1[g1] == 1) result.assign(g2, g1, status);
    }
    if (collided) result.failed = true;
    return collided;
}

void copy_seeds(MatchResult& result, const SeedMap& seeds) {
    std::vector<Vertex> owner(result.n(), kNoVertex);
    for (Vertex g2 = 0; g2 < result.n(); ++g2) {
        if (result.pi_hat[g2] != kNoVertex) owner[result.pi_hat[g2]] = g2;
    }
    for (Vertex j : seeds.seeded()) {
        const Vertex image = seeds[j];
        if (owner[image] != kNoVertex && owner[image] != j) {
            throw InputError("partial assignment maps G2 vertex " + std::to_string(owner[image]) +
                             " onto seed image " + std::to_string(image));
        }
        result.assign(j, image, MatchStatus::kSeedCopied);
    }
}

}  // namespace detail

MatchResult match_high_degree_alg1(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t ell,
                                   std::uint32_t m) {
    detail::check_inputs(g1, g2, seeds);
    if (ell < 1) throw InputError("alg1: ell must be at least 1");
    if (m < 1) throw InputError("alg1: m must be at least 1");
    const std::size_t n = g1.n();

    // For each seed image x in G1, the unseeded vertices at distance exactly
    // ell from x. The flow for (i1, i2) is at most the number of seeded G2
    // leaves of i2 whose image is a G1 leaf of i1, so only pairs sharing at
    // least m such leaves need a network.
    std::vector<std::vector<Vertex>> leaf_of(n);
    Bfs bfs1(n);
    for (Vertex j : seeds.seeded()) {
        const Vertex x = seeds[j];
        bfs1.run(g1, x, ell);
        for (Vertex v : bfs1.layer(ell)) {
            if (!seeds.is_seed_image(v)) leaf_of[x].push_back(v);
        }
    }

    Bfs bfs2(n);
    JointNetworkBuilder builder(g1, g2, seeds);
    FlowNetwork net;
    std::vector<std::uint32_t> shared(n, 0);
    std::vector<Vertex> touched;
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (Vertex i2 = 0; i2 < n; ++i2) {
        if (seeds.is_seeded(i2)) continue;
        bfs2.run(g2, i2, ell);
        for (Vertex y : bfs2.layer(ell)) {
            if (!seeds.is_seeded(y)) continue;
            for (Vertex i1 : leaf_of[seeds[y]]) {
                if (shared[i1]++ == 0) touched.push_back(i1);
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Vertex i1 : touched) {
            if (shared[i1] >= m) {
                builder.build(i1, i2, ell, net);
                if (max_flow(net).value >= m) candidates.emplace_back(i2, i1);
            }
            shared[i1] = 0;
        }
        touched.clear();
    }

    MatchResult result = MatchResult::empty(n);
    detail::resolve_candidates(result, std::move(candidates), MatchStatus::kHighDegree);
    return result;
}

MatchResult propagate_low_degree(const Graph& g1, const Graph& g2, const MatchResult& partial, const SeedMap& seeds) {
    detail::check_inputs(g1, g2, seeds);
    if (partial.n() != g1.n()) throw InputError("partial result size does not match the graphs");
    if (partial.failed) throw InputError("cannot propagate from a failed partial result");

    const std::size_t n = g1.n();
    MatchResult result = partial;
    detail::copy_seeds(result, seeds);

    std::vector<Vertex> owner(n, kNoVertex);
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (;;) {
        std::fill(owner.begin(), owner.end(), kNoVertex);
        for (Vertex j2 = 0; j2 < n; ++j2) {
            if (result.pi_hat[j2] != kNoVertex) owner[result.pi_hat[j2]] = j2;
        }
        candidates.clear();
        for (Vertex j2 = 0; j2 < n; ++j2) {
            const Vertex j1 = result.pi_hat[j2];
            if (j1 == kNoVertex) continue;
            for (Vertex i1 : g1.neighbors(j1)) {
                if (owner[i1] != kNoVertex) continue;
                for (Vertex i2 : g2.neighbors(j2)) {
                    if (result.pi_hat[i2] == kNoVertex) candidates.emplace_back(i2, i1);
                }
            }
        }
        if (candidates.empty()) break;
        if (detail::resolve_candidates(result, std::move(candidates), MatchStatus::kPropagated)) break;
        candidates = {};
    }
    return result;
}

void finalize_with_fallback(MatchResult& result, Rng& rng) {
    if (!result.failed && result.complete()) {
        result.output = Permutation(result.pi_hat);
        return;
    }
    result.failed = true;
    result.fallback_used = true;

    const std::size_t n = result.n();
    std::vector<std::uint8_t> used(n, 0);
    std::vector<Vertex> free_g2;
    for (Vertex g2 = 0; g2 < n; ++g2) {
        if (result.pi_hat[g2] != kNoVertex)
            used[result.pi_hat[g2]] = 1;
        else
            free_g2.push_back(g2);
    }
    std::vector<Vertex> free_g1;
    for (Vertex g1 = 0; g1 < n; ++g1) {
        if (!used[g1]) free_g1.push_back(g1);
    }
    rng.shuffle(free_g1.begin(), free_g1.end());
    std::vector<Vertex> forward = result.pi_hat;
    for (std::size_t k = 0; k < free_g2.size(); ++k) forward[free_g2[k]] = free_g1[k];
    result.output = Permutation(std::move(forward));
}

MatchResult match_alg1(const Graph& g1, const Graph& g2, const SeedMap& seeds, const ParamSet& params, Rng& rng) {
    MatchResult partial = match_high_degree_alg1(g1, g2, seeds, params.ell, params.m);
    MatchResult result;
    if (partial.failed) {
        result = std::move(partial);
        detail::copy_seeds(result, seeds);
    } else {
        result = propagate_low_degree(g1, g2, partial, seeds);
    }
    finalize_with_fallback(result, rng);
    return result;
}

MatchResult run_seeded(Algorithm algo, const Graph& g1, const Graph& g2, const SeedMap& seeds, const ParamSet& params,
                       Rng& rng) {
    switch (algo) {
        case Algorithm::kAlg1: return match_alg1(g1, g2, seeds, params, rng);
        case Algorithm::kAlg2: return match_alg2(g1, g2, seeds, params.d, rng);
        case Algorithm::kAlg3Fast: return match_alg3(g1, g2, seeds, params, WitnessMode::kFast, rng);
        case Algorithm::kAlg3Exact: return match_alg3(g1, g2, seeds, params, WitnessMode::kExact, rng);
        case Algorithm::kSeedless: break;
    }
    throw InputError("run_seeded: seedless matching is not a seeded algorithm");
}

}  // namespace sgm
