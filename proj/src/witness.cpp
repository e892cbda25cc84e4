#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "sgm/matchers.hpp"
#include "src/match_internal.hpp"

namespace sgm {

namespace {

/// Per-vertex bitsets over the seed list: bit k of row v says whether seed k
/// (through its image, on the G1 side) lies within `radius` of v.
class SeedBallBits {
   public:
    SeedBallBits(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t radius)
        : words_((seeds.count() + 63) / 64), bits1_(g1.n() * words_, 0), bits2_(g2.n() * words_, 0) {
        Bfs bfs(g1.n());
        const auto& seeded = seeds.seeded();
        // Distances are symmetric, so a BFS from each seed marks every vertex
        // whose ball contains it.
        for (std::size_t k = 0; k < seeded.size(); ++k) {
            const std::uint64_t bit = std::uint64_t{1} << (k % 64);
            bfs.run(g1, seeds[seeded[k]], radius);
            for (Vertex v : bfs.ball()) bits1_[v * words_ + k / 64] |= bit;
            bfs.run(g2, seeded[k], radius);
            for (Vertex v : bfs.ball()) bits2_[v * words_ + k / 64] |= bit;
        }
    }

    std::size_t common(Vertex i1, Vertex i2) const {
        const std::uint64_t* a = bits1_.data() + i1 * words_;
        const std::uint64_t* b = bits2_.data() + i2 * words_;
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
        return c;
    }

   private:
    std::size_t words_;
    std::vector<std::uint64_t> bits1_;
    std::vector<std::uint64_t> bits2_;
};

/// Evaluates pair witnesses with reusable BFS scratch.
class PairWitness {
   public:
    PairWitness(const Graph& g1, const Graph& g2, const SeedMap& seeds)
        : g1_(g1), g2_(g2), seeds_(seeds), bfs1_(g1.n()), bfs2_(g2.n()), seed_of_image_(g1.n(), kNoVertex) {
        for (Vertex k : seeds.seeded()) seed_of_image_[seeds[k]] = k;
    }

    std::size_t fast(Vertex u, Vertex v, Vertex i, Vertex j, std::uint32_t ell) {
        // The root is never deleted, matching the exact mode's choices.
        const Vertex removed1[2] = {u, v == i ? u : v};
        const Vertex removed2[2] = {v, u == j ? v : u};
        bfs1_.run(g1_, i, ell, removed1);
        bfs2_.run(g2_, j, ell, removed2);
        std::size_t c = 0;
        for (Vertex k : bfs2_.ball()) {
            if (seeds_.is_seeded(k) && bfs1_.reached(seeds_[k])) ++c;
        }
        return c;
    }

    std::size_t exact(Vertex u, Vertex v, Vertex i, Vertex j, std::uint32_t ell) {
        // Deleting x outside the ball of i (or x = u) changes nothing, so the
        // minimum only needs x in {none} + ball(i) \ {i}; likewise for y.
        const auto side1 = seed_sets(g1_, bfs1_, u, i, ell, true);
        const auto side2 = seed_sets(g2_, bfs2_, v, j, ell, false);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const auto& a : side1) {
            for (const auto& b : side2) {
                std::size_t c = 0;
                auto ia = a.begin();
                auto ib = b.begin();
                while (ia != a.end() && ib != b.end()) {
                    if (*ia < *ib) {
                        ++ia;
                    } else if (*ib < *ia) {
                        ++ib;
                    } else {
                        ++c;
                        ++ia;
                        ++ib;
                    }
                }
                best = std::min(best, c);
                if (best == 0) return 0;
            }
        }
        return best;
    }

    std::size_t eval(Vertex u, Vertex v, Vertex i, Vertex j, std::uint32_t ell, WitnessMode mode) {
        return mode == WitnessMode::kFast ? fast(u, v, i, j, ell) : exact(u, v, i, j, ell);
    }

   private:
    /// Sorted seed ids (G2 labels) inside the ball of `root` for every
    /// relevant choice of the extra deleted vertex.
    std::vector<std::vector<Vertex>> seed_sets(const Graph& g, Bfs& bfs, Vertex removed, Vertex root,
                                               std::uint32_t ell, bool first_side) {
        const Vertex base_removed[1] = {removed};
        bfs.run(g, root, ell, base_removed);
        std::vector<Vertex> extra;
        for (Vertex x : bfs.ball()) {
            if (x != root) extra.push_back(x);
        }
        std::vector<std::vector<Vertex>> sets;
        sets.reserve(extra.size() + 1);
        sets.push_back(collect(bfs, first_side));
        for (Vertex x : extra) {
            const Vertex both[2] = {removed, x};
            bfs.run(g, root, ell, both);
            sets.push_back(collect(bfs, first_side));
        }
        return sets;
    }

    std::vector<Vertex> collect(const Bfs& bfs, bool first_side) const {
        std::vector<Vertex> out;
        for (Vertex w : bfs.ball()) {
            const Vertex k = first_side ? seed_of_image_[w] : (seeds_.is_seeded(w) ? w : kNoVertex);
            if (k != kNoVertex) out.push_back(k);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const Graph& g1_;
    const Graph& g2_;
    const SeedMap& seeds_;
    Bfs bfs1_;
    Bfs bfs2_;
    std::vector<Vertex> seed_of_image_;
};

/// Smallest integer witness that passes the eta test; a witness of 0 never
/// passes.
std::size_t required_witness(double eta) {
    if (std::isnan(eta)) throw InputError("alg3: eta is not set");
    if (eta <= 1.0) return 1;
    return static_cast<std::size_t>(std::ceil(eta));
}

void check_pair(const Graph& g1, const Graph& g2, Vertex u, Vertex v, Vertex i, Vertex j) {
    if (u >= g1.n() || i >= g1.n() || v >= g2.n() || j >= g2.n()) throw InputError("pair witness: vertex out of range");
    if (!g1.has_edge(u, i)) throw InputError("pair witness: i is not a neighbor of u in g1");
    if (!g2.has_edge(v, j)) throw InputError("pair witness: j is not a neighbor of v in g2");
}

}  // namespace

std::size_t compute_witness(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t r, Vertex i1,
                            Vertex i2) {
    detail::check_inputs(g1, g2, seeds);
    if (r < 1) throw InputError("witness radius must be at least 1");
    const VertexSet ball1 = n_k(g1, i1, r);
    const VertexSet ball2 = n_k(g2, i2, r);
    std::size_t c = 0;
    for (Vertex j : seeds.seeded()) {
        if (ball2.contains(j) && ball1.contains(seeds[j])) ++c;
    }
    return c;
}

MatchResult match_alg2(const Graph& g1, const Graph& g2, const SeedMap& seeds, std::uint32_t d, Rng& rng) {
    detail::check_inputs(g1, g2, seeds);
    if (d < 2) throw InputError("alg2: d must be at least 2");
    const std::size_t n = g1.n();
    const SeedBallBits bits(g1, g2, seeds, d - 1);

    std::vector<Vertex> free_g1;
    for (Vertex i1 = 0; i1 < n; ++i1) {
        if (!seeds.is_seed_image(i1)) free_g1.push_back(i1);
    }

    MatchResult result = MatchResult::empty(n);
    detail::copy_seeds(result, seeds);
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (Vertex i2 = 0; i2 < n && !free_g1.empty(); ++i2) {
        if (seeds.is_seeded(i2)) continue;
        std::size_t best = 0;
        Vertex winner = kNoVertex;
        Vertex runner_up = kNoVertex;
        for (Vertex i1 : free_g1) {
            const std::size_t w = bits.common(i1, i2);
            if (winner == kNoVertex || w > best) {
                best = w;
                winner = i1;
                runner_up = kNoVertex;
            } else if (w == best && runner_up == kNoVertex) {
                runner_up = i1;
            }
        }
        candidates.emplace_back(i2, winner);
        if (runner_up != kNoVertex) result.conflicts.push_back({ConflictKind::kAmbiguity, i2, winner, runner_up, true});
    }
    detail::resolve_candidates(result, std::move(candidates), MatchStatus::kHighDegree);
    finalize_with_fallback(result, rng);
    return result;
}

std::size_t compute_pair_witness(const Graph& g1, const Graph& g2, const SeedMap& seeds, Vertex u, Vertex v,
                                 Vertex i, Vertex j, std::uint32_t ell, WitnessMode mode) {
    detail::check_inputs(g1, g2, seeds);
    check_pair(g1, g2, u, v, i, j);
    PairWitness pw(g1, g2, seeds);
    return pw.eval(u, v, i, j, ell, mode);
}

std::size_t compute_z(const Graph& g1, const Graph& g2, const SeedMap& seeds, Vertex u, Vertex v, std::uint32_t ell,
                      double eta, WitnessMode mode) {
    detail::check_inputs(g1, g2, seeds);
    if (u >= g1.n() || v >= g2.n()) throw InputError("compute_z: vertex out of range");
    const std::size_t need = required_witness(eta);
    PairWitness pw(g1, g2, seeds);
    std::size_t z = 0;
    for (Vertex i : g1.neighbors(u)) {
        for (Vertex j : g2.neighbors(v)) {
            if (pw.eval(u, v, i, j, ell, mode) >= need) ++z;
        }
    }
    return z;
}

MatchResult match_alg3(const Graph& g1, const Graph& g2, const SeedMap& seeds, const ParamSet& params,
                       WitnessMode mode, Rng& rng) {
    detail::check_inputs(g1, g2, seeds);
    if (params.ell < 1) throw InputError("alg3: ell must be at least 1");
    const std::size_t need = required_witness(params.eta);
    const std::size_t n = g1.n();
    const double threshold = sparse_match_threshold(n);
    const std::uint32_t ell = params.ell;

    // Deleting vertices only shrinks balls, so the witness on the intact
    // graphs bounds every pair witness from above. Pairs (i, j) below `need`
    // there can never count toward any Z(u, v).
    const SeedBallBits bits(g1, g2, seeds, ell);
    std::vector<std::vector<Vertex>> heavy(n);
    if (seeds.count() > 0) {
        for (Vertex i = 0; i < n; ++i) {
            if (g1.degree(i) == 0) continue;
            for (Vertex j = 0; j < n; ++j) {
                if (g2.degree(j) > 0 && bits.common(i, j) >= need) heavy[i].push_back(j);
            }
        }
    }

    PairWitness pw(g1, g2, seeds);
    std::vector<std::uint32_t> bound(n, 0);
    std::vector<Vertex> touched;
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (Vertex u = 0; u < n; ++u) {
        if (seeds.is_seed_image(u)) continue;
        for (Vertex i : g1.neighbors(u)) {
            for (Vertex j : heavy[i]) {
                for (Vertex v : g2.neighbors(j)) {
                    if (seeds.is_seeded(v)) continue;
                    if (bound[v]++ == 0) touched.push_back(v);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Vertex v : touched) {
            if (static_cast<double>(bound[v]) >= threshold) {
                std::size_t z = 0;
                for (Vertex i : g1.neighbors(u)) {
                    for (Vertex j : g2.neighbors(v)) {
                        if (!std::binary_search(heavy[i].begin(), heavy[i].end(), j)) continue;
                        if (pw.eval(u, v, i, j, ell, mode) >= need) ++z;
                    }
                    if (static_cast<double>(z) >= threshold) break;
                }
                if (static_cast<double>(z) >= threshold) candidates.emplace_back(v, u);
            }
            bound[v] = 0;
        }
        touched.clear();
    }

    MatchResult result = MatchResult::empty(n);
    detail::resolve_candidates(result, std::move(candidates), MatchStatus::kHighDegree);
    if (result.failed) {
        detail::copy_seeds(result, seeds);
    } else {
        result = propagate_low_degree(g1, g2, result, seeds);
    }
    finalize_with_fallback(result, rng);
    return result;
}

}  // namespace sgm
