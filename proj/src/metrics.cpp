#include "sgm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgm/flow.hpp"

namespace sgm {

std::size_t qap_objective(const Graph& g1, const Graph& g2, const Permutation& pi) {
    if (g1.n() != g2.n()) throw InputError("qap: graphs have different vertex counts");
    if (pi.size() != g2.n()) throw InputError("qap: permutation size does not match the graphs");
    std::size_t common = 0;
    for (const auto& [i, j] : g2.edges()) {
        if (g1.has_edge(pi(i), pi(j))) ++common;
    }
    return g1.edge_count() + g2.edge_count() - 2 * common;
}

Accuracy accuracy(const MatchResult& result, const Permutation& pi_star) {
    const std::size_t n = pi_star.size();
    if (result.n() != n) throw InputError("accuracy: result size does not match pi*");
    if (n == 0) return {1.0, true};
    std::size_t correct = 0;
    for (Vertex i = 0; i < n; ++i) {
        if (result.pi_hat[i] == pi_star(i)) ++correct;
    }
    return {static_cast<double>(correct) / static_cast<double>(n), correct == n};
}

std::size_t converse_certificate(const CorrelatedInstance& inst, const SeedMap& seeds) {
    const Graph both = graph_and(inst.g1_star, inst.g2);
    std::size_t count = 0;
    for (Vertex v = 0; v < both.n(); ++v) {
        if (both.degree(v) == 0 && !seeds.is_seeded(v)) ++count;
    }
    return count;
}

namespace {

/// Depth-first enumeration of length-ell simple paths from root ending in
/// `targets`. Returns false once `budget` paths have been exceeded.
class ReturnPathSearch {
   public:
    ReturnPathSearch(const Graph& g, Vertex root, std::uint32_t ell, const std::vector<std::uint8_t>& target,
                     std::size_t budget)
        : g_(g), ell_(ell), target_(target), budget_(budget), on_path_(g.n(), 0) {
        path_.push_back(root);
        on_path_[root] = 1;
    }

    bool enumerate() { return extend(); }
    const std::vector<std::vector<Vertex>>& paths() const { return paths_; }

   private:
    bool extend() {
        if (path_.size() == ell_ + 1) {
            if (target_[path_.back()]) {
                if (paths_.size() == budget_) return false;
                paths_.emplace_back(path_.begin() + 1, path_.end());
            }
            return true;
        }
        for (Vertex w : g_.neighbors(path_.back())) {
            if (on_path_[w]) continue;
            on_path_[w] = 1;
            path_.push_back(w);
            const bool ok = extend();
            path_.pop_back();
            on_path_[w] = 0;
            if (!ok) return false;
        }
        return true;
    }

    const Graph& g_;
    std::uint32_t ell_;
    const std::vector<std::uint8_t>& target_;
    std::size_t budget_;
    std::vector<std::uint8_t> on_path_;
    std::vector<Vertex> path_;
    std::vector<std::vector<Vertex>> paths_;
};

/// Maximum number of pairwise vertex-disjoint paths (root excluded) by
/// branch and bound. Endpoints are path members, so distinct endpoints follow.
class DisjointPacking {
   public:
    DisjointPacking(const std::vector<std::vector<Vertex>>& paths, std::size_t n) : paths_(paths), used_(n, 0) {}

    std::size_t solve() {
        best_ = 0;
        search(0, 0);
        return best_;
    }

   private:
    void search(std::size_t from, std::size_t taken) {
        best_ = std::max(best_, taken);
        if (taken + (paths_.size() - from) <= best_) return;
        for (std::size_t k = from; k < paths_.size(); ++k) {
            if (taken + (paths_.size() - k) <= best_) return;
            const auto& p = paths_[k];
            if (std::any_of(p.begin(), p.end(), [&](Vertex v) { return used_[v] != 0; })) continue;
            for (Vertex v : p) used_[v] = 1;
            search(k + 1, taken + 1);
            for (Vertex v : p) used_[v] = 0;
        }
    }

    const std::vector<std::vector<Vertex>>& paths_;
    std::vector<std::uint8_t> used_;
    std::size_t best_ = 0;
};

}  // namespace

std::optional<std::size_t> count_short_return_paths(const Graph& g, Vertex root, std::uint32_t ell,
                                                    std::size_t budget) {
    if (root >= g.n()) throw InputError("root out of range");
    if (ell < 1) return 0;
    std::vector<std::uint8_t> target(g.n(), 0);
    Bfs bfs(g.n());
    bfs.run(g, root, ell - 1);
    for (Vertex v : bfs.ball()) {
        if (v != root) target[v] = 1;
    }
    ReturnPathSearch search(g, root, ell, target, budget);
    if (!search.enumerate()) return std::nullopt;
    return DisjointPacking(search.paths(), g.n()).solve();
}

PropertyReport check_graph_properties(const Graph& g, double tau, std::uint32_t ell, std::uint32_t m,
                                      const SeedMap& seeds, const PropertyOptions& options) {
    if (seeds.n() != g.n()) throw InputError("properties: seed map size does not match the graph");
    PropertyReport report;
    const std::size_t n = g.n();

    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) == 0) report.no_isolated.witnesses.push_back(v);
    }
    if (!report.no_isolated.witnesses.empty()) report.no_isolated.verdict = Verdict::kFails;

    // |Gamma_1(u) u Gamma_1(v)| for each edge; u and v are adjacent to each
    // other, so both count.
    for (const auto& [u, v] : g.edges()) {
        const auto a = g.neighbors(u);
        const auto b = g.neighbors(v);
        std::size_t both = 0;
        std::size_t ia = 0;
        std::size_t ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia] < b[ib]) {
                ++ia;
            } else if (b[ib] < a[ia]) {
                ++ib;
            } else {
                ++both;
                ++ia;
                ++ib;
            }
        }
        const std::size_t covered = a.size() + b.size() - both;
        if (static_cast<double>(covered) < tau) {
            report.adjacent_coverage.verdict = Verdict::kFails;
            report.adjacent_coverage.witnesses = {u, v};
            break;
        }
    }

    if (ell >= 1) {
        Bfs bfs(n);
        for (Vertex v = 0; v < n; ++v) {
            if (static_cast<double>(g.degree(v)) < tau) continue;
            bfs.run(g, v, ell);
            std::vector<Vertex> targets;
            for (Vertex w : bfs.layer(ell)) {
                if (seeds.is_seeded(w)) targets.push_back(w);
            }
            const auto paths = count_disjoint_paths_to_set(g, v, ell, VertexSet(std::move(targets)));
            if (paths.value < 2 * static_cast<std::size_t>(m)) report.seeded_paths.witnesses.push_back(v);
        }
        if (!report.seeded_paths.witnesses.empty()) report.seeded_paths.verdict = Verdict::kFails;

        bool undetermined = false;
        for (Vertex v = 0; v < n; ++v) {
            const auto count = count_short_return_paths(g, v, ell, options.path_budget);
            if (!count) {
                undetermined = true;
            } else if (*count > (m == 0 ? 0 : m - 1)) {
                report.few_short_returns.witnesses.push_back(v);
            }
        }
        if (!report.few_short_returns.witnesses.empty())
            report.few_short_returns.verdict = Verdict::kFails;
        else if (undetermined)
            report.few_short_returns.verdict = Verdict::kUndetermined;
    }
    return report;
}

ExpansionStats expansion_stats(const Graph& g, std::uint32_t k_max, Rng& rng, const ExpansionOptions& options) {
    if (k_max < 1) throw InputError("expansion_stats: k_max must be at least 1");
    const std::size_t n = g.n();
    ExpansionStats out;
    out.np = options.np > 0.0 ? options.np
                              : (n == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n));
    out.layers.resize(k_max);
    for (std::uint32_t k = 1; k <= k_max; ++k) out.layers[k - 1].k = k;
    if (n == 0) return out;

    // Sample without replacement when possible.
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    const std::size_t samples = std::min(n, options.vertex_samples);
    for (std::size_t i = 0; i < samples; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
    out.sampled_vertices = samples;

    Bfs bfs(n);
    for (auto& layer : out.layers) {
        layer.min_ratio = std::numeric_limits<double>::infinity();
        layer.max_ratio = 0.0;
    }
    for (std::size_t s = 0; s < samples; ++s) {
        bfs.run(g, order[s], k_max);
        for (auto& layer : out.layers) {
            const double expected = std::pow(out.np, static_cast<double>(layer.k));
            const double size = static_cast<double>(bfs.layer(layer.k).size());
            const double ratio = expected > 0.0 ? size / expected : 0.0;
            layer.mean_ratio += ratio;
            layer.min_ratio = std::min(layer.min_ratio, ratio);
            layer.max_ratio = std::max(layer.max_ratio, ratio);
            if (ratio >= 0.75 && ratio <= 1.25) layer.fraction_in_band += 1.0;
        }
    }
    for (auto& layer : out.layers) {
        layer.mean_ratio /= static_cast<double>(samples);
        layer.fraction_in_band /= static_cast<double>(samples);
    }

    if (n >= 2) {
        Bfs other(n);
        double total = 0.0;
        for (std::size_t t = 0; t < options.pair_samples; ++t) {
            const auto u = static_cast<Vertex>(rng.below(n));
            auto v = static_cast<Vertex>(rng.below(n - 1));
            if (v >= u) ++v;
            bfs.run(g, u, k_max);
            other.run(g, v, k_max);
            std::size_t overlap = 0;
            for (Vertex w : bfs.ball()) {
                if (other.reached(w)) ++overlap;
            }
            total += static_cast<double>(overlap);
            out.max_overlap = std::max(out.max_overlap, overlap);
        }
        out.sampled_pairs = options.pair_samples;
        out.mean_overlap = options.pair_samples ? total / static_cast<double>(options.pair_samples) : 0.0;
    }
    const double p = out.np / static_cast<double>(n > 1 ? n - 1 : 1);
    const double d = static_cast<double>(k_max) + 1.0;
    out.overlap_bound = 8.0 * std::pow(static_cast<double>(n), 2.0 * d - 3.0) * std::pow(p, 2.0 * d - 2.0);
    return out;
}

TrialReport make_report(const CorrelatedInstance& inst, const SeedMap& seeds, const MatchResult& result,
                        const ParamSet& params, double runtime_ms) {
    TrialReport r;
    const Accuracy acc = accuracy(result, inst.pi_star);
    r.exact = acc.exact;
    r.fraction_correct = acc.fraction;
    if (result.output) r.qap = qap_objective(inst.g1, inst.g2, *result.output);
    r.certificate = converse_certificate(inst, seeds);
    r.failed = result.failed;
    r.runtime_ms = runtime_ms;
    r.params = params;
    r.warnings = result.warnings;
    if (r.certificate >= 2) {
        r.warnings.push_back("certificate: " + std::to_string(r.certificate) +
                             " unseeded isolated vertices in the intersection graph; exact recovery is obstructed");
    }
    return r;
}

}  // namespace sgm
