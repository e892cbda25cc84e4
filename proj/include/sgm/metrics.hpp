#ifndef SGM_METRICS_HPP
#define SGM_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/matchers.hpp"
#include "sgm/model.hpp"

namespace sgm {

/// Unordered pairs {i, j} of G2 vertices with g1(pi(i), pi(j)) != g2(i, j).
/// This is half the squared Frobenius distance between G1 and the
/// pi-relabeled G2; double it for the raw Frobenius form.
std::size_t qap_objective(const Graph& g1, const Graph& g2, const Permutation& pi);

struct Accuracy {
    double fraction = 0.0;
    bool exact = false;
};

/// Fraction of G2 vertices whose assignment in `result.pi_hat` equals pi*.
/// Unassigned vertices count as wrong.
Accuracy accuracy(const MatchResult& result, const Permutation& pi_star);

/// Vertices isolated in G1* ^ G2 that carry no seed. Two or more means every
/// estimator is wrong with probability at least 1/2 given the observation.
std::size_t converse_certificate(const CorrelatedInstance& inst, const SeedMap& seeds);

enum class Verdict : std::uint8_t { kHolds, kFails, kUndetermined };

struct PropertyCheck {
    Verdict verdict = Verdict::kHolds;
    /// Offending vertices (for the adjacency property: both endpoints of the
    /// first offending edge). Empty when the property holds.
    std::vector<Vertex> witnesses;
};

struct PropertyReport {
    PropertyCheck no_isolated;          // no vertex of degree 0
    PropertyCheck adjacent_coverage;    // >= tau vertices adjacent to an endpoint of each edge
    PropertyCheck seeded_paths;         // >= 2m independent ell-paths to seeds from each degree >= tau vertex
    PropertyCheck few_short_returns;    // <= m-1 independent ell-paths ending within distance ell-1
};

struct PropertyOptions {
    /// Enumeration cap per vertex for few_short_returns; exceeding it reports
    /// kUndetermined for that vertex rather than a verdict.
    std::size_t path_budget = 200000;
};

/// Structural properties of a graph given in the parent (G2) labeling; `seeds` marks which of its vertices are seeded.
PropertyReport check_graph_properties(const Graph& g, double tau, std::uint32_t ell, std::uint32_t m,
                                      const SeedMap& seeds, const PropertyOptions& options = {});

/// Largest family of length-ell simple paths from root, pairwise disjoint
/// except at root, ending at distinct vertices of N_{ell-1}(root) \ {root}.
/// nullopt when more than `budget` candidate paths exist.
std::optional<std::size_t> count_short_return_paths(const Graph& g, Vertex root, std::uint32_t ell,
                                                    std::size_t budget);

struct LayerStats {
    std::uint32_t k = 0;
    double mean_ratio = 0.0;        // mean of |Gamma_k(u)| / (np)^k over sampled u
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double fraction_in_band = 0.0;  // share of samples with ratio in [3/4, 5/4]
};

struct ExpansionStats {
    double np = 0.0;
    std::vector<LayerStats> layers;  // k = 1..k_max
    std::size_t sampled_vertices = 0;
    std::size_t sampled_pairs = 0;
    double mean_overlap = 0.0;       // mean |N_kmax(u) ^ N_kmax(v)| over sampled pairs
    std::size_t max_overlap = 0;
    double overlap_bound = 0.0;      // 8 n^(2d-3) p^(2d-2) with d = k_max + 1
};

struct ExpansionOptions {
    std::size_t vertex_samples = 500;
    std::size_t pair_samples = 1000;
    /// Expected degree; <= 0 means use the empirical mean degree.
    double np = 0.0;
};

ExpansionStats expansion_stats(const Graph& g, std::uint32_t k_max, Rng& rng, const ExpansionOptions& options = {});

/// One experiment outcome; serializes to a CSV row in the harness.
struct TrialReport {
    bool exact = false;
    double fraction_correct = 0.0;
    std::size_t qap = 0;
    std::size_t certificate = 0;
    bool failed = false;
    double runtime_ms = 0.0;
    ParamSet params;
    std::vector<std::string> warnings;
};

/// Scores a finished match against the instance it was run on.
TrialReport make_report(const CorrelatedInstance& inst, const SeedMap& seeds, const MatchResult& result,
                        const ParamSet& params, double runtime_ms);

}  // namespace sgm

#endif  // SGM_METRICS_HPP
