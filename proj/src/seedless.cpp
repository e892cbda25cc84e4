#include "sgm/seedless.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "sgm/metrics.hpp"

namespace sgm {

std::uint64_t injection_count(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < k; ++t) {
        const std::uint64_t factor = n - t;
        if (total > std::numeric_limits<std::uint64_t>::max() / factor) return std::numeric_limits<std::uint64_t>::max();
        total *= factor;
    }
    return total;
}

namespace {

class SeedlessSearch {
   public:
    SeedlessSearch(const Graph& g1, const Graph& g2, const std::vector<Vertex>& anchors, const SeedlessOptions& options,
                   std::uint64_t stream)
        : g1_(g1), g2_(g2), anchors_(anchors), options_(options), stream_(stream), assignment_(g1.n(), kNoVertex),
          taken_(g2.n(), 0) {}

    MatchResult run() {
        extend(0);
        return std::move(best_);
    }

    std::uint64_t tried() const { return tried_; }

   private:
    void extend(std::size_t depth) {
        if (depth == anchors_.size()) {
            evaluate();
            return;
        }
        for (Vertex v = 0; v < g2_.n(); ++v) {
            if (taken_[v]) continue;
            taken_[v] = 1;
            assignment_[v] = anchors_[depth];
            extend(depth + 1);
            assignment_[v] = kNoVertex;
            taken_[v] = 0;
        }
    }

    void evaluate() {
        Rng rng(mix64(stream_ ^ mix64(tried_)));
        ++tried_;
        const SeedMap seeds(assignment_);
        MatchResult r = run_seeded(options_.inner, g1_, g2_, seeds, options_.params, rng);
        const std::size_t q = qap_objective(g1_, g2_, *r.output);
        if (!have_best_ || q < best_qap_ || (q == best_qap_ && *r.output < *best_.output)) {
            best_ = std::move(r);
            best_qap_ = q;
            have_best_ = true;
        }
    }

    const Graph& g1_;
    const Graph& g2_;
    const std::vector<Vertex>& anchors_;
    const SeedlessOptions& options_;
    std::uint64_t stream_;
    std::vector<Vertex> assignment_;
    std::vector<std::uint8_t> taken_;
    std::uint64_t tried_ = 0;
    MatchResult best_;
    std::size_t best_qap_ = 0;
    bool have_best_ = false;
};

}  // namespace

MatchResult match_seedless_anchored(const Graph& g1, const Graph& g2, const std::vector<Vertex>& anchors,
                                    const SeedlessOptions& options, Rng& rng) {
    if (g1.n() != g2.n()) throw InputError("graphs have different vertex counts");
    if (options.inner == Algorithm::kSeedless) throw InputError("seedless: inner matcher must be a seeded algorithm");
    std::vector<Vertex> sorted = anchors;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("seedless: repeated anchor");
    if (!sorted.empty() && sorted.back() >= g1.n()) throw InputError("seedless: anchor out of range");

    const std::uint64_t count = injection_count(g1.n(), anchors.size());
    if (count > options.budget) {
        throw ResourceError("seedless: " + std::to_string(anchors.size()) + " anchors on " + std::to_string(g1.n()) +
                            " vertices need " +
                            (count == std::numeric_limits<std::uint64_t>::max() ? std::string("over 2^64")
                                                                                 : std::to_string(count)) +
                            " seeded runs, budget is " + std::to_string(options.budget));
    }
    SeedlessSearch search(g1, g2, anchors, options, rng.next());
    MatchResult best = search.run();
    best.warnings.push_back("seedless: " + std::to_string(search.tried()) + " seed maps from " +
                            std::to_string(anchors.size()) + " anchors");
    return best;
}

MatchResult match_seedless(const Graph& g1, const Graph& g2, double alpha, const SeedlessOptions& options, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("seedless: alpha must lie in [0, 1]");
    std::vector<Vertex> anchors;
    for (Vertex v = 0; v < g1.n(); ++v) {
        if (rng.bernoulli(alpha)) anchors.push_back(v);
    }
    return match_seedless_anchored(g1, g2, anchors, options, rng);
}

}  // namespace sgm
