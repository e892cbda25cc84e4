#include "sgm/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sgm/metrics.hpp"

namespace sgm::oracle {

QapOptimum brute_force_qap(const Graph& g1, const Graph& g2) {
    if (g1.n() != g2.n()) throw InputError("qap oracle: graphs have different vertex counts");
    if (g1.n() > 10) throw ResourceError("qap oracle: more than 10 vertices");
    std::vector<Vertex> forward(g1.n());
    std::iota(forward.begin(), forward.end(), Vertex{0});
    QapOptimum best;
    bool first = true;
    do {
        const Permutation pi(forward);
        const std::size_t q = qap_objective(g1, g2, pi);
        if (first || q < best.value) {
            best.value = q;
            best.argmin = pi;
            best.optimal_count = 1;
            first = false;
        } else if (q == best.value) {
            ++best.optimal_count;
        }
    } while (std::next_permutation(forward.begin(), forward.end()));
    return best;
}

namespace {

using Path = std::vector<Vertex>;  // root excluded

/// Simple paths of exactly ell edges from root, grouped by endpoint.
std::map<Vertex, std::vector<Path>> paths_by_end(const Graph& g, Vertex root, std::uint32_t ell) {
    std::map<Vertex, std::vector<Path>> out;
    std::vector<std::uint8_t> on(g.n(), 0);
    Path path;
    on[root] = 1;
    auto rec = [&](auto&& self, Vertex at) -> void {
        if (path.size() == ell) {
            out[at].push_back(path);
            return;
        }
        for (Vertex w : g.neighbors(at)) {
            if (on[w]) continue;
            on[w] = 1;
            path.push_back(w);
            self(self, w);
            path.pop_back();
            on[w] = 0;
        }
    };
    rec(rec, root);
    return out;
}

bool fits(const Path& p, const std::vector<std::uint8_t>& used) {
    return std::none_of(p.begin(), p.end(), [&](Vertex v) { return used[v] != 0; });
}

void mark(const Path& p, std::vector<std::uint8_t>& used, std::uint8_t value) {
    for (Vertex v : p) used[v] = value;
}

struct Leaf {
    const std::vector<Path>* first;
    const std::vector<Path>* second;  // null for the one-graph search
};

class LeafSearch {
   public:
    LeafSearch(std::vector<Leaf> leaves, std::size_t n1, std::size_t n2)
        : leaves_(std::move(leaves)), used1_(n1, 0), used2_(n2, 0) {}

    std::size_t solve() {
        search(0, 0);
        return best_;
    }

   private:
    void search(std::size_t k, std::size_t taken) {
        best_ = std::max(best_, taken);
        if (k == leaves_.size() || taken + (leaves_.size() - k) <= best_) return;
        const Leaf& leaf = leaves_[k];
        for (const Path& a : *leaf.first) {
            if (!fits(a, used1_)) continue;
            mark(a, used1_, 1);
            if (leaf.second == nullptr) {
                search(k + 1, taken + 1);
            } else {
                for (const Path& b : *leaf.second) {
                    if (!fits(b, used2_)) continue;
                    mark(b, used2_, 1);
                    search(k + 1, taken + 1);
                    mark(b, used2_, 0);
                }
            }
            mark(a, used1_, 0);
        }
        search(k + 1, taken);
    }

    std::vector<Leaf> leaves_;
    std::vector<std::uint8_t> used1_;
    std::vector<std::uint8_t> used2_;
    std::size_t best_ = 0;
};

}  // namespace

std::size_t joint_paths(const Graph& g1, Vertex i1, const Graph& g2, Vertex i2, std::uint32_t ell,
                        const SeedMap& seeds) {
    if (ell < 1) return 0;
    const VertexSet layer1 = gamma_k(g1, i1, ell);
    const VertexSet layer2 = gamma_k(g2, i2, ell);
    const auto paths1 = paths_by_end(g1, i1, ell);
    const auto paths2 = paths_by_end(g2, i2, ell);
    std::vector<Leaf> leaves;
    for (Vertex y : layer2.members()) {
        if (!seeds.is_seeded(y) || !layer1.contains(seeds[y])) continue;
        leaves.push_back({&paths1.at(seeds[y]), &paths2.at(y)});
    }
    return LeafSearch(std::move(leaves), g1.n(), g2.n()).solve();
}

std::size_t paths_to_set(const Graph& g, Vertex root, std::uint32_t ell, const VertexSet& targets) {
    if (ell < 1) return 0;
    const auto paths = paths_by_end(g, root, ell);
    const VertexSet layer = gamma_k(g, root, ell);
    std::vector<Leaf> leaves;
    for (Vertex t : targets.members()) {
        if (layer.contains(t)) leaves.push_back({&paths.at(t), nullptr});
    }
    return LeafSearch(std::move(leaves), g.n(), 0).solve();
}

}  // namespace sgm::oracle
