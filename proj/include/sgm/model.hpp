#ifndef SGM_MODEL_HPP
#define SGM_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/rng.hpp"

namespace sgm {

/// Bijection on 0..n-1.
class Permutation {
   public:
    Permutation() = default;
    /// Throws InputError unless `forward` is a bijection on 0..size-1.
    explicit Permutation(std::vector<Vertex> forward);

    static Permutation identity(std::size_t n);
    static Permutation random(std::size_t n, Rng& rng);

    std::size_t size() const { return forward_.size(); }
    Vertex operator()(Vertex i) const { return forward_[i]; }
    std::span<const Vertex> forward() const { return forward_; }
    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.forward_ <=> b.forward_; }

   private:
    std::vector<Vertex> forward_;
};

/// Partial map from G2 vertices to G1 vertices; unknown entries hold kNoVertex.
class SeedMap {
   public:
    SeedMap() = default;
    /// Throws InputError if the known entries are not injective or out of range.
    explicit SeedMap(std::vector<Vertex> assignment, double alpha = 0.0);

    static SeedMap empty(std::size_t n) { return SeedMap(std::vector<Vertex>(n, kNoVertex)); }

    std::size_t n() const { return assignment_.size(); }
    bool is_seeded(Vertex v) const { return assignment_[v] != kNoVertex; }
    /// G1 partner of a seeded G2 vertex, kNoVertex otherwise.
    Vertex operator[](Vertex v) const { return assignment_[v]; }
    std::span<const Vertex> assignment() const { return assignment_; }
    /// Seeded G2 vertices, ascending.
    const std::vector<Vertex>& seeded() const { return seeded_; }
    std::size_t count() const { return seeded_.size(); }
    /// Whether a G1 vertex is the image of some seed.
    bool is_seed_image(Vertex v) const { return image_mask_[v] != 0; }
    double alpha() const { return alpha_; }

   private:
    std::vector<Vertex> assignment_;
    std::vector<Vertex> seeded_;
    std::vector<std::uint8_t> image_mask_;
    double alpha_ = 0.0;
};

struct ModelParams {
    std::size_t n = 0;
    double p = 0.0;
    double s = 0.0;
};

/// (G0, G1*, G1, G2, pi*) drawn from the correlated Erdos-Renyi model.
/// pi_star maps a G2 (parent-labeled) vertex to its G1 label.
struct CorrelatedInstance {
    Graph g0;
    Graph g1_star;
    Graph g1;
    Graph g2;
    Permutation pi_star;
    ModelParams params;
    std::uint64_t rng_seed = 0;
};

/// G(n, p) by geometric skipping over the lexicographic pair index.
Graph sample_gnp(std::size_t n, double p, Rng& rng);
/// Keeps every edge independently with probability s.
Graph subsample(const Graph& g, double s, Rng& rng);
/// Edge set {(pi(i), pi(j)) : (i, j) in g}.
Graph relabel(const Graph& g, const Permutation& pi);

CorrelatedInstance sample_instance(std::size_t n, double p, double s, Rng& rng);

/// Each vertex seeded independently with probability alpha; seeds agree with pi*.
SeedMap sample_seeds(const CorrelatedInstance& inst, double alpha, Rng& rng);
/// Seed set uniform among subsets of size k.
SeedMap sample_seeds_fixed(const CorrelatedInstance& inst, std::size_t k, Rng& rng);

using Metadata = std::map<std::string, std::string>;

/// Instance directory: g0/g1/g2 edge lists, pi_star.map, seeds.map and
/// meta.txt (flat key=value). g1_star is rebuilt from g1 and pi* on load.
void save_instance(const std::string& dir, const CorrelatedInstance& inst, const SeedMap& seeds,
                   const Metadata& extra = {});

struct LoadedInstance {
    CorrelatedInstance instance;
    SeedMap seeds;
    Metadata meta;
};

LoadedInstance load_instance(const std::string& dir);

/// Two-column map text: "i value" per line with "?" for unknown.
void write_map(std::ostream& out, std::span<const Vertex> values);
std::vector<Vertex> read_map(std::istream& in, std::size_t n);

/// Round-trippable decimal text for a double.
std::string format_double(double x);

}  // namespace sgm

#endif  // SGM_MODEL_HPP
