#ifndef SGM_RNG_HPP
#define SGM_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <utility>

namespace sgm {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of trial `trial` at grid point `point`. Each argument is folded in
/// separately, so adding grid points or trials never shifts existing streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
    return mix64(mix64(mix64(master) ^ point) ^ (trial * 0xd1342543de82ef95ULL + 1));
}

/// Seeded random source. The engine is mt19937_64 and every draw below is
/// defined in terms of raw 64-bit outputs, so sequences are identical on every
/// standard library.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log argument.
    double uniform_open_zero() { return 1.0 - uniform(); }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    template <typename RandomIt>
    void shuffle(RandomIt first, RandomIt last) {
        const auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            const auto j = below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace sgm

#endif  // SGM_RNG_HPP
