#ifndef SGM_PARAMS_HPP
#define SGM_PARAMS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace sgm {

/// Tuning parameters of the matchers. Fields a matcher does not use stay at
/// their sentinel (0 for counts, NaN for reals).
struct ParamSet {
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

    double epsilon = kUnset;  // sparsity exponent the rest was derived from
    std::uint32_t ell = 0;    // hop radius
    std::uint32_t m = 0;      // independent-path multiplicity
    double tau = kUnset;      // high-degree threshold
    std::uint32_t d = 0;      // diameter parameter, witness radius is d - 1
    double eta = kUnset;      // pair-witness threshold
    double a = kUnset;        // dense regime: np = b * n^a
    double b = kUnset;
};

/// ell = floor((1/2 - eps) ln n / ln(nps^2)) clamped to >= 1, m = ceil(2/eps),
/// tau = nps^2 / ln(nps^2). Requires nps^2 > 1 (DerivationError) and
/// 0 < eps < 1/2 (InputError).
ParamSet derive_params_alg1(std::size_t n, double p, double s, double epsilon);

/// Exponent a = ln(np) / ln n of the dense regime.
double dense_exponent(std::size_t n, double p);

/// d = floor(1/a) + 1. Requires 1 < np < n.
std::uint32_t derive_d(std::size_t n, double p);

/// Fills a, b (= 1 when np = n^a exactly) and d.
ParamSet derive_params_alg2(std::size_t n, double p);

/// Sufficient conditions of the dense-regime guarantee that do not hold:
/// b <= s / (16 (2 - s)^2) and alpha >= 300 ln n / (nps^2)^(d-1).
std::vector<std::string> dense_regime_warnings(std::size_t n, double p, double s, double alpha,
                                               const ParamSet& params);

/// ell = floor((1 - eps) ln n / ln(np)) clamped to >= 1 and
/// eta = witness_threshold(n, ell, eps, alpha). Requires np > 1
/// (DerivationError) and 0 < eps < 1/6 (InputError).
ParamSet derive_params_alg3(std::size_t n, double p, double alpha, double epsilon);

/// eta = 4^(2 ell + 2) n^(1 - 2 eps) alpha.
double witness_threshold(std::size_t n, std::uint32_t ell, double epsilon, double alpha);

/// Minimum Z score ln n / ln ln n - 1 for assigning a sparse-regime pair.
double sparse_match_threshold(std::size_t n);

}  // namespace sgm

#endif  // SGM_PARAMS_HPP
