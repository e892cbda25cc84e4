#include "sgm/params.hpp"

#include <algorithm>
#include <cmath>

#include "sgm/common.hpp"

namespace sgm {

namespace {

// Guards floor() against ratios such as ln(n^(1/3)) / ln n landing a few ulps
// below an integer.
constexpr double kFloorSlack = 1e-9;

std::uint32_t floor_at_least_one(double x) {
    const double f = std::floor(x + kFloorSlack);
    return f < 1.0 ? 1U : static_cast<std::uint32_t>(f);
}

}  // namespace

ParamSet derive_params_alg1(std::size_t n, double p, double s, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw InputError("alg1: epsilon must lie in (0, 1/2)");
    const double mean_degree = static_cast<double>(n) * p * s * s;
    if (!(mean_degree > 1.0)) throw DerivationError("alg1: nps^2 must exceed 1 (log(nps^2) is not positive)");

    ParamSet ps;
    ps.epsilon = epsilon;
    ps.ell = floor_at_least_one((0.5 - epsilon) * std::log(static_cast<double>(n)) / std::log(mean_degree));
    ps.m = static_cast<std::uint32_t>(std::ceil(2.0 / epsilon - kFloorSlack));
    ps.tau = mean_degree / std::log(mean_degree);
    return ps;
}

double dense_exponent(std::size_t n, double p) {
    const double np = static_cast<double>(n) * p;
    if (!(np > 1.0)) throw DerivationError("dense regime: np must exceed 1");
    if (!(np < static_cast<double>(n))) throw DerivationError("dense regime: np must be below n");
    return std::log(np) / std::log(static_cast<double>(n));
}

std::uint32_t derive_d(std::size_t n, double p) {
    const double a = dense_exponent(n, p);
    return static_cast<std::uint32_t>(std::floor(1.0 / a + kFloorSlack)) + 1;
}

ParamSet derive_params_alg2(std::size_t n, double p) {
    ParamSet ps;
    ps.a = dense_exponent(n, p);
    ps.b = 1.0;
    ps.d = derive_d(n, p);
    return ps;
}

std::vector<std::string> dense_regime_warnings(std::size_t n, double p, double s, double alpha,
                                               const ParamSet& params) {
    std::vector<std::string> out;
    const double b = std::isnan(params.b) ? 1.0 : params.b;
    const double b_max = s / (16.0 * (2.0 - s) * (2.0 - s));
    if (!(b <= b_max)) {
        out.push_back("dense regime: b=" + std::to_string(b) + " exceeds s/(16(2-s)^2)=" + std::to_string(b_max));
    }
    if (params.d >= 1) {
        const double nd = static_cast<double>(n);
        const double alpha_min = 300.0 * std::log(nd) / std::pow(nd * p * s * s, static_cast<double>(params.d - 1));
        if (!(alpha >= alpha_min)) {
            out.push_back("dense regime: alpha=" + std::to_string(alpha) + " below 300 ln n/(nps^2)^(d-1)=" +
                          std::to_string(alpha_min));
        }
    }
    return out;
}

double witness_threshold(std::size_t n, std::uint32_t ell, double epsilon, double alpha) {
    return std::pow(4.0, 2.0 * ell + 2.0) * std::pow(static_cast<double>(n), 1.0 - 2.0 * epsilon) * alpha;
}

ParamSet derive_params_alg3(std::size_t n, double p, double alpha, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0 / 6.0)) throw InputError("alg3: epsilon must lie in (0, 1/6)");
    const double np = static_cast<double>(n) * p;
    if (!(np > 1.0)) throw DerivationError("alg3: np must exceed 1 (log(np) is not positive)");

    ParamSet ps;
    ps.epsilon = epsilon;
    ps.ell = floor_at_least_one((1.0 - epsilon) * std::log(static_cast<double>(n)) / std::log(np));
    ps.eta = witness_threshold(n, ps.ell, epsilon, alpha);
    return ps;
}

double sparse_match_threshold(std::size_t n) {
    // ln ln n is not positive below n = 3; no pair can be scored there.
    if (n < 3) return 1.0;
    const double ln_n = std::log(static_cast<double>(n));
    return ln_n / std::log(ln_n) - 1.0;
}

}  // namespace sgm
