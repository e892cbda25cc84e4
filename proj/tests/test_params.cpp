#include <cmath>

#include "doctest.h"
#include "sgm/params.hpp"
#include "sgm/common.hpp"

using namespace sgm;

TEST_CASE("alg1 parameters") {
    // nps^2 = 25 at n = 10^4: p s^2 = 25 / 10^4.
    const ParamSet ps = derive_params_alg1(10000, 25.0 / 10000.0, 1.0, 0.1);
    CHECK(ps.ell == 1);  // floor(0.4 * 9.2103 / 3.2189) = floor(1.1445)
    CHECK(ps.m == 20);
    CHECK(ps.tau == doctest::Approx(25.0 / std::log(25.0)));
    CHECK(ps.tau == doctest::Approx(7.767).epsilon(1e-3));
    CHECK(std::isnan(ps.eta));
    CHECK(ps.d == 0);

    // Same value through s < 1.
    CHECK(derive_params_alg1(10000, 0.01, 0.5, 0.1).tau == doctest::Approx(ps.tau));
    CHECK(derive_params_alg1(10000, 0.01, 0.5, 0.3).m == 7);

    // Larger radius: n = 10^8, nps^2 = 10, eps = 0.1 -> floor(0.4 * 18.42 / 2.303) = 3.
    CHECK(derive_params_alg1(100000000, 10.0 / 1e8, 1.0, 0.1).ell == 3);
    // Clamp to 1 when the formula gives 0.
    CHECK(derive_params_alg1(100, 0.5, 1.0, 0.4).ell == 1);

    CHECK_THROWS_AS(derive_params_alg1(100, 0.01, 1.0, 0.1), DerivationError);
    CHECK_THROWS_AS(derive_params_alg1(10000, 0.01, 1.0, 0.5), InputError);
    CHECK_THROWS_AS(derive_params_alg1(10000, 0.01, 1.0, 0.0), InputError);
    CHECK(derive_params_alg1(10000, 0.01, 0.5, 0.2).ell == derive_params_alg1(10000, 0.01, 0.5, 0.2).ell);
}

TEST_CASE("dense regime d") {
    CHECK(derive_d(10000, 100.0 / 10000.0) == 3);        // a = 1/2
    CHECK(derive_d(1000000, 100.0 / 1000000.0) == 4);    // a = 1/3
    CHECK(derive_d(1000, 999.0 / 1000.0) == 2);          // a just below 1
    CHECK(dense_exponent(1000000, 1e-4) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(derive_d(1000, 1.0 / 1000.0), DerivationError);
    CHECK_THROWS_AS(derive_d(1000, 1.0), DerivationError);

    const ParamSet ps = derive_params_alg2(10000, 0.01);
    CHECK(ps.d == 3);
    CHECK(ps.a == doctest::Approx(0.5));
    CHECK(ps.b == doctest::Approx(1.0));
}

TEST_CASE("dense regime warnings") {
    const ParamSet ps = derive_params_alg2(2000, std::pow(2000.0, 0.55) / 2000.0);
    const auto w = dense_regime_warnings(2000, std::pow(2000.0, 0.55) / 2000.0, 0.9, 0.05, ps);
    // b = 1 is far above s / (16 (2 - s)^2) = 0.0465.
    REQUIRE(!w.empty());
    CHECK(w.front().find("b=") != std::string::npos);
}

TEST_CASE("alg3 parameters") {
    const ParamSet ps = derive_params_alg3(10000, 10.0 / 10000.0, 0.01, 0.1);
    CHECK(ps.ell == 3);  // floor(0.9 * 9.2103 / 2.3026) = floor(3.6)
    CHECK(ps.eta == doctest::Approx(std::pow(4.0, 8) * std::pow(10000.0, 0.8) * 0.01));
    CHECK(derive_params_alg3(10000, 10.0 / 10000.0, 0.0, 0.1).eta == 0.0);
    CHECK_THROWS_AS(derive_params_alg3(10000, 1.0 / 10000.0, 0.1, 0.1), DerivationError);
    CHECK_THROWS_AS(derive_params_alg3(10000, 0.01, 0.1, 0.2), InputError);
}

TEST_CASE("witness threshold") {
    // ell = 2, n = 10^4, eps = 0.2, alpha = 0.01: 4^6 10^2.4 0.01.
    CHECK(witness_threshold(10000, 2, 0.2, 0.01) == doctest::Approx(10288.6).epsilon(1e-5));
    CHECK(witness_threshold(10000, 2, 0.2, 0.0) == 0.0);
}

TEST_CASE("sparse match threshold") {
    const double n = 3000.0;
    CHECK(sparse_match_threshold(3000) == doctest::Approx(std::log(n) / std::log(std::log(n)) - 1.0));
    for (std::size_t n2 : {3u, 10u, 16u, 100u, 100000u}) CHECK(sparse_match_threshold(n2) > 0.0);
}
