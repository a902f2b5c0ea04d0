#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "liqcurve/errors.hpp"
#include "liqcurve/rebalancing.hpp"

using namespace liqcurve;

TEST_CASE("weights_at for the built-in policies") {
    CHECK(weights_at(WeightPolicy::equal(), 4).omega == std::vector<double>(4, 0.25));
    CHECK(weights_at(WeightPolicy::constant({0.6, 0.4}), 2).omega == std::vector<double>{0.6, 0.4});
    try {
        weights_at(WeightPolicy::constant({0.6, 0.4}), 3);
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LengthMismatch);
    }
}

TEST_CASE("implied_price examples") {
    CHECK(implied_price(0.5, -200.0, 100.0) == 1.0);
    CHECK(implied_price(0.5, -200.0, 50.0) == 2.0);
    CHECK(implied_price(0.25, -400.0, 100.0) == 1.0);
    for (auto [w, a0, a] : {std::tuple{0.0, -1.0, 1.0}, std::tuple{0.5, 1.0, 1.0},
                            std::tuple{0.5, -1.0, 0.0}}) {
        try {
            implied_price(w, a0, a);
            FAIL("expected SignViolation");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SignViolation);
        }
    }
}

TEST_CASE("implied prices are positive and close the zero-value identity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        PoolState pool;
        const std::size_t n = 1 + rng() % 10;
        std::vector<double> w(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pool.symbols.push_back("T" + std::to_string(i));
            pool.alpha.push_back(std::exp(unit(rng) * 20.0 - 10.0));
            w[i] = 0.01 + unit(rng);
            total += w[i];
        }
        for (double& x : w) x /= total;
        pool.alpha0 = -std::exp(unit(rng) * 20.0 - 10.0);
        pool.weight_policy = trial % 2 ? WeightPolicy::equal() : WeightPolicy::constant(w);

        const auto prices = implied_prices(pool, weights_at(pool.weight_policy, n));
        for (double p : prices) CHECK(p > 0.0);
        CHECK(std::abs(zero_value_residual(pool, prices)) <= 1e-12 * std::abs(pool.alpha0));
    }
}

TEST_CASE("policy output ignores the current state") {
    PoolState prev;
    prev.symbols = {"A", "B", "C"};
    prev.alpha = {1.0, 2.0, 3.0};
    prev.alpha0 = -6.0;
    for (const auto& policy : {WeightPolicy::equal(), WeightPolicy::constant({0.2, 0.3, 0.5})}) {
        const auto before = weights_at(policy, 3, std::span<const PoolState>(&prev, 1));
        PoolState perturbed = prev;
        perturbed.alpha = {50.0, 0.5, 7.0};
        perturbed.alpha0 = -1.0;
        const auto after = weights_at(policy, 3, std::span<const PoolState>(&perturbed, 1));
        CHECK(before == after);
        CHECK(before == weights_at(policy, 3));
    }
}

TEST_CASE("validate_policy") {
    CHECK_NOTHROW(validate_policy(WeightPolicy::constant({0.25, 0.75}), 2, 1e-12));
    CHECK_THROWS_AS(validate_policy(WeightPolicy::constant({0.25, 0.7}), 2, 1e-12), Error);
    CHECK_THROWS_AS(validate_policy(WeightPolicy::constant({-0.25, 1.25}), 2, 1e-12), Error);
    CHECK_THROWS_AS(validate_policy(WeightPolicy::constant({1.0}), 2, 1e-12), Error);
}
