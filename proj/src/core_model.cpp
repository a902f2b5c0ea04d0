#include "liqcurve/core_model.hpp"

#include <cmath>
#include <set>
#include <string>

#include "liqcurve/errors.hpp"
#include "liqcurve/rebalancing.hpp"

namespace liqcurve {

void CurveParams::validate() const {
    if (!(k >= 0.0 && k <= 1.0)) {
        fail(ErrorCode::KOutOfRange, "k must lie in [0, 1], got " + format_real(k));
    }
    if (!(rel_tol > 0.0)) {
        fail(ErrorCode::InvariantViolation, "rel_tol must be positive");
    }
    if (max_bisect_iter <= 0) {
        fail(ErrorCode::InvariantViolation, "max_bisect_iter must be positive");
    }
}

std::size_t GrowthVector::unknown_count() const {
    std::size_t count = pool.has_value() ? 0 : 1;
    for (const auto& g : assets) {
        if (!g) ++count;
    }
    return count;
}

void GrowthVector::validate() const {
    if (unknown_count() > 1) {
        fail(ErrorCode::MultipleUnknowns, "at most one growth factor may be unknown");
    }
    auto check = [](const std::optional<double>& g) {
        if (g && !(*g > 0.0 && std::isfinite(*g))) {
            fail(ErrorCode::NonPositiveGrowth,
                 "growth factors must be positive, got " + format_real(*g));
        }
    };
    check(pool);
    for (const auto& g : assets) check(g);
}

std::optional<std::size_t> PoolState::index_of(std::string_view symbol) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == symbol) return i;
    }
    return std::nullopt;
}

namespace {

void validate_symbols(const std::vector<std::string>& symbols) {
    std::set<std::string_view> seen;
    for (const auto& s : symbols) {
        if (s.empty()) {
            fail(ErrorCode::InvariantViolation, "token symbol must not be empty");
        }
        if (s == kPoolToken) {
            fail(ErrorCode::InvariantViolation,
                 "symbol '" + s + "' is reserved for the pool token");
        }
        if (!seen.insert(s).second) {
            fail(ErrorCode::InvariantViolation, "duplicate token symbol '" + s + "'");
        }
    }
}

}  // namespace

void PoolState::validate() const {
    if (alpha.empty()) {
        fail(ErrorCode::InvariantViolation, "pool needs at least one asset");
    }
    if (symbols.size() != alpha.size()) {
        fail(ErrorCode::InvariantViolation, "symbol and balance counts differ");
    }
    validate_symbols(symbols);
    try {
        params.validate();
        validate_policy(weight_policy, alpha.size(), params.rel_tol);
    } catch (const Error& e) {
        fail(ErrorCode::InvariantViolation, e.what());
    }
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (!(alpha[i] > 0.0) || !std::isfinite(alpha[i])) {
            fail(ErrorCode::InvariantViolation,
                 "balance of " + symbols[i] + " must be positive");
        }
    }
    if (!(alpha0 < 0.0) || !std::isfinite(alpha0)) {
        fail(ErrorCode::InvariantViolation, "pool-token liability must be negative");
    }
    if (step < 0) {
        fail(ErrorCode::InvariantViolation, "step must be non-negative");
    }
}

PoolState pool_init(std::vector<std::string> symbols, std::vector<double> amounts,
                    std::span<const double> prices, double k,
                    WeightPolicy policy, CurveParams base) {
    if (symbols.empty() || symbols.size() != amounts.size() ||
        prices.size() != amounts.size()) {
        fail(ErrorCode::LengthMismatch,
             "symbols, amounts and prices must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < amounts.size(); ++i) {
        if (!(amounts[i] > 0.0) || !(prices[i] > 0.0) || !std::isfinite(amounts[i]) ||
            !std::isfinite(prices[i])) {
            fail(ErrorCode::NonPositiveInput,
                 "amount and price of " + symbols[i] + " must be positive");
        }
    }
    base.k = k;
    base.validate();
    validate_symbols(symbols);
    validate_policy(policy, amounts.size(), base.rel_tol);

    PoolState pool;
    pool.symbols = std::move(symbols);
    pool.alpha = std::move(amounts);
    pool.params = base;
    pool.weight_policy = std::move(policy);

    double value = 0.0;
    for (std::size_t i = 0; i < pool.n(); ++i) value += pool.alpha[i] * prices[i];
    pool.alpha0 = -value;

    const WeightVector target = weights_at(pool.weight_policy, pool.n());
    const WeightVector actual = implied_weights(pool, prices);
    for (std::size_t i = 0; i < pool.n(); ++i) {
        if (std::abs(actual[i] - target[i]) > base.rel_tol) {
            fail(ErrorCode::PolicyViolation,
                 "initial value weight of " + pool.symbols[i] + " is " +
                     format_real(actual[i]) + ", policy requires " +
                     format_real(target[i]));
        }
    }
    return pool;
}

WeightVector implied_weights(const PoolState& pool, std::span<const double> prices) {
    if (prices.size() != pool.n()) {
        fail(ErrorCode::ShapeMismatch, "price vector does not match pool size");
    }
    std::vector<double> values(pool.n());
    double total = 0.0;
    for (std::size_t i = 0; i < pool.n(); ++i) {
        if (!(prices[i] > 0.0)) {
            fail(ErrorCode::NonPositiveInput, "prices must be positive");
        }
        values[i] = pool.alpha[i] * prices[i];
        total += values[i];
    }
    for (double& v : values) v /= total;
    return WeightVector{std::move(values)};
}

}  // namespace liqcurve
