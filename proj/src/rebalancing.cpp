#include "liqcurve/rebalancing.hpp"

#include <cmath>
#include <string>

#include "liqcurve/errors.hpp"

namespace liqcurve {

void WeightVector::validate(double tol) const {
    if (omega.empty()) {
        fail(ErrorCode::InvariantViolation, "weight vector is empty");
    }
    double sum = 0.0;
    for (double w : omega) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            fail(ErrorCode::InvariantViolation, "weights must be positive");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol) {
        fail(ErrorCode::InvariantViolation,
             "weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

void validate_policy(const WeightPolicy& policy, std::size_t n, double tol) {
    if (policy.kind == WeightPolicy::Kind::Equal) {
        if (!policy.weights.empty()) {
            fail(ErrorCode::InvariantViolation, "equal policy takes no weights");
        }
        return;
    }
    if (policy.weights.size() != n) {
        fail(ErrorCode::LengthMismatch,
             "constant policy has " + std::to_string(policy.weights.size()) +
                 " weights for " + std::to_string(n) + " assets");
    }
    WeightVector{policy.weights}.validate(tol);
}

WeightVector weights_at(const WeightPolicy& policy, std::size_t n,
                        std::span<const PoolState> /*history*/) {
    if (n == 0) {
        fail(ErrorCode::LengthMismatch, "pool needs at least one asset");
    }
    switch (policy.kind) {
        case WeightPolicy::Kind::Equal:
            return WeightVector{std::vector<double>(n, 1.0 / static_cast<double>(n))};
        case WeightPolicy::Kind::Constant:
            if (policy.weights.size() != n) {
                fail(ErrorCode::LengthMismatch,
                     "constant policy has " + std::to_string(policy.weights.size()) +
                         " weights for " + std::to_string(n) + " assets");
            }
            return WeightVector{policy.weights};
    }
    fail(ErrorCode::InvariantViolation, "unknown weight policy");
}

double implied_price(double omega_i, double alpha0, double alpha_i) {
    if (!(omega_i > 0.0) || !(alpha0 < 0.0) || !(alpha_i > 0.0)) {
        fail(ErrorCode::SignViolation,
             "implied price needs omega > 0, alpha0 < 0, alpha_i > 0");
    }
    return -omega_i * alpha0 / alpha_i;
}

std::vector<double> implied_prices(const PoolState& pool, const WeightVector& weights) {
    if (weights.size() != pool.n()) {
        fail(ErrorCode::ShapeMismatch, "weights do not match pool size");
    }
    std::vector<double> prices(pool.n());
    for (std::size_t i = 0; i < pool.n(); ++i) {
        prices[i] = implied_price(weights[i], pool.alpha0, pool.alpha[i]);
    }
    return prices;
}

double zero_value_residual(const PoolState& pool, std::span<const double> prices) {
    if (prices.size() != pool.n()) {
        fail(ErrorCode::ShapeMismatch, "price vector does not match pool size");
    }
    double value = pool.alpha0;
    for (std::size_t i = 0; i < pool.n(); ++i) {
        value += pool.alpha[i] * prices[i];
    }
    return value;
}

}  // namespace liqcurve
