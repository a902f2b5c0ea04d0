#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "liqcurve/core_model.hpp"
#include "liqcurve/weights.hpp"

namespace liqcurve {

/// Weights for the next step. Only `history` (states up to t-1) may be
/// consulted; the built-in policies are history-free.
WeightVector weights_at(const WeightPolicy& policy, std::size_t n,
                        std::span<const PoolState> history = {});

/// Checks a policy against a pool of `n` assets: constant weights must have
/// length n, be positive and sum to one within `tol`.
void validate_policy(const WeightPolicy& policy, std::size_t n, double tol);

/// P_i = -omega_i * alpha0 / alpha_i, in pool-token units.
double implied_price(double omega_i, double alpha0, double alpha_i);

/// Implied prices of every asset in `pool` under `weights`.
std::vector<double> implied_prices(const PoolState& pool, const WeightVector& weights);

/// alpha0 + sum_i alpha_i P_i; zero for a consistent pool.
double zero_value_residual(const PoolState& pool, std::span<const double> prices);

}  // namespace liqcurve
