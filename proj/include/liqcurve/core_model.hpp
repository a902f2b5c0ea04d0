#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "liqcurve/weights.hpp"

namespace liqcurve {

/// Identifier reserved for the pool token (index 0). Never a valid asset
/// symbol.
inline constexpr std::string_view kPoolToken = "POOL";

struct CurveParams {
    double k = 0.5;
    double rel_tol = 1e-12;
    int max_bisect_iter = 200;

    void validate() const;

    bool operator==(const CurveParams&) const = default;
};

/// Growth factors g_i = alpha_i^t / alpha_i^{t-1} for one settlement step.
/// An empty optional marks the single slot the curve is solved for.
struct GrowthVector {
    std::vector<std::optional<double>> assets;
    std::optional<double> pool;

    static GrowthVector ones(std::size_t n) {
        return {std::vector<std::optional<double>>(n, 1.0), 1.0};
    }

    std::size_t size() const noexcept { return assets.size(); }
    std::size_t unknown_count() const;
    bool fully_known() const { return unknown_count() == 0; }

    /// Throws MultipleUnknowns / NonPositiveGrowth on a broken vector.
    void validate() const;

    bool operator==(const GrowthVector&) const = default;
};

/// Pool balances. alpha0 is the pool-token liability and is always negative;
/// the user-facing supply is -alpha0.
struct PoolState {
    std::vector<std::string> symbols;
    std::vector<double> alpha;
    double alpha0 = -1.0;
    CurveParams params;
    WeightPolicy weight_policy;
    std::int64_t step = 0;

    std::size_t n() const noexcept { return alpha.size(); }
    double supply() const noexcept { return -alpha0; }

    /// Index of an asset symbol, or nullopt (also for the pool token).
    std::optional<std::size_t> index_of(std::string_view symbol) const;

    /// Throws InvariantViolation when any structural or sign invariant fails.
    void validate() const;

    bool operator==(const PoolState&) const = default;
};

struct TradeReceipt {
    std::int64_t step = 0;
    std::vector<double> deltas;
    double delta0 = 0.0;
    GrowthVector solved_growths;
    std::vector<double> prices_prev;
    std::vector<double> prices_new;
    double self_financing_residual = 0.0;

    /// Pool tokens minted (positive) or burned (negative).
    double supply_change() const noexcept { return -delta0; }

    bool operator==(const TradeReceipt&) const = default;
};

PoolState pool_init(std::vector<std::string> symbols, std::vector<double> amounts,
                    std::span<const double> prices, double k,
                    WeightPolicy policy, CurveParams base = {});

/// Value weights alpha_i P_i / sum_j alpha_j P_j.
WeightVector implied_weights(const PoolState& pool, std::span<const double> prices);

/// Versioned JSON pool document with all reals as 17-significant-digit
/// decimal strings.
std::string serialize_pool(const PoolState& pool);
PoolState parse_pool(std::string_view text);

/// Decimal string printed with 17 significant digits (%.17g), so it parses
/// back to the identical double.
std::string format_real(double x);
double parse_real(std::string_view text);

}  // namespace liqcurve
