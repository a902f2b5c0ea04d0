#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liqcurve/core_model.hpp"
#include "liqcurve/curve_engine.hpp"

namespace liqcurve {

enum class TradeKind {
    Swap,
    StakeSingle,
    StakeProportional,
    UnstakeSingle,
    UnstakeProportional,
    Batch,
};

std::string_view to_string(TradeKind kind);
TradeKind parse_trade_kind(std::string_view text);

/// An amount the trader fixes, as the change in the pool's holding of `token`:
/// positive flows into the pool, negative flows out. For the pool token this
/// is the change in alpha0, so paying pool tokens in (a burn) is positive and
/// receiving minted pool tokens is negative.
struct TradeLeg {
    std::string token;
    double amount = 0.0;

    bool operator==(const TradeLeg&) const = default;
};

/// A trade request. `unknown` names the leg the engine solves for (an asset
/// symbol or kPoolToken). Proportional kinds take a single leg and scale
/// every balance by its growth factor; `unknown` may then be left empty.
struct TradeSpec {
    TradeKind kind = TradeKind::Swap;
    std::vector<TradeLeg> legs;
    std::string unknown;

    bool operator==(const TradeSpec&) const = default;
};

/// Curve instance a spec reduces to against `pool`, with the unknown slot
/// empty; nullopt for proportional trades, which need no solve.
std::optional<CurveResidualSpec> curve_problem(const PoolState& pool, const TradeSpec& spec);

/// Settles `spec` against `pool` without changing it.
TradeReceipt quote(const PoolState& pool, const TradeSpec& spec);

/// Settles `spec` and returns the successor state with its receipt. The
/// receipt is identical to what quote() returns for the same inputs.
std::pair<PoolState, TradeReceipt> apply(const PoolState& pool, const TradeSpec& spec);

/// Settles any number of fixed legs plus one unknown with a single curve solve.
std::pair<PoolState, TradeReceipt> batch_settle(const PoolState& pool,
                                                std::vector<TradeLeg> legs,
                                                std::string unknown);

/// delta alpha0 + sum_i delta alpha_i * E_k(P_i): the value created by trading
/// alone, zero for a self-financing transition.
double verify_self_financing(const PoolState& prev, const PoolState& next,
                             std::span<const double> prices_prev,
                             std::span<const double> prices_new, double k);

}  // namespace liqcurve
