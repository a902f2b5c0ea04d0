#include "liqcurve/settlement.hpp"

#include <cmath>
#include <set>
#include <string>

#include "liqcurve/errors.hpp"
#include "liqcurve/rebalancing.hpp"

namespace liqcurve {

std::string_view to_string(TradeKind kind) {
    switch (kind) {
        case TradeKind::Swap: return "swap";
        case TradeKind::StakeSingle: return "stake_single";
        case TradeKind::StakeProportional: return "stake_proportional";
        case TradeKind::UnstakeSingle: return "unstake_single";
        case TradeKind::UnstakeProportional: return "unstake_proportional";
        case TradeKind::Batch: return "batch";
    }
    return "unknown";
}

TradeKind parse_trade_kind(std::string_view text) {
    for (auto kind : {TradeKind::Swap, TradeKind::StakeSingle, TradeKind::StakeProportional,
                      TradeKind::UnstakeSingle, TradeKind::UnstakeProportional,
                      TradeKind::Batch}) {
        if (to_string(kind) == text) return kind;
    }
    fail(ErrorCode::InvalidTrade, "unknown trade kind '" + std::string(text) + "'");
}

namespace {

bool is_pool(std::string_view token) { return token == kPoolToken; }

bool proportional(TradeKind kind) {
    return kind == TradeKind::StakeProportional || kind == TradeKind::UnstakeProportional;
}

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::InvalidTrade, what);
}

void check_token(const PoolState& pool, const std::string& token) {
    if (!is_pool(token) && !pool.index_of(token)) {
        fail(ErrorCode::UnknownToken, "pool has no token '" + token + "'");
    }
}

void validate_shape(const PoolState& pool, const TradeSpec& spec) {
    std::set<std::string_view> seen;
    for (const auto& leg : spec.legs) {
        check_token(pool, leg.token);
        require(seen.insert(leg.token).second, "token '" + leg.token + "' appears twice");
        require(std::isfinite(leg.amount), "leg amounts must be finite");
    }
    if (!(proportional(spec.kind) && spec.unknown.empty())) {
        check_token(pool, spec.unknown);
        require(!seen.contains(spec.unknown), "the unknown leg cannot also be fixed");
    }

    const auto single_leg = [&](const char* kind) {
        require(spec.legs.size() == 1, std::string(kind) + " takes exactly one fixed leg");
        return spec.legs.front();
    };
    switch (spec.kind) {
        case TradeKind::Swap: {
            const auto leg = single_leg("swap");
            require(!is_pool(leg.token) && !is_pool(spec.unknown),
                    "swaps exchange two asset tokens");
            break;
        }
        case TradeKind::StakeSingle:
        case TradeKind::UnstakeSingle: {
            const bool stake = spec.kind == TradeKind::StakeSingle;
            const auto leg = single_leg(stake ? "stake" : "unstake");
            require(is_pool(leg.token) != is_pool(spec.unknown),
                    "single-asset (un)staking pairs one asset with the pool token");
            // Assets flow in and pool tokens out on a stake; the reverse on an unstake.
            const double inflow = is_pool(leg.token) ? -leg.amount : leg.amount;
            require(stake ? inflow >= 0.0 : inflow <= 0.0,
                    stake ? "staking cannot withdraw assets" : "unstaking cannot deposit assets");
            break;
        }
        case TradeKind::StakeProportional:
        case TradeKind::UnstakeProportional: {
            const bool stake = spec.kind == TradeKind::StakeProportional;
            const auto leg = single_leg("proportional (un)staking");
            const double inflow = is_pool(leg.token) ? -leg.amount : leg.amount;
            require(stake ? inflow >= 0.0 : inflow <= 0.0,
                    stake ? "staking cannot withdraw assets" : "unstaking cannot deposit assets");
            break;
        }
        case TradeKind::Batch:
            break;
    }
}

struct Settled {
    PoolState next;
    TradeReceipt receipt;
};

// New balance for a fixed leg; throws when it would not stay positive.
double fixed_balance(double balance, double amount, const std::string& token) {
    const double updated = balance + amount;
    if (!(updated / balance >= kGrowthFloor)) {
        fail(ErrorCode::InsufficientBalance,
             "leg on '" + token + "' would exhaust the pool balance");
    }
    return updated;
}

Settled settle(const PoolState& pool, const TradeSpec& spec) {
    if (!(pool.params.k >= 0.0 && pool.params.k <= 1.0)) {
        fail(ErrorCode::KRestriction, "pool curve parameter k is outside [0, 1]");
    }
    pool.validate();
    validate_shape(pool, spec);

    const std::size_t n = pool.n();
    const WeightVector omega_prev = weights_at(pool.weight_policy, n);
    const WeightVector omega_new =
        weights_at(pool.weight_policy, n, std::span<const PoolState>(&pool, 1));

    PoolState next = pool;
    next.step = pool.step + 1;
    std::vector<double> deltas(n, 0.0);
    double delta0 = 0.0;

    for (const auto& leg : spec.legs) {
        if (is_pool(leg.token)) {
            // alpha0 < 0, so the ratio test is the same as for assets.
            next.alpha0 = -fixed_balance(-pool.alpha0, -leg.amount, leg.token);
            delta0 = leg.amount;
        } else {
            const std::size_t i = *pool.index_of(leg.token);
            next.alpha[i] = fixed_balance(pool.alpha[i], leg.amount, leg.token);
            deltas[i] = leg.amount;
        }
    }

    if (proportional(spec.kind)) {
        const auto& leg = spec.legs.front();
        const double g = is_pool(leg.token) ? next.alpha0 / pool.alpha0
                                            : next.alpha[*pool.index_of(leg.token)] /
                                                  pool.alpha[*pool.index_of(leg.token)];
        for (std::size_t i = 0; i < n; ++i) {
            if (leg.token == pool.symbols[i]) continue;
            next.alpha[i] = pool.alpha[i] * g;
            deltas[i] = next.alpha[i] - pool.alpha[i];
        }
        if (!is_pool(leg.token)) {
            next.alpha0 = pool.alpha0 * g;
            delta0 = next.alpha0 - pool.alpha0;
        }
    } else {
        CurveResidualSpec problem{pool.params.k, omega_prev, omega_new, {}};
        problem.growths.assets.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (pool.symbols[i] != spec.unknown) problem.growths.assets[i] = next.alpha[i] / pool.alpha[i];
        }
        if (!is_pool(spec.unknown)) problem.growths.pool = next.alpha0 / pool.alpha0;

        double solved = 0.0;
        try {
            solved = solve_unknown_growth(problem, pool.params.rel_tol);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoPositiveRoot) fail(ErrorCode::InfeasibleTrade, e.what());
            throw;
        }
        if (is_pool(spec.unknown)) {
            next.alpha0 = pool.alpha0 * solved;
            delta0 = next.alpha0 - pool.alpha0;
        } else {
            const std::size_t j = *pool.index_of(spec.unknown);
            next.alpha[j] = pool.alpha[j] * solved;
            deltas[j] = next.alpha[j] - pool.alpha[j];
        }
    }
    next.validate();

    TradeReceipt receipt;
    receipt.step = next.step;
    receipt.deltas = std::move(deltas);
    receipt.delta0 = delta0;
    receipt.solved_growths.assets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        receipt.solved_growths.assets[i] = next.alpha[i] / pool.alpha[i];
    }
    receipt.solved_growths.pool = next.alpha0 / pool.alpha0;
    receipt.prices_prev = implied_prices(pool, omega_prev);
    receipt.prices_new = implied_prices(next, omega_new);
    receipt.self_financing_residual = verify_self_financing(
        pool, next, receipt.prices_prev, receipt.prices_new, pool.params.k);

    if (std::abs(receipt.self_financing_residual) >
        pool.params.rel_tol * std::abs(pool.alpha0)) {
        fail(ErrorCode::ResidualCheckFailed,
             "settlement is not self-financing: residual " +
                 format_real(receipt.self_financing_residual));
    }
    return {std::move(next), std::move(receipt)};
}

}  // namespace

std::optional<CurveResidualSpec> curve_problem(const PoolState& pool, const TradeSpec& spec) {
    validate_shape(pool, spec);
    if (proportional(spec.kind)) return std::nullopt;
    const std::size_t n = pool.n();
    CurveResidualSpec problem{pool.params.k, weights_at(pool.weight_policy, n),
                              weights_at(pool.weight_policy, n,
                                         std::span<const PoolState>(&pool, 1)),
                              GrowthVector::ones(n)};
    for (const auto& leg : spec.legs) {
        if (is_pool(leg.token)) {
            problem.growths.pool = -fixed_balance(-pool.alpha0, -leg.amount, leg.token) / pool.alpha0;
        } else {
            const std::size_t i = *pool.index_of(leg.token);
            problem.growths.assets[i] = fixed_balance(pool.alpha[i], leg.amount, leg.token) / pool.alpha[i];
        }
    }
    if (is_pool(spec.unknown)) {
        problem.growths.pool.reset();
    } else {
        problem.growths.assets[*pool.index_of(spec.unknown)].reset();
    }
    return problem;
}

TradeReceipt quote(const PoolState& pool, const TradeSpec& spec) {
    return settle(pool, spec).receipt;
}

std::pair<PoolState, TradeReceipt> apply(const PoolState& pool, const TradeSpec& spec) {
    auto settled = settle(pool, spec);
    return {std::move(settled.next), std::move(settled.receipt)};
}

std::pair<PoolState, TradeReceipt> batch_settle(const PoolState& pool,
                                                std::vector<TradeLeg> legs,
                                                std::string unknown) {
    return apply(pool, TradeSpec{TradeKind::Batch, std::move(legs), std::move(unknown)});
}

double verify_self_financing(const PoolState& prev, const PoolState& next,
                             std::span<const double> prices_prev,
                             std::span<const double> prices_new, double k) {
    const std::size_t n = prev.n();
    if (next.n() != n || prices_prev.size() != n || prices_new.size() != n ||
        prev.symbols != next.symbols) {
        fail(ErrorCode::ShapeMismatch, "transition endpoints do not describe the same pool");
    }
    double residual = next.alpha0 - prev.alpha0;
    for (std::size_t i = 0; i < n; ++i) {
        residual += (next.alpha[i] - prev.alpha[i]) * ek_average(prices_new[i], prices_prev[i], k);
    }
    return residual;
}

}  // namespace liqcurve
