#pragma once

#include <string>

#include "liqcurve/core_model.hpp"
#include "liqcurve/settlement.hpp"

namespace liqcurve {

/// One-line JSON rendering of a receipt. `pool` is the pre-trade state and
/// supplies the token symbols; numbers are decimal strings.
std::string receipt_to_json(const PoolState& pool, const TradeSpec& spec,
                            const TradeReceipt& receipt);

}  // namespace liqcurve
