#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liqcurve/core_model.hpp"
#include "liqcurve/errors.hpp"
#include "liqcurve/settlement.hpp"

namespace liqcurve::cli {

enum ExitCode : int {
    kOk = 0,
    kMalformedInput = 1,
    kInfeasibleTrade = 2,
    kAuditFailure = 3,
};

ExitCode exit_code_for(ErrorCode code);

/// Machine-readable error line for standard error.
std::string error_json(const Error& error, std::optional<std::int64_t> step = {});

struct CurveSweepRequest {
    enum class Mode { SwapCurve, StakeCurve };

    Mode mode = Mode::SwapCurve;
    std::vector<double> k_values;
    std::vector<int> n_values{10};  // StakeCurve only
    double lo = 0.05;
    double hi = 3.0;
    int steps = 60;

    void validate() const;
};

/// Sample grid lo + i (hi - lo) / (steps - 1), i = 0..steps-1.
std::vector<double> sweep_grid(double lo, double hi, int steps);

/// CSV with header `k,g1,g2,status` (two-asset equal-weight swap with
/// g0 = 1) or `k,n,g1,g0` (single-asset stake into an n-asset equal-weight
/// pool). Rows are ordered by k, then n, then g1. Infeasible swap samples keep
/// their row with an empty g2 and status `infeasible`.
std::string curve_sweep_csv(const CurveSweepRequest& request);

/// Parses `lo:hi:steps`.
void parse_range(std::string_view text, CurveSweepRequest& request);

/// Reads the trade log: `step,kind,token,signed_amount,unknown_token`, one row
/// per fixed leg, consecutive rows with the same step forming one trade. A
/// header row, blank lines and `#` comments are skipped.
std::vector<TradeSpec> parse_trade_log(std::istream& in);

/// Builds a trade from `--in TOKEN[:AMT]` / `--out TOKEN[:AMT]` flags. The
/// single token given without an amount is the unknown leg. The kind is
/// inferred when `kind` is empty.
TradeSpec trade_from_flags(const std::vector<std::string>& ins,
                           const std::vector<std::string>& outs, std::string_view kind);

struct OracleCheck {
    double solver = 0.0;
    double oracle = 0.0;
    double rel_diff = 0.0;
    bool agrees = true;
};

/// Re-solves the trade's curve instance by bisection. nullopt when the trade
/// needs no solve (proportional kinds).
std::optional<OracleCheck> oracle_cross_check(const PoolState& pool, const TradeSpec& spec);

inline constexpr double kOracleAgreement = 1e-10;

struct ReplayResult {
    PoolState final_pool;
    int exit_code = kOk;
    std::int64_t trades_applied = 0;
};

/// Applies each trade in order, writing one JSON line per step (receipt plus
/// invariant audit) and a final summary line to `out`. Stops at the first
/// failure; errors go to `err`.
ReplayResult replay(const PoolState& pool, const std::vector<TradeSpec>& trades,
                    std::ostream& out, std::ostream& err, bool verify = false);

PoolState read_pool_file(const std::filesystem::path& path);

/// Writes next to `path` and renames over it, so readers only ever see a
/// complete document.
void write_pool_file(const std::filesystem::path& path, const PoolState& pool);

std::vector<double> parse_real_list(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace liqcurve::cli
