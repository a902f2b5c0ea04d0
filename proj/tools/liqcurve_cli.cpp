#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liqcurve/commands.hpp"
#include "liqcurve/documents.hpp"
#include "liqcurve/rebalancing.hpp"

using namespace liqcurve;
using namespace liqcurve::cli;

namespace {

struct Options {
    std::string pool_path;
    std::string k;
    std::string tokens;
    std::string amounts;
    std::string prices;
    std::string weights;
    std::vector<std::string> ins;
    std::vector<std::string> outs;
    std::string kind;
    std::string trades_path;
    std::string output_path;
    std::string sweep;
    std::string range = "0.05:3:60";
    std::string n_values = "10";
    bool verify = false;
};

int cmd_init(const Options& o) {
    const auto symbols = split(o.tokens, ',');
    const auto amounts = parse_real_list(o.amounts);
    const auto prices = parse_real_list(o.prices);
    const WeightPolicy policy = o.weights.empty()
                                    ? WeightPolicy::equal()
                                    : WeightPolicy::constant(parse_real_list(o.weights));
    const PoolState pool = pool_init(symbols, amounts, prices, parse_real(o.k), policy);
    write_pool_file(o.pool_path, pool);
    std::cout << serialize_pool(pool);
    return kOk;
}

int print_verify(const PoolState& pool, const TradeSpec& spec) {
    const auto check = oracle_cross_check(pool, spec);
    if (!check) return kOk;
    nlohmann::ordered_json v;
    v["solver_growth"] = format_real(check->solver);
    v["oracle_growth"] = format_real(check->oracle);
    v["rel_diff"] = format_real(check->rel_diff);
    v["status"] = check->agrees ? "ok" : "failed";
    std::cout << nlohmann::ordered_json{{"verify", v}}.dump() << '\n';
    return check->agrees ? kOk : kAuditFailure;
}

int cmd_quote(const Options& o, bool commit) {
    const PoolState pool = read_pool_file(o.pool_path);
    const TradeSpec spec = trade_from_flags(o.ins, o.outs, o.kind);
    const auto [next, receipt] = apply(pool, spec);
    if (o.verify) {
        if (int rc = print_verify(pool, spec); rc != kOk) return rc;
    }
    if (commit) write_pool_file(o.pool_path, next);
    std::cout << receipt_to_json(pool, spec, receipt) << '\n';
    return kOk;
}

int cmd_replay(const Options& o) {
    const PoolState pool = read_pool_file(o.pool_path);
    std::ifstream in(o.trades_path);
    if (!in) fail(ErrorCode::MalformedDocument, "cannot read trade log " + o.trades_path);
    const auto trades = parse_trade_log(in);
    const auto result = replay(pool, trades, std::cout, std::cerr, o.verify);
    if (!o.output_path.empty()) write_pool_file(o.output_path, result.final_pool);
    return result.exit_code;
}

int cmd_curve(const Options& o) {
    CurveSweepRequest request;
    if (o.sweep == "swap") {
        request.mode = CurveSweepRequest::Mode::SwapCurve;
    } else if (o.sweep == "stake") {
        request.mode = CurveSweepRequest::Mode::StakeCurve;
    } else {
        fail(ErrorCode::MalformedDocument, "--sweep must be 'swap' or 'stake'");
    }
    request.k_values = parse_real_list(o.k);
    request.n_values.clear();
    for (double n : parse_real_list(o.n_values)) request.n_values.push_back(static_cast<int>(n));
    parse_range(o.range, request);
    std::cout << curve_sweep_csv(request);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-asset liquidity-curve pool settlement"};
    app.require_subcommand(1);
    Options o;

    auto* init = app.add_subcommand("init", "Create a pool document");
    init->add_option("--pool", o.pool_path, "Pool document to write")->required();
    init->add_option("--tokens", o.tokens, "Comma-separated asset symbols")->required();
    init->add_option("--amounts", o.amounts, "Comma-separated initial balances")->required();
    init->add_option("--prices", o.prices, "Comma-separated prices in pool tokens")->required();
    init->add_option("--k", o.k, "Curve parameter in [0, 1]")->required();
    init->add_option("--weights", o.weights, "Constant weights (default: equal)");

    auto trade_flags = [&](CLI::App* cmd) {
        cmd->add_option("--pool", o.pool_path, "Pool document")->required();
        cmd->add_option("--in", o.ins, "TOKEN[:AMT] paid into the pool");
        cmd->add_option("--out", o.outs, "TOKEN[:AMT] taken out of the pool");
        cmd->add_option("--kind", o.kind, "Trade kind (inferred when omitted)");
        cmd->add_flag("--verify", o.verify, "Cross-check the solve by bisection");
    };
    auto* quote_cmd = app.add_subcommand("quote", "Price a trade without settling it");
    trade_flags(quote_cmd);
    auto* apply_cmd = app.add_subcommand("apply", "Settle a trade and rewrite the pool");
    trade_flags(apply_cmd);

    auto* replay_cmd = app.add_subcommand("replay", "Replay a trade log with invariant audits");
    replay_cmd->add_option("--pool", o.pool_path, "Initial pool document")->required();
    replay_cmd->add_option("--trades", o.trades_path, "Trade log CSV")->required();
    replay_cmd->add_option("--output", o.output_path, "Where to write the final pool");
    replay_cmd->add_flag("--verify", o.verify, "Cross-check every solve by bisection");

    auto* curve_cmd = app.add_subcommand("curve", "Export liquidity-curve samples as CSV");
    curve_cmd->add_option("--sweep", o.sweep, "swap or stake")->required();
    curve_cmd->add_option("--k", o.k, "Comma-separated k values")->required();
    curve_cmd->add_option("--range", o.range, "g1 sweep lo:hi:steps");
    curve_cmd->add_option("--n", o.n_values, "Comma-separated pool sizes (stake)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kMalformedInput;
    }

    try {
        if (*init) return cmd_init(o);
        if (*quote_cmd) return cmd_quote(o, false);
        if (*apply_cmd) return cmd_quote(o, true);
        if (*replay_cmd) return cmd_replay(o);
        if (*curve_cmd) return cmd_curve(o);
    } catch (const Error& e) {
        std::cerr << error_json(e) << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "IoError"}, {"message", e.what()}}.dump() << '\n';
        return kMalformedInput;
    }
    return kMalformedInput;
}
