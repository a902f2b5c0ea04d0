#include "liqcurve/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "liqcurve/curve_engine.hpp"
#include "liqcurve/documents.hpp"
#include "liqcurve/oracle.hpp"
#include "liqcurve/rebalancing.hpp"

namespace liqcurve::cli {

using ordered_json = nlohmann::ordered_json;

ExitCode exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InfeasibleTrade:
        case ErrorCode::NoPositiveRoot:
        case ErrorCode::NoSignChange:
        case ErrorCode::InsufficientBalance:
        case ErrorCode::KRestriction:
            return kInfeasibleTrade;
        case ErrorCode::ResidualCheckFailed:
            return kAuditFailure;
        default:
            return kMalformedInput;
    }
}

std::string error_json(const Error& error, std::optional<std::int64_t> step) {
    ordered_json out;
    out["error"] = std::string(to_string(error.code()));
    if (step) out["step"] = *step;
    out["message"] = error.what();
    out["exit_code"] = static_cast<int>(exit_code_for(error.code()));
    return out.dump();
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        std::string_view part = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
        while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
        while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
        parts.emplace_back(part);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> values;
    for (const auto& part : split(text, ',')) values.push_back(parse_real(part));
    return values;
}

// ---- curve sweeps ---------------------------------------------------------

void CurveSweepRequest::validate() const {
    if (k_values.empty()) fail(ErrorCode::MalformedDocument, "sweep needs at least one k");
    for (double k : k_values) {
        if (!(k >= 0.0 && k <= 1.0)) fail(ErrorCode::KOutOfRange, "sweep k must lie in [0, 1]");
    }
    if (steps < 2) fail(ErrorCode::MalformedDocument, "sweep needs at least two steps");
    if (!(lo > 0.0) || !(lo < hi)) fail(ErrorCode::MalformedDocument, "sweep range needs 0 < lo < hi");
    if (mode == Mode::StakeCurve) {
        if (n_values.empty()) fail(ErrorCode::MalformedDocument, "stake sweep needs n");
        for (int n : n_values) {
            if (n < 1) fail(ErrorCode::MalformedDocument, "stake sweep n must be positive");
        }
    }
}

std::vector<double> sweep_grid(double lo, double hi, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double width = (hi - lo) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = lo + width * i;
    grid.back() = hi;
    return grid;
}

void parse_range(std::string_view text, CurveSweepRequest& request) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) fail(ErrorCode::MalformedDocument, "range must be lo:hi:steps");
    request.lo = parse_real(parts[0]);
    request.hi = parse_real(parts[1]);
    const double steps = parse_real(parts[2]);
    if (steps != std::floor(steps) || steps > 1e7) {
        fail(ErrorCode::MalformedDocument, "range steps must be an integer");
    }
    request.steps = static_cast<int>(steps);
}

std::string curve_sweep_csv(const CurveSweepRequest& request) {
    request.validate();
    std::vector<double> ks = request.k_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    const auto grid = sweep_grid(request.lo, request.hi, request.steps);

    std::ostringstream csv;
    if (request.mode == CurveSweepRequest::Mode::SwapCurve) {
        csv << "k,g1,g2,status\n";
        const WeightVector equal{{0.5, 0.5}};
        for (double k : ks) {
            for (double g1 : grid) {
                CurveResidualSpec spec{k, equal, equal, {{g1, std::nullopt}, 1.0}};
                csv << format_real(k) << ',' << format_real(g1) << ',';
                try {
                    csv << format_real(solve_unknown_growth(spec)) << ",ok\n";
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::NoPositiveRoot) throw;
                    csv << ",infeasible\n";
                }
            }
        }
    } else {
        csv << "k,n,g1,g0\n";
        std::vector<int> ns = request.n_values;
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        for (double k : ks) {
            for (int n : ns) {
                const auto size = static_cast<std::size_t>(n);
                const WeightVector equal = weights_at(WeightPolicy::equal(), size);
                for (double g1 : grid) {
                    CurveResidualSpec spec{k, equal, equal, GrowthVector::ones(size)};
                    spec.growths.assets[0] = g1;
                    spec.growths.pool.reset();
                    csv << format_real(k) << ',' << n << ',' << format_real(g1) << ','
                        << format_real(eval_g0(spec)) << '\n';
                }
            }
        }
    }
    return csv.str();
}

// ---- trades ---------------------------------------------------------------

std::vector<TradeSpec> parse_trade_log(std::istream& in) {
    std::vector<TradeSpec> trades;
    std::optional<std::string> current_step;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = split(line, ',');
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (!fields[0].empty() && fields[0].front() == '#') continue;
        if (fields[0] == "step") continue;
        const std::string where = "trade log line " + std::to_string(line_no) + ": ";
        if (fields.size() != 5) {
            fail(ErrorCode::MalformedDocument, where + "expected 5 fields");
        }
        TradeKind kind;
        double amount;
        try {
            kind = parse_trade_kind(fields[1]);
            amount = parse_real(fields[3]);
        } catch (const Error& e) {
            fail(ErrorCode::MalformedDocument, where + e.what());
        }
        if (!current_step || *current_step != fields[0]) {
            trades.push_back(TradeSpec{kind, {}, fields[4]});
            current_step = fields[0];
        } else if (trades.back().kind != kind || trades.back().unknown != fields[4]) {
            fail(ErrorCode::MalformedDocument,
                 where + "rows of one step must agree on kind and unknown token");
        }
        trades.back().legs.push_back(TradeLeg{fields[2], amount});
    }
    return trades;
}

TradeSpec trade_from_flags(const std::vector<std::string>& ins,
                           const std::vector<std::string>& outs, std::string_view kind) {
    TradeSpec spec;
    std::vector<std::string> unknowns;
    std::vector<std::string> tokens;
    auto add = [&](const std::string& flag, double sign) {
        const auto colon = flag.rfind(':');
        if (colon == std::string::npos) {
            unknowns.push_back(flag);
            tokens.push_back(flag);
            return;
        }
        const double amount = parse_real(std::string_view(flag).substr(colon + 1));
        if (amount < 0.0) fail(ErrorCode::MalformedDocument, "flag amounts must be non-negative");
        spec.legs.push_back(TradeLeg{flag.substr(0, colon), sign * amount});
        tokens.push_back(flag.substr(0, colon));
    };
    for (const auto& f : ins) add(f, 1.0);
    for (const auto& f : outs) add(f, -1.0);
    if (unknowns.size() > 1) fail(ErrorCode::MalformedDocument, "only one leg may omit its amount");
    if (!unknowns.empty()) spec.unknown = unknowns.front();

    if (!kind.empty()) {
        spec.kind = parse_trade_kind(kind);
    } else {
        const bool pool_involved =
            std::find(tokens.begin(), tokens.end(), std::string(kPoolToken)) != tokens.end();
        const bool pool_out =
            std::any_of(outs.begin(), outs.end(), [](const std::string& f) {
                return f.substr(0, f.rfind(':')) == kPoolToken;
            });
        if (tokens.size() > 2) {
            spec.kind = TradeKind::Batch;
        } else if (pool_involved) {
            spec.kind = pool_out ? TradeKind::StakeSingle : TradeKind::UnstakeSingle;
        } else {
            spec.kind = TradeKind::Swap;
        }
    }
    if (spec.unknown.empty() && spec.kind != TradeKind::StakeProportional &&
        spec.kind != TradeKind::UnstakeProportional) {
        fail(ErrorCode::MalformedDocument, "one leg must omit its amount to be solved for");
    }
    return spec;
}

std::optional<OracleCheck> oracle_cross_check(const PoolState& pool, const TradeSpec& spec) {
    const auto problem = curve_problem(pool, spec);
    if (!problem) return std::nullopt;
    OracleCheck check;
    check.solver = solve_unknown_growth(*problem, pool.params.rel_tol);
    check.oracle = oracle::solve_by_bisection(*problem, pool.params.max_bisect_iter);
    check.rel_diff = std::abs(check.solver - check.oracle) / std::abs(check.oracle);
    check.agrees = check.rel_diff <= kOracleAgreement;
    return check;
}

// ---- replay ---------------------------------------------------------------

ReplayResult replay(const PoolState& pool, const std::vector<TradeSpec>& trades,
                    std::ostream& out, std::ostream& err, bool verify) {
    ReplayResult result{pool, kOk, 0};
    double max_sf = 0.0;
    double max_zv = 0.0;

    auto summary = [&](const char* status) {
        ordered_json s;
        s["status"] = status;
        s["trades_applied"] = result.trades_applied;
        s["final_step"] = result.final_pool.step;
        s["pool_token_supply"] = format_real(result.final_pool.supply());
        s["max_self_financing_residual"] = format_real(max_sf);
        s["max_zero_value_residual"] = format_real(max_zv);
        out << ordered_json{{"summary", s}}.dump() << '\n';
    };

    for (const auto& spec : trades) {
        const PoolState& prev = result.final_pool;
        const auto step = prev.step + 1;
        try {
            auto [next, receipt] = apply(prev, spec);
            std::optional<OracleCheck> check;
            if (verify) check = oracle_cross_check(prev, spec);

            const double sf_tol = prev.params.rel_tol * std::abs(prev.alpha0);
            const double zv = zero_value_residual(next, receipt.prices_new);
            const double zv_tol = next.params.rel_tol * std::abs(next.alpha0);
            const bool ok = std::abs(receipt.self_financing_residual) <= sf_tol &&
                            std::abs(zv) <= zv_tol && (!check || check->agrees);
            max_sf = std::max(max_sf, std::abs(receipt.self_financing_residual));
            max_zv = std::max(max_zv, std::abs(zv));

            std::string line = "{\"receipt\":" + receipt_to_json(prev, spec, receipt);
            ordered_json audit;
            audit["self_financing_residual"] = format_real(receipt.self_financing_residual);
            audit["zero_value_residual"] = format_real(zv);
            if (check) {
                audit["oracle_growth"] = format_real(check->oracle);
                audit["oracle_rel_diff"] = format_real(check->rel_diff);
            }
            audit["status"] = ok ? "ok" : "failed";
            line += ",\"audit\":" + audit.dump() + "}";
            out << line << '\n';

            if (!ok) {
                err << ordered_json{{"error", "AuditFailure"}, {"step", step},
                                    {"exit_code", static_cast<int>(kAuditFailure)}}
                           .dump()
                    << '\n';
                result.exit_code = kAuditFailure;
                summary("failed");
                return result;
            }
            result.final_pool = std::move(next);
            ++result.trades_applied;
        } catch (const Error& e) {
            err << error_json(e, step) << '\n';
            result.exit_code = exit_code_for(e.code());
            summary("failed");
            return result;
        }
    }
    summary("ok");
    return result;
}

PoolState read_pool_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::MalformedDocument, "cannot read pool file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_pool(text.str());
}

void write_pool_file(const std::filesystem::path& path, const PoolState& pool) {
    const std::string text = serialize_pool(pool);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::MalformedDocument, "cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) fail(ErrorCode::MalformedDocument, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace liqcurve::cli
