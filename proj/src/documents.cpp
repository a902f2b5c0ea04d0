#include "liqcurve/documents.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

#include <json.hpp>

#include "liqcurve/errors.hpp"
#include "liqcurve/rebalancing.hpp"

namespace liqcurve {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double x) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(len));
}

double parse_real(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value)) {
        fail(ErrorCode::MalformedDocument, "not a finite decimal: '" + std::string(text) + "'");
    }
    return value;
}

std::string serialize_pool(const PoolState& pool) {
    ordered_json doc;
    doc["version"] = 1;
    doc["k"] = format_real(pool.params.k);
    doc["step"] = pool.step;
    ordered_json tokens = ordered_json::array();
    for (std::size_t i = 0; i < pool.n(); ++i) {
        tokens.push_back({{"symbol", pool.symbols[i]}, {"amount", format_real(pool.alpha[i])}});
    }
    doc["tokens"] = std::move(tokens);
    doc["pool_token_supply"] = format_real(pool.supply());
    ordered_json policy;
    if (pool.weight_policy.kind == WeightPolicy::Kind::Equal) {
        policy["kind"] = "equal";
    } else {
        policy["kind"] = "constant";
        ordered_json weights = ordered_json::array();
        for (double w : pool.weight_policy.weights) weights.push_back(format_real(w));
        policy["weights"] = std::move(weights);
    }
    doc["weight_policy"] = std::move(policy);
    return doc.dump(2) + "\n";
}

namespace {

const ordered_json& member(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(ErrorCode::MalformedDocument, std::string("missing field '") + key + "'");
    }
    return *it;
}

double real_field(const ordered_json& value, const char* what) {
    if (!value.is_string()) {
        fail(ErrorCode::MalformedDocument, std::string(what) + " must be a decimal string");
    }
    return parse_real(value.get_ref<const std::string&>());
}

}  // namespace

PoolState parse_pool(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::MalformedDocument, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorCode::MalformedDocument, "pool document must be an object");

    const auto& version = member(doc, "version");
    if (!version.is_number_integer() || version.get<int>() != 1) {
        fail(ErrorCode::MalformedDocument, "unsupported document version");
    }

    PoolState pool;
    pool.params.k = real_field(member(doc, "k"), "k");
    const auto& step = member(doc, "step");
    if (!step.is_number_integer()) fail(ErrorCode::MalformedDocument, "step must be an integer");
    pool.step = step.get<std::int64_t>();

    const auto& tokens = member(doc, "tokens");
    if (!tokens.is_array()) fail(ErrorCode::MalformedDocument, "tokens must be an array");
    for (const auto& token : tokens) {
        if (!token.is_object()) fail(ErrorCode::MalformedDocument, "token entry must be an object");
        const auto& symbol = member(token, "symbol");
        if (!symbol.is_string()) fail(ErrorCode::MalformedDocument, "symbol must be a string");
        pool.symbols.push_back(symbol.get<std::string>());
        pool.alpha.push_back(real_field(member(token, "amount"), "amount"));
    }
    pool.alpha0 = -real_field(member(doc, "pool_token_supply"), "pool_token_supply");

    const auto& policy = member(doc, "weight_policy");
    if (!policy.is_object()) fail(ErrorCode::MalformedDocument, "weight_policy must be an object");
    const auto& kind = member(policy, "kind");
    if (kind == "equal") {
        pool.weight_policy = WeightPolicy::equal();
    } else if (kind == "constant") {
        const auto& weights = member(policy, "weights");
        if (!weights.is_array()) fail(ErrorCode::MalformedDocument, "weights must be an array");
        std::vector<double> w;
        for (const auto& v : weights) w.push_back(real_field(v, "weight"));
        pool.weight_policy = WeightPolicy::constant(std::move(w));
    } else {
        fail(ErrorCode::MalformedDocument, "unknown weight policy kind");
    }

    pool.validate();
    return pool;
}

std::string receipt_to_json(const PoolState& pool, const TradeSpec& spec,
                            const TradeReceipt& receipt) {
    auto reals = [](const std::vector<double>& xs) {
        ordered_json arr = ordered_json::array();
        for (double x : xs) arr.push_back(format_real(x));
        return arr;
    };
    ordered_json out;
    out["step"] = receipt.step;
    out["kind"] = std::string(to_string(spec.kind));
    out["symbols"] = pool.symbols;
    out["deltas"] = reals(receipt.deltas);
    out["delta0"] = format_real(receipt.delta0);
    out["supply_change"] = format_real(receipt.supply_change());
    std::vector<double> growths;
    for (const auto& g : receipt.solved_growths.assets) growths.push_back(g.value_or(NAN));
    out["growths"] = reals(growths);
    out["g0"] = format_real(receipt.solved_growths.pool.value_or(NAN));
    out["prices_prev"] = reals(receipt.prices_prev);
    out["prices_new"] = reals(receipt.prices_new);
    out["self_financing_residual"] = format_real(receipt.self_financing_residual);
    return out.dump();
}

}  // namespace liqcurve
