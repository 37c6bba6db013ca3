// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/json_io.h>

#include <txpack/error.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unordered_map>

namespace txpack {

using nlohmann::json;

json to_json(const Mempool& mempool)
{
    json records = json::array();
    for (const auto& tx : mempool.transactions()) {
        records.push_back({{"id", tx.id}, {"gas_price", tx.gas_price}, {"size", tx.size}});
    }
    return {{"transactions", records}};
}

json to_json(const Equilibrium& eq, const Mempool& mempool, const GameParams& params, SizeMode mode)
{
    json marginals = json::array();
    for (std::size_t i = 0; i < mempool.size(); ++i) {
        marginals.push_back({{"id", mempool[i].id}, {"phat", eq.raw.values[i]}, {"p", eq.profile.values[i]}});
    }
    return {
        {"mode", mode == SizeMode::fixed ? "fixed" : "variable"},
        {"k", params.k},
        {"lambda", params.lambda},
        {"target_capacity", eq.raw.target},
        {"xhat", eq.profile.xhat},
        {"w", eq.profile.w},
        {"package_all", eq.profile.package_all},
        {"marginals", marginals},
    };
}

json to_json(const MixedStrategy& strategy)
{
    json atoms = json::array();
    for (const auto& atom : strategy.atoms) atoms.push_back({{"p", atom.probability}, {"txids", atom.txids}});
    return {{"atoms", atoms}};
}

json to_json(const Block& block)
{
    return {{"txids", block.txids}, {"used_capacity", block.used_capacity}};
}

json to_json(const FeeBounds& fees)
{
    return {{"v_low", fees.v_low}, {"v_high", fees.v_high}, {"mode", to_string(fees.mode)}, {"xhat", fees.xhat}};
}

json to_json(const EquilibriumVerdict& verdict)
{
    json out = {
        {"passes", verdict.passes},
        {"w", verdict.w ? json(*verdict.w) : json(nullptr)},
        {"worst_violation", verdict.worst_violation},
        {"symmetric_utility", verdict.symmetric_utility},
        {"witness", nullptr},
    };
    if (verdict.witness) {
        out["witness"] = {
            {"txids", verdict.witness->txids},
            {"utility", verdict.witness->utility},
            {"gain", verdict.witness->gain},
        };
    }
    return out;
}

json to_json(const ExperimentConfig& config)
{
    json out = {
        {"mempool", config.mempool},
        {"lambda", config.lambda},
        {"k", config.k},
        {"trials", config.trials},
        {"seed", config.seed},
        {"strategies", config.strategies},
        {"mode", config.mode == SizeMode::fixed ? "fixed" : "variable"},
    };
    if (config.kprime) out["kprime"] = *config.kprime;
    return out;
}

json to_json(const ExperimentReport& r)
{
    return {
        {"strategy", r.strategy},
        {"trials", r.trials},
        {"seed", r.seed},
        {"mean_exclusive_revenue", r.mean_exclusive_revenue},
        {"stderr_exclusive_revenue", r.stderr_exclusive_revenue},
        {"mean_duplication_rate", r.mean_duplication_rate},
        {"mean_unique_tx", r.mean_unique_tx},
        {"mean_chain_fee", r.mean_chain_fee},
        {"mean_wasted_capacity", r.mean_wasted_capacity},
        {"mean_competing_blocks", r.mean_competing_blocks},
    };
}

json experiment_document(const ExperimentConfig& config, const std::vector<ExperimentReport>& reports)
{
    json list = json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    return {{"schema_version", report_schema_version}, {"config", to_json(config)}, {"reports", list}};
}

ExperimentConfig parse_experiment_config(const json& doc)
{
    if (!doc.is_object()) throw ValidationError("experiment config must be a JSON object");
    ExperimentConfig c;
    try {
        c.mempool = doc.value("mempool", std::string{});
        c.lambda = doc.at("lambda").get<double>();
        c.k = doc.at("k").get<double>();
        c.trials = doc.at("trials").get<std::uint64_t>();
        c.seed = doc.value("seed", std::uint64_t{0});
        c.strategies = doc.value("strategies", std::vector<std::string>{"equilibrium", "greedy"});
        const auto mode = doc.value("mode", std::string{"fixed"});
        if (mode == "fixed") {
            c.mode = SizeMode::fixed;
        } else if (mode == "variable") {
            c.mode = SizeMode::variable;
        } else {
            throw ValidationError("experiment config: mode must be \"fixed\" or \"variable\"");
        }
        if (doc.contains("kprime")) c.kprime = doc["kprime"].get<double>();
        c.jobs = doc.value("jobs", 0);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("experiment config: ") + e.what());
    }
    return c;
}

std::vector<double> parse_profile(const json& doc, const Mempool& mempool)
{
    if (!doc.is_object() || !doc.contains("marginals") || !doc["marginals"].is_array()) {
        throw ValidationError("profile document needs a \"marginals\" array");
    }
    std::unordered_map<TxId, double> by_id;
    for (const auto& rec : doc["marginals"]) {
        if (!rec.is_object() || !rec.contains("id") || !rec.contains("p")) {
            throw ValidationError("profile record needs \"id\" and \"p\"");
        }
        by_id[rec["id"].get<TxId>()] = rec["p"].get<double>();
    }
    std::vector<double> out(mempool.size());
    for (std::size_t i = 0; i < mempool.size(); ++i) {
        const auto it = by_id.find(mempool[i].id);
        if (it == by_id.end()) {
            throw ValidationError("profile has no marginal for transaction id " + std::to_string(mempool[i].id));
        }
        out[i] = it->second;
    }
    return out;
}

void round_numbers(json& doc, int digits)
{
    if (doc.is_number_float()) {
        const double v = doc.get<double>();
        if (!std::isfinite(v)) {
            doc = nullptr;
            return;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        double r = std::strtod(buf, nullptr);
        if (r == 0.0) r = 0.0; // drop negative zero
        doc = r;
    } else if (doc.is_structured()) {
        for (auto& item : doc) round_numbers(item, digits);
    }
}

} // namespace txpack
