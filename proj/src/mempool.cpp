// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/mempool.h>

#include <txpack/error.h>
#include <txpack/numeric.h>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace txpack {

namespace {

std::string record_name(std::size_t index, const nlohmann::json& record)
{
    std::ostringstream os;
    os << "transaction #" << index;
    if (record.is_object() && record.contains("id")) os << " (id " << record["id"].dump() << ")";
    return os.str();
}

} // namespace

Mempool::Mempool(std::vector<Transaction> transactions)
    : m_transactions(std::move(transactions))
{
    std::unordered_set<TxId> seen;
    seen.reserve(m_transactions.size());
    m_prices.reserve(m_transactions.size());
    m_sizes.reserve(m_transactions.size());
    NeumaierSum total;
    for (const auto& tx : m_transactions) {
        if (tx.id < 0) {
            throw ValidationError("transaction id " + std::to_string(tx.id) + " is negative");
        }
        if (!seen.insert(tx.id).second) {
            throw ValidationError("duplicate transaction id " + std::to_string(tx.id));
        }
        if (!(tx.gas_price > 0.0) || !std::isfinite(tx.gas_price)) {
            throw ValidationError("transaction id " + std::to_string(tx.id) +
                                  ": gas_price must be positive and finite");
        }
        if (!(tx.size > 0.0) || !std::isfinite(tx.size)) {
            throw ValidationError("transaction id " + std::to_string(tx.id) +
                                  ": size must be positive and finite");
        }
        if (tx.size != 1.0) m_unit_sizes = false;
        m_prices.push_back(tx.gas_price);
        m_sizes.push_back(tx.size);
        total.add(tx.size);
    }
    m_total_size = total.value();
}

void validate_params(const GameParams& params, SizeMode mode)
{
    if (!(params.k > 0.0) || !std::isfinite(params.k)) {
        throw ValidationError("block capacity k must be positive");
    }
    if (!(params.lambda >= 0.0) || !std::isfinite(params.lambda)) {
        throw ValidationError("lambda must be non-negative");
    }
    if (mode == SizeMode::fixed && std::floor(params.k) != params.k) {
        throw ValidationError("fixed-size mode needs an integral block capacity k");
    }
}

int block_count(const GameParams& params)
{
    validate_params(params, SizeMode::fixed);
    return static_cast<int>(params.k);
}

Mempool load_mempool(std::istream& source)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("mempool parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("transactions") || !doc["transactions"].is_array()) {
        throw ValidationError("mempool parse failure: expected an object with a \"transactions\" array");
    }

    std::vector<Transaction> txs;
    const auto& records = doc["transactions"];
    txs.reserve(records.size());
    std::unordered_set<TxId> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        const auto name = record_name(i, rec);
        if (!rec.is_object()) throw ValidationError(name + ": record is not an object");
        if (!rec.contains("id") || !rec["id"].is_number_integer()) {
            throw ValidationError(name + ": missing or non-integer \"id\"");
        }
        if (!rec.contains("gas_price") || !rec["gas_price"].is_number()) {
            throw ValidationError(name + ": missing or non-numeric \"gas_price\"");
        }
        if (rec.contains("size") && !rec["size"].is_number()) {
            throw ValidationError(name + ": non-numeric \"size\"");
        }
        Transaction tx;
        tx.id = rec["id"].get<TxId>();
        tx.gas_price = rec["gas_price"].get<double>();
        tx.size = rec.value("size", 1.0);
        if (tx.id < 0) throw ValidationError(name + ": id must be non-negative");
        if (!seen.insert(tx.id).second) throw ValidationError(name + ": duplicate id");
        if (!(tx.gas_price > 0.0)) throw ValidationError(name + ": gas_price must be positive");
        if (!(tx.size > 0.0)) throw ValidationError(name + ": size must be positive");
        txs.push_back(tx);
    }
    return Mempool(std::move(txs));
}

Mempool load_mempool_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open mempool file '" + path + "'");
    return load_mempool(in);
}

std::string serialize_mempool(const Mempool& mempool)
{
    nlohmann::json records = nlohmann::json::array();
    for (const auto& tx : mempool.transactions()) {
        records.push_back({{"id", tx.id}, {"gas_price", tx.gas_price}, {"size", tx.size}});
    }
    return nlohmann::json{{"transactions", records}}.dump();
}

} // namespace txpack
