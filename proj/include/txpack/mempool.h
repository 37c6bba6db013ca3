// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_MEMPOOL_H
#define TXPACK_MEMPOOL_H

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace txpack {

using TxId = std::int64_t;

struct Transaction {
    TxId id{0};
    double gas_price{1.0}; //!< bid per unit of block capacity
    double size{1.0};      //!< block capacity units used

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

/** Whether every transaction uses one unit of capacity (the analytic
 *  model) or arbitrary positive sizes (the knapsack-flavoured extension). */
enum class SizeMode { fixed, variable };

/**
 * Validated, immutable collection of transactions.
 *
 * Input order is preserved and is the canonical order everywhere else:
 * marginal vectors, segment layouts and tie-breaks all index transactions
 * by their position in this container. Prices and sizes are additionally
 * kept as contiguous columns for the numeric kernels.
 */
class Mempool {
public:
    Mempool() = default;
    /// Throws ValidationError on duplicate ids or non-positive price/size.
    explicit Mempool(std::vector<Transaction> transactions);

    std::size_t size() const noexcept { return m_transactions.size(); }
    bool empty() const noexcept { return m_transactions.empty(); }

    const std::vector<Transaction>& transactions() const noexcept { return m_transactions; }
    const Transaction& operator[](std::size_t i) const { return m_transactions[i]; }

    std::span<const double> prices() const noexcept { return m_prices; }
    std::span<const double> sizes() const noexcept { return m_sizes; }

    /// Sum of member sizes, computed once at construction.
    double total_size() const noexcept { return m_total_size; }

    /// True when every member has size exactly 1.
    bool unit_sizes() const noexcept { return m_unit_sizes; }

private:
    std::vector<Transaction> m_transactions;
    std::vector<double> m_prices;
    std::vector<double> m_sizes;
    double m_total_size{0.0};
    bool m_unit_sizes{true};
};

struct GameParams {
    double k{1.0};      //!< block capacity
    double lambda{0.0}; //!< expected competing blocks per latency window
};

/// Validates k and lambda; in fixed mode k must be a positive integer.
void validate_params(const GameParams& params, SizeMode mode);

/// Block capacity as a transaction count. Requires an integral k.
int block_count(const GameParams& params);

/// Parses the mempool wire format. Throws ValidationError naming the
/// offending record on any problem.
Mempool load_mempool(std::istream& source);
Mempool load_mempool_file(const std::string& path);

/// Canonical wire form: every record carries an explicit size.
std::string serialize_mempool(const Mempool& mempool);

} // namespace txpack

#endif // TXPACK_MEMPOOL_H
