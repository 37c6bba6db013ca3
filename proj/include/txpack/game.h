// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_GAME_H
#define TXPACK_GAME_H

#include <txpack/equilibrium.h>
#include <txpack/mempool.h>

#include <optional>
#include <span>
#include <vector>

namespace txpack {

/// Expected fee of one block conditional on it being mined. `per_tx[i]`
/// is own[i] * v * s * exp(-lambda * others[i]).
struct UtilityReport {
    double value{0.0};
    std::vector<double> per_tx;
};

UtilityReport expected_utility(std::span<const double> own, std::span<const double> others,
                               const Mempool& mempool, const GameParams& params);

/// Utility of packaging exactly the transactions at `members`.
UtilityReport expected_utility_of_set(std::span<const std::size_t> members, std::span<const double> others,
                                      const Mempool& mempool, const GameParams& params);

/// v * exp(-lambda * q), the fee a transaction earns per unit capacity
/// when the competing blocks include it with probability q.
std::vector<double> discounted_prices(std::span<const double> others, const Mempool& mempool,
                                      const GameParams& params);

struct BestResponse {
    std::vector<std::size_t> members; //!< in selection order
    std::vector<TxId> txids;
    UtilityReport utility;
};

/// Top-k transactions by discounted price; ties go to the earlier mempool
/// position. Fixed-size mode.
BestResponse best_response(std::span<const double> others, const Mempool& mempool, const GameParams& params);

struct DeviationWitness {
    std::vector<TxId> txids;
    double utility{0.0};
    double gain{0.0}; //!< utility minus the symmetric utility
};

struct EquilibriumVerdict {
    bool passes{false};
    std::optional<double> w;
    double worst_violation{0.0};
    double symmetric_utility{0.0};
    std::optional<DeviationWitness> witness;
};

/**
 * Threshold test: there must be a w with
 *   v exp(-lambda p) <= w  where p = 0,
 *   v exp(-lambda p) == w  where 0 < p < 1,
 *   v exp(-lambda p) >= w  where p = 1.
 * Uses `w` when given, otherwise the median over interior transactions
 * (or the feasible interval when there are none). Violations are relative
 * to w. Also requires the best-response gain to stay within `tol`.
 */
EquilibriumVerdict verify_equilibrium(std::span<const double> profile, std::optional<double> w,
                                      const Mempool& mempool, const GameParams& params, double tol);

inline constexpr std::size_t brute_force_max_transactions = 20;
inline constexpr std::size_t brute_force_max_subsets = 1'000'000;

/// Enumerates every k-subset as a pure deviation against `profile`.
/// Throws ValidationError when the instance exceeds the enumeration limits.
EquilibriumVerdict brute_force_check(const Mempool& mempool, const GameParams& params,
                                     std::span<const double> profile, double tol,
                                     Execution exec = Execution::parallel);

} // namespace txpack

#endif // TXPACK_GAME_H
