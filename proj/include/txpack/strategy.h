// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_STRATEGY_H
#define TXPACK_STRATEGY_H

#include <txpack/equilibrium.h>
#include <txpack/mempool.h>
#include <txpack/rng.h>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace txpack {

struct Block {
    std::string miner_tag;
    std::vector<std::size_t> members; //!< mempool positions, ascending
    std::vector<TxId> txids;          //!< ids of `members`, same order
    double used_capacity{0.0};
};

Block make_block(const Mempool& mempool, std::vector<std::size_t> members, std::string miner_tag = {});

struct Atom {
    double probability{0.0};
    std::vector<std::size_t> members;
    std::vector<TxId> txids;
};

/// Explicit distribution over k-subsets. Atoms correspond to consecutive
/// intervals of the probe offset r, in increasing order of r.
struct MixedStrategy {
    std::vector<Atom> atoms;
    std::size_t support_size{0};
};

/**
 * Transactions laid end to end on [0, count) as segments of length p(tx),
 * in mempool order. A probe offset r in [0, 1) selects the segments that
 * cover r, r + 1, ..., r + count - 1. Since no segment is longer than 1,
 * each probe hits a distinct transaction.
 */
class SegmentLayout {
public:
    /// Throws ValidationError if a marginal is outside [0, 1] or the
    /// marginals do not sum to `count`.
    SegmentLayout(std::span<const double> marginals, int count);

    int count() const noexcept { return m_count; }

    /// Covered interval of the transaction at mempool position i, or
    /// nullopt for a zero-length segment.
    std::optional<std::pair<double, double>> interval(std::size_t i) const;

    /// Mempool positions selected by probe offset r, ascending.
    std::vector<std::size_t> select(double r) const;

    /// Sorted distinct fractional parts of the segment end points, always
    /// starting with 0.
    std::vector<double> breakpoints() const;

private:
    int m_count;
    std::size_t m_positions;
    std::vector<std::size_t> m_segment_tx; //!< mempool position per non-empty segment
    std::vector<double> m_segment_end;     //!< cumulative end per non-empty segment
};

/// Probe count for a profile in fixed-size mode: k, or |M| when the whole
/// mempool is packaged.
int probe_count(const MarginalProfile& profile, int k);

MixedStrategy corresponding_strategy(const MarginalProfile& profile, int k, const Mempool& mempool);

Block sample_block(const SegmentLayout& layout, double r, const Mempool& mempool);
Block sample_block(const MixedStrategy& strategy, double r, const Mempool& mempool);

struct AcceptanceWindow {
    double lower{0.0};
    double upper{0.0};
};

/// [max(0, 2k' - k), k]
AcceptanceWindow default_window(double k, double kprime);

struct RejectionDraw {
    Block block;
    std::size_t attempts{0};
};

inline constexpr std::size_t default_max_attempts = 10000;

/// Draws every transaction independently with its marginal until the
/// total size of the draw lands inside `window`. Throws
/// SamplingBudgetExhausted after `max_attempts` failures.
RejectionDraw rejection_sample_block(const Mempool& mempool, std::span<const double> marginals,
                                     AcceptanceWindow window, Rng& rng,
                                     std::size_t max_attempts = default_max_attempts);

} // namespace txpack

#endif // TXPACK_STRATEGY_H
