// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_SIMULATOR_H
#define TXPACK_SIMULATOR_H

#include <txpack/equilibrium.h>
#include <txpack/mempool.h>
#include <txpack/rng.h>
#include <txpack/strategy.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace txpack {

enum class StrategyKind { equilibrium, greedy, uniform_random };

/// Accepts "equilibrium", "greedy" and "uniform-random-k".
StrategyKind parse_strategy(std::string_view name);
std::string_view to_string(StrategyKind kind);

/// Something that produces one miner's block per call. Implementations are
/// immutable; all randomness comes from the caller's generator.
class BlockSource {
public:
    virtual ~BlockSource() = default;
    virtual Block draw(Rng& rng) const = 0;
};

/**
 * Block source for a named strategy.
 *
 * fixed mode:    equilibrium = segment sampling of the equilibrium profile,
 *                greedy = top-k by gas price,
 *                uniform-random-k = uniform k-subset.
 * variable mode: equilibrium = rejection sampling of the size-aware
 *                profile normalised to kprime, window [max(0, 2k'-k), k],
 *                greedy = first fit by descending gas price,
 *                uniform-random-k = first fit in a random order.
 */
std::unique_ptr<BlockSource> make_block_source(StrategyKind kind, const Mempool& mempool,
                                               const GameParams& params, SizeMode mode,
                                               std::optional<double> kprime = std::nullopt);

/// Samples from a fixed marginal profile with a uniform probe offset.
std::unique_ptr<BlockSource> make_profile_source(std::span<const double> marginals, int count,
                                                 const Mempool& mempool);

/// Always returns the same block.
std::unique_ptr<BlockSource> make_fixed_source(std::vector<std::size_t> members, const Mempool& mempool);

/**
 * One latency window.
 *
 * A transaction's fee v * s counts as exclusive revenue for a block only
 * when no other block in the window holds it. The chain-level `chain_fee`
 * counts each distinct included transaction once, however many blocks
 * hold it. When `focal` is set, blocks[0] is the observed miner's own
 * block and `gamma` counts the competing blocks after it.
 */
struct RoundOutcome {
    std::uint64_t gamma{0};
    bool focal{false};
    std::vector<Block> blocks;
    std::vector<double> per_block_exclusive_revenue;
    std::size_t unique_tx_count{0};
    std::size_t duplicated_tx_count{0};   //!< distinct transactions held by two or more blocks
    std::size_t duplicate_appearances{0}; //!< sum of block sizes minus unique_tx_count
    double wasted_capacity{0.0};          //!< capacity spent on the extra appearances
    double chain_fee{0.0};
};

/// Accounting for an explicit set of blocks.
RoundOutcome tabulate_round(const Mempool& mempool, std::vector<Block> blocks, bool focal = false);

/// gamma ~ Poisson(lambda) blocks drawn i.i.d. from `source`.
RoundOutcome simulate_round(const Mempool& mempool, const BlockSource& source, const GameParams& params,
                            Rng& rng);

/// The focal miner's block followed by gamma ~ Poisson(lambda) competitors;
/// blocks[0]'s exclusive revenue is a draw of the miner's utility.
RoundOutcome simulate_miner_round(const Mempool& mempool, const BlockSource& source,
                                  const GameParams& params, Rng& rng);

struct ExperimentConfig {
    std::string mempool; //!< path, informational once the mempool is loaded
    double lambda{0.0};
    double k{1.0};
    std::uint64_t trials{0};
    std::uint64_t seed{0};
    std::vector<std::string> strategies;
    SizeMode mode{SizeMode::fixed};
    std::optional<double> kprime;
    int jobs{0}; //!< 0 = OpenMP default
};

struct ExperimentReport {
    std::string strategy;
    std::uint64_t trials{0};
    std::uint64_t seed{0};
    double mean_exclusive_revenue{0.0};
    double stderr_exclusive_revenue{0.0};
    double mean_duplication_rate{0.0};
    double mean_unique_tx{0.0};
    double mean_chain_fee{0.0};
    double mean_wasted_capacity{0.0};
    double mean_competing_blocks{0.0};
};

/// Per-trial metrics of a miner round.
struct TrialMetrics {
    double exclusive_revenue{0.0};
    double duplication_rate{0.0};
    double unique_tx{0.0};
    double chain_fee{0.0};
    double wasted_capacity{0.0};
    double competing_blocks{0.0};
};

/**
 * Runs `trials` miner rounds. Trial t draws from
 * Rng::substream(stream_seed, t), so results are independent of the
 * thread count and earlier trials do not move when `trials` grows.
 */
std::vector<TrialMetrics> run_trials(const Mempool& mempool, const BlockSource& source, const GameParams& params,
                                     std::uint64_t stream_seed, std::uint64_t trials, int jobs = 0,
                                     Execution exec = Execution::parallel);

/// Seed of a strategy's trial streams: seed ^ fnv1a64(label).
std::uint64_t strategy_stream_seed(std::uint64_t seed, std::string_view label);

ExperimentReport summarize_trials(std::string strategy, std::uint64_t seed, const std::vector<TrialMetrics>& trials);

std::vector<ExperimentReport> run_experiment(const ExperimentConfig& config, const Mempool& mempool,
                                             Execution exec = Execution::parallel);

} // namespace txpack

#endif // TXPACK_SIMULATOR_H
