// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/simulator.h>

#include <txpack/error.h>
#include <txpack/numeric.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace txpack {

namespace {

class ProfileSource final : public BlockSource {
public:
    ProfileSource(std::span<const double> marginals, int count, const Mempool& mempool)
        : m_layout(marginals, count), m_mempool(mempool) {}

    Block draw(Rng& rng) const override { return sample_block(m_layout, rng.uniform(), m_mempool); }

private:
    SegmentLayout m_layout;
    const Mempool& m_mempool;
};

class FixedSource final : public BlockSource {
public:
    FixedSource(std::vector<std::size_t> members, const Mempool& mempool)
        : m_block(make_block(mempool, std::move(members))) {}

    Block draw(Rng&) const override { return m_block; }

private:
    Block m_block;
};

// Floyd's algorithm: uniform k-subset with exactly k generator calls.
class UniformSubsetSource final : public BlockSource {
public:
    UniformSubsetSource(std::size_t count, const Mempool& mempool)
        : m_count(std::min(count, mempool.size())), m_mempool(mempool) {}

    Block draw(Rng& rng) const override
    {
        const std::size_t n = m_mempool.size();
        std::set<std::size_t> chosen;
        for (std::size_t j = n - m_count; j < n; ++j) {
            const auto t = static_cast<std::size_t>(rng.below(j + 1));
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        return make_block(m_mempool, {chosen.begin(), chosen.end()});
    }

private:
    std::size_t m_count;
    const Mempool& m_mempool;
};

class RejectionSource final : public BlockSource {
public:
    RejectionSource(std::vector<double> marginals, AcceptanceWindow window, const Mempool& mempool)
        : m_marginals(std::move(marginals)), m_window(window), m_mempool(mempool) {}

    Block draw(Rng& rng) const override
    {
        return rejection_sample_block(m_mempool, m_marginals, m_window, rng).block;
    }

private:
    std::vector<double> m_marginals;
    AcceptanceWindow m_window;
    const Mempool& m_mempool;
};

std::vector<std::size_t> first_fit(const Mempool& mempool, const std::vector<std::size_t>& order, double cap)
{
    std::vector<std::size_t> picked;
    double used = 0.0;
    for (std::size_t i : order) {
        if (used + mempool[i].size <= cap) {
            picked.push_back(i);
            used += mempool[i].size;
        }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

class RandomFirstFitSource final : public BlockSource {
public:
    RandomFirstFitSource(double cap, const Mempool& mempool) : m_cap(cap), m_mempool(mempool) {}

    Block draw(Rng& rng) const override
    {
        std::vector<std::size_t> order(m_mempool.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
        }
        return make_block(m_mempool, first_fit(m_mempool, order, m_cap));
    }

private:
    double m_cap;
    const Mempool& m_mempool;
};

std::vector<std::size_t> by_descending_price(const Mempool& mempool)
{
    std::vector<std::size_t> order(mempool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return mempool[a].gas_price > mempool[b].gas_price; });
    return order;
}

double mean_of(const std::vector<TrialMetrics>& trials, double TrialMetrics::*field)
{
    NeumaierSum s;
    for (const auto& t : trials) s.add(t.*field);
    return s.value() / static_cast<double>(trials.size());
}

TrialMetrics measure(const RoundOutcome& round)
{
    TrialMetrics m;
    m.exclusive_revenue = round.per_block_exclusive_revenue.empty() ? 0.0 : round.per_block_exclusive_revenue.front();
    const std::size_t appearances = round.unique_tx_count + round.duplicate_appearances;
    m.duplication_rate =
        appearances == 0 ? 0.0 : static_cast<double>(round.duplicate_appearances) / static_cast<double>(appearances);
    m.unique_tx = static_cast<double>(round.unique_tx_count);
    m.chain_fee = round.chain_fee;
    m.wasted_capacity = round.wasted_capacity;
    m.competing_blocks = static_cast<double>(round.gamma);
    return m;
}

} // namespace

StrategyKind parse_strategy(std::string_view name)
{
    if (name == "equilibrium") return StrategyKind::equilibrium;
    if (name == "greedy") return StrategyKind::greedy;
    if (name == "uniform-random-k") return StrategyKind::uniform_random;
    throw ValidationError("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(StrategyKind kind)
{
    switch (kind) {
    case StrategyKind::equilibrium: return "equilibrium";
    case StrategyKind::greedy: return "greedy";
    case StrategyKind::uniform_random: return "uniform-random-k";
    }
    return "?";
}

std::unique_ptr<BlockSource> make_profile_source(std::span<const double> marginals, int count,
                                                 const Mempool& mempool)
{
    return std::make_unique<ProfileSource>(marginals, count, mempool);
}

std::unique_ptr<BlockSource> make_fixed_source(std::vector<std::size_t> members, const Mempool& mempool)
{
    return std::make_unique<FixedSource>(std::move(members), mempool);
}

std::unique_ptr<BlockSource> make_block_source(StrategyKind kind, const Mempool& mempool,
                                               const GameParams& params, SizeMode mode,
                                               std::optional<double> kprime)
{
    validate_params(params, mode);
    if (mempool.empty()) throw ValidationError("empty mempool");

    if (mode == SizeMode::fixed) {
        const int k = block_count(params);
        switch (kind) {
        case StrategyKind::equilibrium: {
            const auto eq = solve_equilibrium(mempool, params, mode);
            return make_profile_source(eq.profile.values, probe_count(eq.profile, k), mempool);
        }
        case StrategyKind::greedy: {
            auto order = by_descending_price(mempool);
            order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(k)));
            std::sort(order.begin(), order.end());
            return make_fixed_source(std::move(order), mempool);
        }
        case StrategyKind::uniform_random:
            return std::make_unique<UniformSubsetSource>(static_cast<std::size_t>(k), mempool);
        }
    }

    switch (kind) {
    case StrategyKind::equilibrium: {
        const double target = kprime.value_or(0.95 * params.k);
        if (!(target > 0.0 && target <= params.k)) throw ValidationError("kprime must lie in (0, k]");
        const auto eq = solve_equilibrium(mempool, GameParams{target, params.lambda}, mode);
        return std::make_unique<RejectionSource>(eq.profile.values, default_window(params.k, target), mempool);
    }
    case StrategyKind::greedy:
        return make_fixed_source(first_fit(mempool, by_descending_price(mempool), params.k), mempool);
    case StrategyKind::uniform_random:
        return std::make_unique<RandomFirstFitSource>(params.k, mempool);
    }
    throw ValidationError("unknown strategy");
}

RoundOutcome tabulate_round(const Mempool& mempool, std::vector<Block> blocks, bool focal)
{
    RoundOutcome out;
    out.focal = focal;
    out.gamma = blocks.size() - (focal && !blocks.empty() ? 1 : 0);
    out.per_block_exclusive_revenue.assign(blocks.size(), 0.0);

    std::vector<std::pair<std::size_t, std::size_t>> appearances; // (tx position, block)
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t i : blocks[b].members) appearances.emplace_back(i, b);
    }
    std::sort(appearances.begin(), appearances.end());

    NeumaierSum chain_fee;
    NeumaierSum wasted;
    for (std::size_t j = 0; j < appearances.size();) {
        std::size_t run = j + 1;
        while (run < appearances.size() && appearances[run].first == appearances[j].first) ++run;
        const auto& tx = mempool[appearances[j].first];
        const double fee = tx.gas_price * tx.size;
        const std::size_t holders = run - j;
        ++out.unique_tx_count;
        chain_fee.add(fee);
        if (holders == 1) {
            out.per_block_exclusive_revenue[appearances[j].second] += fee;
        } else {
            ++out.duplicated_tx_count;
            out.duplicate_appearances += holders - 1;
            wasted.add(tx.size * static_cast<double>(holders - 1));
        }
        j = run;
    }
    out.chain_fee = chain_fee.value();
    out.wasted_capacity = wasted.value();
    out.blocks = std::move(blocks);
    return out;
}

RoundOutcome simulate_round(const Mempool& mempool, const BlockSource& source, const GameParams& params, Rng& rng)
{
    const std::uint64_t gamma = rng.poisson(params.lambda);
    std::vector<Block> blocks;
    blocks.reserve(gamma);
    for (std::uint64_t j = 0; j < gamma; ++j) blocks.push_back(source.draw(rng));
    return tabulate_round(mempool, std::move(blocks));
}

RoundOutcome simulate_miner_round(const Mempool& mempool, const BlockSource& source, const GameParams& params,
                                  Rng& rng)
{
    std::vector<Block> blocks;
    blocks.push_back(source.draw(rng));
    blocks.front().miner_tag = "focal";
    const std::uint64_t gamma = rng.poisson(params.lambda);
    for (std::uint64_t j = 0; j < gamma; ++j) blocks.push_back(source.draw(rng));
    return tabulate_round(mempool, std::move(blocks), true);
}

std::vector<TrialMetrics> run_trials(const Mempool& mempool, const BlockSource& source, const GameParams& params,
                                     std::uint64_t stream_seed, std::uint64_t trials, int jobs, Execution exec)
{
    std::vector<TrialMetrics> out(trials);
    if (exec == Execution::serial) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = Rng::substream(stream_seed, t);
            out[t] = measure(simulate_miner_round(mempool, source, params, rng));
        }
        return out;
    }

    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t t = 0; t < n; ++t) {
        Rng rng = Rng::substream(stream_seed, static_cast<std::uint64_t>(t));
        out[static_cast<std::size_t>(t)] = measure(simulate_miner_round(mempool, source, params, rng));
    }
    return out;
}

std::uint64_t strategy_stream_seed(std::uint64_t seed, std::string_view label)
{
    return seed ^ fnv1a64(label);
}

ExperimentReport summarize_trials(std::string strategy, std::uint64_t seed, const std::vector<TrialMetrics>& trials)
{
    if (trials.empty()) throw ValidationError("trial count must be positive");
    ExperimentReport r;
    r.strategy = std::move(strategy);
    r.trials = trials.size();
    r.seed = seed;
    r.mean_exclusive_revenue = mean_of(trials, &TrialMetrics::exclusive_revenue);
    if (trials.size() > 1) {
        NeumaierSum ss;
        for (const auto& t : trials) {
            const double d = t.exclusive_revenue - r.mean_exclusive_revenue;
            ss.add(d * d);
        }
        const double n = static_cast<double>(trials.size());
        r.stderr_exclusive_revenue = std::sqrt(ss.value() / (n - 1.0) / n);
    }
    r.mean_duplication_rate = mean_of(trials, &TrialMetrics::duplication_rate);
    r.mean_unique_tx = mean_of(trials, &TrialMetrics::unique_tx);
    r.mean_chain_fee = mean_of(trials, &TrialMetrics::chain_fee);
    r.mean_wasted_capacity = mean_of(trials, &TrialMetrics::wasted_capacity);
    r.mean_competing_blocks = mean_of(trials, &TrialMetrics::competing_blocks);
    return r;
}

std::vector<ExperimentReport> run_experiment(const ExperimentConfig& config, const Mempool& mempool, Execution exec)
{
    if (config.trials == 0) throw ValidationError("trial count must be positive");
    if (config.strategies.empty()) throw ValidationError("no strategies requested");
    std::vector<StrategyKind> kinds;
    for (const auto& name : config.strategies) kinds.push_back(parse_strategy(name));

    const GameParams params{config.k, config.lambda};
    std::vector<ExperimentReport> reports;
    for (std::size_t s = 0; s < kinds.size(); ++s) {
        const auto source = make_block_source(kinds[s], mempool, params, config.mode, config.kprime);
        const auto label = to_string(kinds[s]);
        const auto metrics = run_trials(mempool, *source, params, strategy_stream_seed(config.seed, label),
                                        config.trials, config.jobs, exec);
        reports.push_back(summarize_trials(std::string(label), config.seed, metrics));
    }
    return reports;
}

} // namespace txpack
