// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/strategy.h>

#include <txpack/error.h>
#include <txpack/numeric.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace txpack {

namespace {

constexpr double kSumTol = 1e-9;
// Fractional parts closer than this to an integer are treated as integral.
constexpr double kSnapTol = 1e-14;

} // namespace

SamplingBudgetExhausted::SamplingBudgetExhausted(std::size_t attempts, double below_cap_rate,
                                                 double above_floor_rate)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "rejection sampler gave up after " << attempts << " attempts (acceptance rate < "
             << 1.0 / static_cast<double>(attempts) << "; " << below_cap_rate << " of draws within cap, "
             << above_floor_rate << " above the lower bound)";
          return os.str();
      }()),
      m_attempts(attempts), m_below_cap_rate(below_cap_rate), m_above_floor_rate(above_floor_rate)
{
}

Block make_block(const Mempool& mempool, std::vector<std::size_t> members, std::string miner_tag)
{
    Block block;
    block.miner_tag = std::move(miner_tag);
    block.members = std::move(members);
    block.txids.reserve(block.members.size());
    NeumaierSum used;
    for (std::size_t i : block.members) {
        block.txids.push_back(mempool[i].id);
        used.add(mempool[i].size);
    }
    block.used_capacity = used.value();
    return block;
}

SegmentLayout::SegmentLayout(std::span<const double> marginals, int count)
    : m_count(count), m_positions(marginals.size())
{
    if (count < 0) throw ValidationError("negative probe count");
    NeumaierSum running;
    for (std::size_t i = 0; i < marginals.size(); ++i) {
        const double p = marginals[i];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("marginal at position " + std::to_string(i) + " is outside [0, 1]");
        }
        if (p == 0.0) continue;
        running.add(p);
        m_segment_tx.push_back(i);
        m_segment_end.push_back(running.value());
    }
    const double total = running.value();
    if (std::fabs(total - count) > kSumTol * std::max(1, count)) {
        std::ostringstream os;
        os.precision(17);
        os << "marginals sum to " << total << ", expected " << count;
        throw ValidationError(os.str());
    }
    if (!m_segment_end.empty()) m_segment_end.back() = static_cast<double>(count);
}

std::optional<std::pair<double, double>> SegmentLayout::interval(std::size_t i) const
{
    const auto it = std::lower_bound(m_segment_tx.begin(), m_segment_tx.end(), i);
    if (it == m_segment_tx.end() || *it != i) return std::nullopt;
    const auto s = static_cast<std::size_t>(it - m_segment_tx.begin());
    const double start = s == 0 ? 0.0 : m_segment_end[s - 1];
    return std::make_pair(start, m_segment_end[s]);
}

std::vector<std::size_t> SegmentLayout::select(double r) const
{
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(m_count));
    std::size_t next_free = 0;
    for (int n = 0; n < m_count; ++n) {
        const double pos = r + n;
        auto s = static_cast<std::size_t>(
            std::upper_bound(m_segment_end.begin(), m_segment_end.end(), pos) - m_segment_end.begin());
        // Rounding in the prefix sums can leave a unit segment a hair longer
        // than 1; never select the same segment twice.
        s = std::max(s, next_free);
        if (s >= m_segment_tx.size()) break;
        out.push_back(m_segment_tx[s]);
        next_free = s + 1;
    }
    return out;
}

std::vector<double> SegmentLayout::breakpoints() const
{
    std::vector<double> fr;
    fr.reserve(m_segment_end.size() + 1);
    fr.push_back(0.0);
    for (double e : m_segment_end) {
        double f = e - std::floor(e);
        if (f < kSnapTol || f > 1.0 - kSnapTol) f = 0.0;
        fr.push_back(f);
    }
    std::sort(fr.begin(), fr.end());
    fr.erase(std::unique(fr.begin(), fr.end(), [](double a, double b) { return b - a <= kSnapTol; }), fr.end());
    return fr;
}

int probe_count(const MarginalProfile& profile, int k)
{
    if (profile.package_all) return static_cast<int>(std::min<std::size_t>(profile.values.size(), k));
    return k;
}

MixedStrategy corresponding_strategy(const MarginalProfile& profile, int k, const Mempool& mempool)
{
    if (profile.values.size() != mempool.size()) throw ValidationError("profile does not match mempool");
    const SegmentLayout layout(profile.values, probe_count(profile, k));

    MixedStrategy strategy;
    auto cuts = layout.breakpoints();
    cuts.push_back(1.0);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        const double width = cuts[j + 1] - cuts[j];
        if (!(width > 0.0)) continue;
        // The selected set is constant on [cuts[j], cuts[j+1]); probing the
        // midpoint keeps clear of rounding at either end.
        auto members = layout.select(0.5 * (cuts[j] + cuts[j + 1]));
        Block b = make_block(mempool, std::move(members));
        strategy.atoms.push_back(Atom{width, std::move(b.members), std::move(b.txids)});
    }
    strategy.support_size = strategy.atoms.size();
    return strategy;
}

Block sample_block(const SegmentLayout& layout, double r, const Mempool& mempool)
{
    if (!(r >= 0.0 && r < 1.0)) throw ValidationError("probe offset r must lie in [0, 1)");
    return make_block(mempool, layout.select(r));
}

Block sample_block(const MixedStrategy& strategy, double r, const Mempool& mempool)
{
    if (!(r >= 0.0 && r < 1.0)) throw ValidationError("probe offset r must lie in [0, 1)");
    if (strategy.atoms.empty()) return make_block(mempool, {});
    NeumaierSum cum;
    for (const auto& atom : strategy.atoms) {
        cum.add(atom.probability);
        if (r < cum.value()) return make_block(mempool, atom.members);
    }
    return make_block(mempool, strategy.atoms.back().members);
}

AcceptanceWindow default_window(double k, double kprime)
{
    return {std::max(0.0, 2.0 * kprime - k), k};
}

RejectionDraw rejection_sample_block(const Mempool& mempool, std::span<const double> marginals,
                                     AcceptanceWindow window, Rng& rng, std::size_t max_attempts)
{
    if (marginals.size() != mempool.size()) throw ValidationError("profile does not match mempool");
    if (!(window.lower <= window.upper)) throw ValidationError("acceptance window is empty");
    if (max_attempts == 0) throw ValidationError("attempt budget must be positive");

    const auto sizes = mempool.sizes();
    std::vector<std::size_t> drawn;
    std::size_t below_cap = 0;
    std::size_t above_floor = 0;
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        drawn.clear();
        NeumaierSum used;
        for (std::size_t i = 0; i < marginals.size(); ++i) {
            // Always consume one variate per transaction so the stream
            // position does not depend on the outcome.
            const double u = rng.uniform();
            if (u < marginals[i]) {
                drawn.push_back(i);
                used.add(sizes[i]);
            }
        }
        const double total = used.value();
        const bool under = total <= window.upper;
        const bool over = total >= window.lower;
        below_cap += under;
        above_floor += over;
        if (under && over) return {make_block(mempool, drawn), attempt};
    }
    const auto n = static_cast<double>(max_attempts);
    throw SamplingBudgetExhausted(max_attempts, static_cast<double>(below_cap) / n,
                                  static_cast<double>(above_floor) / n);
}

} // namespace txpack
