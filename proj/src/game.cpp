// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/game.h>

#include <txpack/error.h>
#include <txpack/numeric.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace txpack {

namespace {

void require_match(std::span<const double> v, const Mempool& mempool)
{
    if (v.size() != mempool.size()) throw ValidationError("marginal vector does not match mempool");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Lexicographic rank -> combination of `k` out of `n`.
std::vector<std::size_t> unrank(std::uint64_t rank, std::size_t n, std::size_t k)
{
    std::vector<std::size_t> comb(k);
    std::size_t x = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (;; ++x) {
            const std::uint64_t below = binomial(n - x - 1, k - i - 1);
            if (rank < below) break;
            rank -= below;
        }
        comb[i] = x++;
    }
    return comb;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n)
{
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0 && comb[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    return true;
}

double set_value(const std::vector<std::size_t>& comb, std::span<const double> weighted)
{
    double s = 0.0;
    for (std::size_t i : comb) s += weighted[i];
    return s;
}

struct Best {
    double value{-std::numeric_limits<double>::infinity()};
    std::vector<std::size_t> members;
};

} // namespace

std::vector<double> discounted_prices(std::span<const double> others, const Mempool& mempool,
                                      const GameParams& params)
{
    require_match(others, mempool);
    std::vector<double> out(mempool.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = mempool[i].gas_price * std::exp(-params.lambda * others[i]);
    }
    return out;
}

UtilityReport expected_utility(std::span<const double> own, std::span<const double> others,
                               const Mempool& mempool, const GameParams& params)
{
    require_match(own, mempool);
    const auto disc = discounted_prices(others, mempool, params);
    UtilityReport report;
    report.per_tx.resize(own.size());
    NeumaierSum total;
    for (std::size_t i = 0; i < own.size(); ++i) {
        report.per_tx[i] = own[i] * mempool[i].size * disc[i];
        total.add(report.per_tx[i]);
    }
    report.value = total.value();
    return report;
}

UtilityReport expected_utility_of_set(std::span<const std::size_t> members, std::span<const double> others,
                                      const Mempool& mempool, const GameParams& params)
{
    std::vector<double> own(mempool.size(), 0.0);
    for (std::size_t i : members) {
        if (i >= own.size()) throw ValidationError("transaction position out of range");
        own[i] = 1.0;
    }
    return expected_utility(own, others, mempool, params);
}

BestResponse best_response(std::span<const double> others, const Mempool& mempool, const GameParams& params)
{
    const int k = block_count(params);
    const auto disc = discounted_prices(others, mempool, params);
    std::vector<std::size_t> order(mempool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return disc[a] > disc[b]; });
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(k)));

    BestResponse br;
    br.members = order;
    for (std::size_t i : order) br.txids.push_back(mempool[i].id);
    br.utility = expected_utility_of_set(br.members, others, mempool, params);
    return br;
}

EquilibriumVerdict verify_equilibrium(std::span<const double> profile, std::optional<double> w,
                                      const Mempool& mempool, const GameParams& params, double tol)
{
    const auto disc = discounted_prices(profile, mempool, params);
    std::vector<double> interior;
    double zero_max = -std::numeric_limits<double>::infinity();
    double one_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] <= 0.0) {
            zero_max = std::max(zero_max, disc[i]);
        } else if (profile[i] >= 1.0) {
            one_min = std::min(one_min, disc[i]);
        } else {
            interior.push_back(disc[i]);
        }
    }

    double threshold;
    if (w) {
        threshold = *w;
    } else if (!interior.empty()) {
        auto mid = interior.begin() + static_cast<std::ptrdiff_t>(interior.size() / 2);
        std::nth_element(interior.begin(), mid, interior.end());
        threshold = *mid;
    } else if (std::isinf(zero_max) && std::isinf(one_min)) {
        threshold = 1.0; // empty mempool: nothing to test
    } else if (std::isinf(zero_max)) {
        threshold = one_min;
    } else if (std::isinf(one_min)) {
        threshold = zero_max;
    } else {
        // Feasible if zero_max <= one_min; otherwise the midpoint splits the
        // violation between the two sides.
        threshold = zero_max <= one_min ? zero_max : 0.5 * (zero_max + one_min);
    }

    double violation = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        double rel;
        if (profile[i] <= 0.0) {
            rel = std::max(0.0, disc[i] - threshold);
        } else if (profile[i] >= 1.0) {
            rel = std::max(0.0, threshold - disc[i]);
        } else {
            rel = std::fabs(disc[i] - threshold);
        }
        violation = std::max(violation, rel / threshold);
    }

    const double sym = expected_utility(profile, profile, mempool, params).value;
    const BestResponse br = best_response(profile, mempool, params);
    const double gain = br.utility.value - sym;

    EquilibriumVerdict verdict;
    verdict.w = threshold;
    verdict.symmetric_utility = sym;
    verdict.worst_violation = std::max(violation, gain);
    verdict.passes = verdict.worst_violation <= tol;
    if (!verdict.passes) verdict.witness = DeviationWitness{br.txids, br.utility.value, gain};
    return verdict;
}

EquilibriumVerdict brute_force_check(const Mempool& mempool, const GameParams& params,
                                     std::span<const double> profile, double tol, Execution exec)
{
    const int k_int = block_count(params);
    require_match(profile, mempool);
    const std::size_t n = mempool.size();
    if (n > brute_force_max_transactions) {
        throw ValidationError("instance too large for brute force: more than " +
                              std::to_string(brute_force_max_transactions) + " transactions");
    }
    const std::size_t k = std::min<std::size_t>(n, static_cast<std::size_t>(k_int));
    const std::uint64_t total = binomial(n, k);
    if (total > brute_force_max_subsets) {
        throw ValidationError("instance too large for brute force: " + std::to_string(total) + " subsets");
    }

    const auto disc = discounted_prices(profile, mempool, params);
    std::vector<double> weighted(n);
    for (std::size_t i = 0; i < n; ++i) weighted[i] = disc[i] * mempool[i].size;
    const double sym = expected_utility(profile, profile, mempool, params).value;

    Best best;
    if (exec == Execution::serial) {
        std::vector<std::size_t> comb(k);
        std::iota(comb.begin(), comb.end(), std::size_t{0});
        do {
            const double v = set_value(comb, weighted);
            if (v > best.value) best = {v, comb};
        } while (next_combination(comb, n));
    } else {
        constexpr std::uint64_t chunk = 4096;
        const std::uint64_t chunks = (total + chunk - 1) / chunk;
        std::vector<Best> partial(chunks);
        const auto nchunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < nchunks; ++c) {
            const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            auto comb = unrank(begin, n, k);
            Best local;
            for (std::uint64_t r = begin; r < end; ++r) {
                const double v = set_value(comb, weighted);
                if (v > local.value) local = {v, comb};
                next_combination(comb, n);
            }
            partial[static_cast<std::size_t>(c)] = std::move(local);
        }
        // Earliest chunk wins ties, matching the serial scan.
        for (auto& p : partial) {
            if (p.value > best.value) best = std::move(p);
        }
    }

    const double best_utility = expected_utility_of_set(best.members, profile, mempool, params).value;
    const double gain = best_utility - sym;

    EquilibriumVerdict verdict;
    verdict.symmetric_utility = sym;
    verdict.worst_violation = std::max(0.0, gain);
    verdict.passes = verdict.worst_violation <= tol;
    if (!verdict.passes) {
        DeviationWitness wit;
        for (std::size_t i : best.members) wit.txids.push_back(mempool[i].id);
        wit.utility = best_utility;
        wit.gain = gain;
        verdict.witness = std::move(wit);
    }
    return verdict;
}

} // namespace txpack
