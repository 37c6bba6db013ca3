// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/kernels.h>

#include <txpack/numeric.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace txpack::kernels {

namespace {

inline double clamp_unit(double v) noexcept { return std::min(std::max(v, 0.0), 1.0); }

// Chunked reduction; chunk totals are combined in index order so the
// result is independent of scheduling.
template <class Term>
double chunked_sum(std::size_t n, Term term)
{
    const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
    if (chunks <= 1) {
        NeumaierSum s;
        for (std::size_t i = 0; i < n; ++i) s.add(term(i));
        return s.value();
    }
    std::vector<double> partial(chunks);
    const auto nchunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * chunk_size;
        const std::size_t end = std::min(n, begin + chunk_size);
        NeumaierSum s;
        for (std::size_t i = begin; i < end; ++i) s.add(term(i));
        partial[static_cast<std::size_t>(c)] = s.value();
    }
    return compensated_sum(partial);
}

} // namespace

double sum(std::span<const double> xs)
{
    return chunked_sum(xs.size(), [&](std::size_t i) { return xs[i]; });
}

double weighted_log_sum(std::span<const double> prices, std::span<const double> weights)
{
    return chunked_sum(prices.size(), [&](std::size_t i) { return weights[i] * std::log(prices[i]); });
}

void fill_raw_marginals(std::span<const double> prices, double base, double mean_log, double lambda,
                        std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(prices.size());
#pragma omp parallel for schedule(static) if (n > static_cast<std::ptrdiff_t>(chunk_size))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = base + (std::log(prices[i]) - mean_log) / lambda;
    }
}

double clamped_mass(std::span<const double> raw, std::span<const double> sizes, double x)
{
    return chunked_sum(raw.size(), [&](std::size_t i) { return clamp_unit(raw[i] - x) * sizes[i]; });
}

double clamped_slope(std::span<const double> raw, std::span<const double> sizes, double x)
{
    return chunked_sum(raw.size(), [&](std::size_t i) {
        return (x < raw[i] && raw[i] < x + 1.0) ? sizes[i] : 0.0;
    });
}

void fill_clamped(std::span<const double> raw, double x, std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(raw.size());
#pragma omp parallel for schedule(static) if (n > static_cast<std::ptrdiff_t>(chunk_size))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = clamp_unit(raw[i] - x);
    }
}

} // namespace txpack::kernels
