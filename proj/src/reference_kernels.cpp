// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Sequential reference kernels. Kept deliberately plain: one loop, one
// compensated accumulator.

#include <txpack/kernels.h>

#include <txpack/numeric.h>

#include <algorithm>
#include <cmath>

namespace txpack::reference {

double sum(std::span<const double> xs)
{
    return compensated_sum(xs);
}

double weighted_log_sum(std::span<const double> prices, std::span<const double> weights)
{
    NeumaierSum s;
    for (std::size_t i = 0; i < prices.size(); ++i) s.add(weights[i] * std::log(prices[i]));
    return s.value();
}

void fill_raw_marginals(std::span<const double> prices, double base, double mean_log, double lambda,
                        std::span<double> out)
{
    for (std::size_t i = 0; i < prices.size(); ++i) {
        out[i] = base + (std::log(prices[i]) - mean_log) / lambda;
    }
}

double clamped_mass(std::span<const double> raw, std::span<const double> sizes, double x)
{
    NeumaierSum s;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        s.add(std::min(std::max(raw[i] - x, 0.0), 1.0) * sizes[i]);
    }
    return s.value();
}

double clamped_slope(std::span<const double> raw, std::span<const double> sizes, double x)
{
    NeumaierSum s;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (x < raw[i] && raw[i] < x + 1.0) s.add(sizes[i]);
    }
    return s.value();
}

void fill_clamped(std::span<const double> raw, double x, std::span<double> out)
{
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = std::min(std::max(raw[i] - x, 0.0), 1.0);
    }
}

} // namespace txpack::reference
