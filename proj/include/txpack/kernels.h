// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_KERNELS_H
#define TXPACK_KERNELS_H

#include <cstddef>
#include <span>

// Data-parallel inner loops of the equilibrium solver.
//
// The OpenMP kernels in txpack::kernels split their input into fixed-size
// chunks, reduce each chunk with a compensated sum and then combine the
// chunk totals serially in chunk order. The result therefore does not
// depend on the thread count. txpack::reference holds plain sequential
// versions of the same kernels; the test suite checks the two agree and
// the benchmark target compares their speed.

namespace txpack {

namespace kernels {

inline constexpr std::size_t chunk_size = 4096;

/// Sum of xs.
double sum(std::span<const double> xs);

/// Sum over i of weights[i] * log(prices[i]).
double weighted_log_sum(std::span<const double> prices, std::span<const double> weights);

/// out[i] = base + (log(prices[i]) - mean_log) / lambda
void fill_raw_marginals(std::span<const double> prices, double base, double mean_log, double lambda,
                        std::span<double> out);

/// f(x) = sum over i of min(max(raw[i] - x, 0), 1) * sizes[i]
double clamped_mass(std::span<const double> raw, std::span<const double> sizes, double x);

/// Magnitude of the slope of f at a point x that is not a breakpoint:
/// the total size of entries with x < raw[i] < x + 1.
double clamped_slope(std::span<const double> raw, std::span<const double> sizes, double x);

/// out[i] = min(max(raw[i] - x, 0), 1)
void fill_clamped(std::span<const double> raw, double x, std::span<double> out);

} // namespace kernels

namespace reference {

double sum(std::span<const double> xs);
double weighted_log_sum(std::span<const double> prices, std::span<const double> weights);
void fill_raw_marginals(std::span<const double> prices, double base, double mean_log, double lambda,
                        std::span<double> out);
double clamped_mass(std::span<const double> raw, std::span<const double> sizes, double x);
double clamped_slope(std::span<const double> raw, std::span<const double> sizes, double x);
void fill_clamped(std::span<const double> raw, double x, std::span<double> out);

} // namespace reference

} // namespace txpack

#endif // TXPACK_KERNELS_H
