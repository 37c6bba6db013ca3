// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_EQUILIBRIUM_H
#define TXPACK_EQUILIBRIUM_H

#include <txpack/mempool.h>

#include <span>
#include <vector>

namespace txpack {

/// Selects the OpenMP kernels or the sequential reference kernels.
enum class Execution { parallel, serial };

/**
 * Unclamped equilibrium marginals, one per mempool position. Values may
 * lie outside [0, 1]. For every transaction
 *     price * exp(-lambda * value) == exp(log_constant)
 * and the size-weighted values sum to the target capacity.
 */
struct RawMarginals {
    std::vector<double> values;
    double target{0.0};       //!< capacity the values are normalised to
    double total_size{0.0};   //!< sum of sizes
    double mean_log_price{0.0}; //!< size-weighted mean of log prices
    double log_constant{0.0}; //!< -lambda * target / total_size + mean_log_price
};

/**
 * Equilibrium inclusion probabilities. `w` is the common value of
 * price * exp(-lambda * p) over transactions strictly inside (0, 1).
 * `package_all` marks the degenerate case where the whole mempool fits
 * in one block and every p is 1.
 */
struct MarginalProfile {
    std::vector<double> values;
    double xhat{0.0};
    double w{0.0};
    bool package_all{false};
};

struct Equilibrium {
    RawMarginals raw;
    MarginalProfile profile;
};

/// Unit-size raw marginals. Throws ValidationError on an empty mempool,
/// lambda == 0, or non-unit sizes.
RawMarginals compute_phat(const Mempool& mempool, const GameParams& params,
                          Execution exec = Execution::parallel);

/// Size-aware raw marginals; reduces to compute_phat for unit sizes.
RawMarginals compute_phat_real(const Mempool& mempool, const GameParams& params,
                               Execution exec = Execution::parallel);

/// f(x) = sum of min(max(raw - x, 0), 1) * size.
double clamped_mass(std::span<const double> raw, std::span<const double> sizes, double x,
                    Execution exec = Execution::parallel);

/**
 * Smallest x with clamped_mass(raw, sizes, x) == k.
 *
 * Sorts the 2m breakpoints {raw[i], raw[i] - 1}, bisects for the last
 * breakpoint where f still exceeds k and interpolates linearly on the
 * bracketed segment. Throws MempoolFitsInBlock when sum(sizes) <= k.
 */
double solve_xhat(std::span<const double> raw, std::span<const double> sizes, double k,
                  Execution exec = Execution::parallel);

/// Clamps raw marginals at xhat and fills in the threshold w. Checks every
/// profile invariant and throws InvariantViolation on failure.
MarginalProfile clamp_marginals(const RawMarginals& raw, double xhat, const Mempool& mempool,
                                const GameParams& params, Execution exec = Execution::parallel);

/// Raw marginals, xhat and clamped profile in one call. `params.k` is the
/// capacity the profile is normalised to. When the whole mempool fits,
/// returns the package-everything profile instead of failing.
Equilibrium solve_equilibrium(const Mempool& mempool, const GameParams& params, SizeMode mode,
                              Execution exec = Execution::parallel);

/// Throws InvariantViolation unless the profile satisfies the bound,
/// budget and threshold conditions.
void check_profile(const MarginalProfile& profile, const Mempool& mempool, const GameParams& params);

} // namespace txpack

#endif // TXPACK_EQUILIBRIUM_H
