// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_FEES_H
#define TXPACK_FEES_H

#include <txpack/equilibrium.h>
#include <txpack/mempool.h>

#include <string_view>

namespace txpack {

/**
 * Endogenous gas-price bounds implied by the equilibrium.
 *
 * Both bounds come from pricing a zero-size virtual transaction so that
 * its raw marginal equals a clamp edge: v_low puts it at xhat (it may just
 * start to be packaged), v_high at xhat + 1 (every block packages it).
 *
 * `paper_closed_form` evaluates the closed forms with the clamp shift
 * fixed at zero. They coincide with `xhat_aware` only when no marginal is
 * clamped; with clamping active they misplace both bounds by a factor of
 * exp(lambda * xhat).
 */
enum class FeeMode { paper_closed_form, xhat_aware };

std::string_view to_string(FeeMode mode);

struct FeeBounds {
    double v_low{0.0};
    double v_high{0.0};
    FeeMode mode{FeeMode::xhat_aware};
    double xhat{0.0};
};

/// Throws ValidationError for an empty mempool, lambda == 0, or a mempool
/// whose total size is below k.
FeeBounds base_fee(const Mempool& mempool, const GameParams& params, FeeMode mode,
                   SizeMode size_mode = SizeMode::fixed);

} // namespace txpack

#endif // TXPACK_FEES_H
