// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/fees.h>

#include <txpack/error.h>

#include <cmath>

namespace txpack {

std::string_view to_string(FeeMode mode)
{
    return mode == FeeMode::paper_closed_form ? "paper_closed_form" : "xhat_aware";
}

FeeBounds base_fee(const Mempool& mempool, const GameParams& params, FeeMode mode, SizeMode size_mode)
{
    validate_params(params, size_mode);
    if (mempool.empty()) throw ValidationError("empty mempool");
    if (params.lambda == 0.0) throw ValidationError("zero-latency regime; use limit behavior (greedy best response)");
    if (mempool.total_size() < params.k) {
        throw ValidationError("mempool fits in block; every transaction is packaged and no base fee is implied");
    }

    const Equilibrium eq = solve_equilibrium(mempool, params, size_mode);
    FeeBounds fb;
    fb.mode = mode;
    fb.xhat = eq.profile.xhat;
    const double shift = mode == FeeMode::xhat_aware ? eq.profile.xhat : 0.0;
    // A zero-size transaction priced at v has raw marginal
    //   target / S + (log v - mean_log_price) / lambda,
    // so raw == shift at log v = log_constant + lambda * shift.
    fb.v_low = std::exp(eq.raw.log_constant + params.lambda * shift);
    fb.v_high = std::exp(eq.raw.log_constant + params.lambda * (shift + 1.0));
    return fb;
}

} // namespace txpack
