// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <txpack/equilibrium.h>

#include <txpack/error.h>
#include <txpack/kernels.h>
#include <txpack/numeric.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace txpack {

namespace {

constexpr double kIdentityTol = 1e-9;

void require_solvable(const Mempool& mempool, const GameParams& params)
{
    if (mempool.empty()) throw ValidationError("empty mempool");
    if (params.lambda == 0.0) {
        throw ValidationError("zero-latency regime; use limit behavior (greedy best response)");
    }
}

RawMarginals raw_from_sizes(const Mempool& mempool, const GameParams& params, Execution exec)
{
    RawMarginals raw;
    raw.target = params.k;
    raw.values.resize(mempool.size());
    const auto prices = mempool.prices();
    const auto sizes = mempool.sizes();
    if (exec == Execution::parallel) {
        raw.total_size = kernels::sum(sizes);
        raw.mean_log_price = kernels::weighted_log_sum(prices, sizes) / raw.total_size;
        kernels::fill_raw_marginals(prices, params.k / raw.total_size, raw.mean_log_price, params.lambda,
                                    raw.values);
    } else {
        raw.total_size = reference::sum(sizes);
        raw.mean_log_price = reference::weighted_log_sum(prices, sizes) / raw.total_size;
        reference::fill_raw_marginals(prices, params.k / raw.total_size, raw.mean_log_price, params.lambda,
                                      raw.values);
    }
    raw.log_constant = -params.lambda * params.k / raw.total_size + raw.mean_log_price;
    return raw;
}

double slope_at(std::span<const double> raw, std::span<const double> sizes, double x, Execution exec)
{
    return exec == Execution::parallel ? kernels::clamped_slope(raw, sizes, x)
                                       : reference::clamped_slope(raw, sizes, x);
}

[[noreturn]] void violated(const char* invariant, std::size_t index, const Mempool& mempool, double got,
                           double want)
{
    std::ostringstream os;
    os.precision(17);
    os << "transaction id " << mempool[index].id << ": got " << got << ", bound " << want;
    throw InvariantViolation(invariant, os.str());
}

} // namespace

RawMarginals compute_phat(const Mempool& mempool, const GameParams& params, Execution exec)
{
    require_solvable(mempool, params);
    if (!mempool.unit_sizes()) {
        throw ValidationError("fixed-size marginals need every transaction size to be 1");
    }
    return raw_from_sizes(mempool, params, exec);
}

RawMarginals compute_phat_real(const Mempool& mempool, const GameParams& params, Execution exec)
{
    require_solvable(mempool, params);
    return raw_from_sizes(mempool, params, exec);
}

double clamped_mass(std::span<const double> raw, std::span<const double> sizes, double x, Execution exec)
{
    return exec == Execution::parallel ? kernels::clamped_mass(raw, sizes, x)
                                       : reference::clamped_mass(raw, sizes, x);
}

double solve_xhat(std::span<const double> raw, std::span<const double> sizes, double k, Execution exec)
{
    if (raw.empty()) throw ValidationError("empty mempool");
    if (raw.size() != sizes.size()) throw ValidationError("marginal and size vectors differ in length");
    const double tol = 1e-12 * std::max(1.0, k);
    const double total = exec == Execution::parallel ? kernels::sum(sizes) : reference::sum(sizes);
    if (total <= k + tol) throw MempoolFitsInBlock();

    const std::size_t m = raw.size();
    std::vector<double> breaks(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
        breaks[j] = raw[j];
        breaks[j + m] = raw[j] - 1.0;
    }
    std::sort(breaks.begin(), breaks.end());

    // f(breaks.front()) == total > k and f(breaks.back()) == 0 < k.
    std::size_t lo = 0;
    std::size_t hi = breaks.size() - 1;
    while (lo + 1 != hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (clamped_mass(raw, sizes, breaks[mid], exec) > k + tol) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // f is linear on [breaks[lo], breaks[hi]], strictly above k at the left
    // end, so the root in this segment is the smallest root overall.
    const double left = breaks[lo];
    const double right = breaks[hi];
    const double slope = slope_at(raw, sizes, 0.5 * (left + right), exec);
    if (!(slope > 0.0)) return right;
    const double x = left + (clamped_mass(raw, sizes, left, exec) - k) / slope;
    return std::clamp(x, left, right);
}

MarginalProfile clamp_marginals(const RawMarginals& raw, double xhat, const Mempool& mempool,
                                const GameParams& params, Execution exec)
{
    if (raw.values.size() != mempool.size()) throw ValidationError("raw marginals do not match mempool");
    MarginalProfile profile;
    profile.values.resize(raw.values.size());
    if (exec == Execution::parallel) {
        kernels::fill_clamped(raw.values, xhat, profile.values);
    } else {
        reference::fill_clamped(raw.values, xhat, profile.values);
    }
    profile.xhat = xhat;
    profile.w = std::exp(raw.log_constant + params.lambda * xhat);
    check_profile(profile, mempool, params);
    return profile;
}

Equilibrium solve_equilibrium(const Mempool& mempool, const GameParams& params, SizeMode mode, Execution exec)
{
    validate_params(params, mode);
    Equilibrium eq;
    eq.raw = mode == SizeMode::fixed ? compute_phat(mempool, params, exec) : compute_phat_real(mempool, params, exec);
    try {
        const double xhat = solve_xhat(eq.raw.values, mempool.sizes(), params.k, exec);
        eq.profile = clamp_marginals(eq.raw, xhat, mempool, params, exec);
    } catch (const MempoolFitsInBlock&) {
        // Every threshold x <= min(raw) - 1 clamps all marginals to 1; report
        // the largest such x so that w is the tightest valid threshold.
        const double xhat = *std::min_element(eq.raw.values.begin(), eq.raw.values.end()) - 1.0;
        eq.profile.values.assign(mempool.size(), 1.0);
        eq.profile.xhat = xhat;
        eq.profile.w = std::exp(eq.raw.log_constant + params.lambda * xhat);
        eq.profile.package_all = true;
        check_profile(eq.profile, mempool, params);
    }
    return eq;
}

void check_profile(const MarginalProfile& profile, const Mempool& mempool, const GameParams& params)
{
    if (profile.values.size() != mempool.size()) {
        throw InvariantViolation("profile-size", "profile and mempool differ in length");
    }
    const auto sizes = mempool.sizes();
    NeumaierSum budget;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double p = profile.values[i];
        if (!(p >= 0.0 && p <= 1.0)) violated("marginal-in-unit-interval", i, mempool, p, 1.0);
        budget.add(sizes[i] * p);
    }
    if (!profile.package_all &&
        std::fabs(budget.value() - params.k) > kIdentityTol * std::max(1.0, params.k)) {
        std::ostringstream os;
        os.precision(17);
        os << "sum of size * p = " << budget.value() << ", capacity " << params.k;
        throw InvariantViolation("budget-identity", os.str());
    }

    const double w = profile.w;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double p = profile.values[i];
        const double discounted = mempool[i].gas_price * std::exp(-params.lambda * p);
        if (p == 0.0) {
            if (discounted > w * (1.0 + kIdentityTol)) violated("threshold-zero-case", i, mempool, discounted, w);
        } else if (p == 1.0) {
            if (discounted < w * (1.0 - kIdentityTol)) violated("threshold-one-case", i, mempool, discounted, w);
        } else if (std::fabs(discounted - w) > kIdentityTol * w) {
            violated("threshold-interior-case", i, mempool, discounted, w);
        }
    }
}

} // namespace txpack
