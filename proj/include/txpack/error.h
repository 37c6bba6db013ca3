// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_ERROR_H
#define TXPACK_ERROR_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace txpack {

/// Malformed or out-of-contract input (bad mempool record, empty mempool,
/// zero latency, oversized brute-force instance, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed object broke one of its documented invariants. Carries the
/// invariant's name so callers can report it.
class InvariantViolation : public std::logic_error {
public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : std::logic_error(invariant + ": " + detail), m_invariant(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return m_invariant; }

private:
    std::string m_invariant;
};

/// Raised by the clamp solver when the whole mempool fits into one block
/// (total size <= k). The top-level solver turns this into the
/// package-everything profile.
class MempoolFitsInBlock : public std::runtime_error {
public:
    MempoolFitsInBlock() : std::runtime_error("mempool fits in block; package everything") {}
};

/// The rejection sampler ran out of attempts.
class SamplingBudgetExhausted : public std::runtime_error {
public:
    SamplingBudgetExhausted(std::size_t attempts, double below_cap_rate, double above_floor_rate);

    std::size_t attempts() const noexcept { return m_attempts; }
    /// Fraction of draws that respected the capacity cap.
    double below_cap_rate() const noexcept { return m_below_cap_rate; }
    /// Fraction of draws that reached the window's lower bound.
    double above_floor_rate() const noexcept { return m_above_floor_rate; }

private:
    std::size_t m_attempts;
    double m_below_cap_rate;
    double m_above_floor_rate;
};

} // namespace txpack

#endif // TXPACK_ERROR_H
