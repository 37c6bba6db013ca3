// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_RNG_H
#define TXPACK_RNG_H

#include <cstdint>
#include <random>
#include <string_view>

namespace txpack {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a, used to key substreams by strategy label.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/**
 * Seeded generator with platform-independent output.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. The standard distributions are not, so uniform, bounded and
 * Poisson variates are derived here from raw engine words:
 *  - uniform(): top 53 bits scaled by 2^-53, in [0, 1);
 *  - below(n): Lemire's multiply-shift with rejection;
 *  - poisson(lambda): sequential inversion for lambda <= 10, Hormann's
 *    PTRS transformed rejection above.
 *
 * Substream rule: substream(master, stream) seeds the engine with
 * splitmix64(splitmix64(master) + stream).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    static Rng substream(std::uint64_t master, std::uint64_t stream);

    std::uint64_t next() { return m_engine(); }
    double uniform();
    std::uint64_t below(std::uint64_t n);
    std::uint64_t poisson(double lambda);

private:
    std::mt19937_64 m_engine;
};

} // namespace txpack

#endif // TXPACK_RNG_H
