// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_NUMERIC_H
#define TXPACK_NUMERIC_H

#include <cmath>
#include <span>

namespace txpack {

/// Neumaier-compensated running sum.
class NeumaierSum {
public:
    void add(double x) noexcept
    {
        const double t = m_sum + x;
        if (std::fabs(m_sum) >= std::fabs(x)) {
            m_comp += (m_sum - t) + x;
        } else {
            m_comp += (x - t) + m_sum;
        }
        m_sum = t;
    }

    double value() const noexcept { return m_sum + m_comp; }

private:
    double m_sum{0.0};
    double m_comp{0.0};
};

inline double compensated_sum(std::span<const double> xs) noexcept
{
    NeumaierSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

} // namespace txpack

#endif // TXPACK_NUMERIC_H
