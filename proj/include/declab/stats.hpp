#pragma once

#include <cmath>
#include <cstdint>

#include "declab/gf2.hpp"

namespace declab {

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// 95% normal-approximation confidence half-width for a proportion.
inline double ci95_halfwidth(double p_hat, std::uint64_t n) {
    if (n == 0) return 0.0;
    return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

/// Monobit z-score: (ones - n/2) / sqrt(n/4). |z| <= 3 is the usual
/// 3-sigma acceptance for an i.i.d. fair bit stream.
inline double monobit_z(std::uint64_t ones, std::uint64_t n) {
    double mean = 0.5 * static_cast<double>(n);
    double sd = std::sqrt(0.25 * static_cast<double>(n));
    return (static_cast<double>(ones) - mean) / sd;
}

inline double monobit_z(const BitVector& bits) { return monobit_z(bits.weight(), bits.size()); }

/// Runs z-score via transitions: for fair i.i.d. bits the n-1 adjacent
/// transition indicators are themselves i.i.d. fair bits, so the count is
/// Binomial(n-1, 1/2).
inline double runs_z(const BitVector& bits) {
    std::size_t n = bits.size();
    if (n < 2) return 0.0;
    std::uint64_t transitions = 0;
    int prev = bits.get(0);
    for (std::size_t i = 1; i < n; ++i) {
        int cur = bits.get(i);
        transitions += static_cast<std::uint64_t>(cur != prev);
        prev = cur;
    }
    return monobit_z(transitions, n - 1);
}

}  // namespace declab
