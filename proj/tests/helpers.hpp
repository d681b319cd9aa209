#pragma once

// Test-side oracles, kept independent of the library's decode paths: the
// brute-force searches here only use BitVector arithmetic and the codebook.

#include <cstdint>
#include <optional>
#include <vector>

#include "declab/declab.hpp"

namespace oracle {

using namespace declab;

// nearest-codeword search by Hamming distance; nullopt on a tie
inline std::optional<std::uint64_t> nearest_codeword(const LinearCode& code,
                                                     const BitVector& r) {
    const auto& book = *code.codebook;
    std::size_t best = code.n + 1;
    std::uint64_t best_i = 0;
    int ties = 0;
    for (std::uint64_t i = 0; i < book.size(); ++i) {
        std::size_t d = 0;
        for (std::size_t j = 0; j < code.n; ++j) d += book[i].get(j) != r.get(j);
        if (d < best) {
            best = d;
            best_i = i;
            ties = 1;
        } else if (d == best) {
            ++ties;
        }
    }
    if (ties > 1) return std::nullopt;
    return best_i;
}

// max-correlation search; nullopt on a tie
inline std::optional<std::uint64_t> best_correlation(const LinearCode& code,
                                                     const LlrVector& llr) {
    const auto& book = *code.codebook;
    long long best = 0;
    std::uint64_t best_i = 0;
    int ties = 0;
    bool first = true;
    for (std::uint64_t i = 0; i < book.size(); ++i) {
        long long corr = 0;
        for (std::size_t j = 0; j < code.n; ++j)
            corr += book[i].get(j) ? -(long long)llr.values[j] : (long long)llr.values[j];
        if (first || corr > best) {
            best = corr;
            best_i = i;
            ties = 1;
            first = false;
        } else if (corr == best) {
            ++ties;
        }
    }
    if (ties > 1) return std::nullopt;
    return best_i;
}

inline BitVector bits_of(std::uint64_t x, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((x >> i) & 1u) v.set(i, 1);
    return v;
}

inline LlrVector random_llr(std::size_t n, RandomStream& rng, int q = 5) {
    LlrVector llr{std::vector<int>(n), q};
    int top = llr.max_level();
    for (auto& v : llr.values)
        v = static_cast<int>(rng.uniform_below(2 * top + 1)) - top;
    return llr;
}

// zero-free, like anything the mid-rise channel quantizer emits
inline LlrVector random_llr_nonzero(std::size_t n, RandomStream& rng, int q = 5) {
    LlrVector llr{std::vector<int>(n), q};
    int top = llr.max_level();
    for (auto& v : llr.values) {
        int mag = 1 + static_cast<int>(rng.uniform_below(top));
        v = rng.bit() ? -mag : mag;
    }
    return llr;
}

}  // namespace oracle
