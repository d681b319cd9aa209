#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "declab/error.hpp"
#include "declab/gf2.hpp"
#include "declab/rng.hpp"

namespace declab {

/// Quantized log-likelihood ratios, LLR = log P(bit=0)/P(bit=1). Values are
/// integer quantizer codes in [-(2^(q-1)-1), +(2^(q-1)-1)]; positive means
/// bit 0 is more likely. The channel quantizer is mid-rise and never emits
/// 0; a zero value can still be constructed directly (total erasure) and
/// hard-decides to bit 0.
struct LlrVector {
    std::vector<int> values;
    int resolution_bits = 5;

    std::size_t size() const { return values.size(); }

    int max_level() const { return (1 << (resolution_bits - 1)) - 1; }

    static LlrVector zeros(std::size_t n, int resolution_bits = 5) {
        return {std::vector<int>(n, 0), resolution_bits};
    }

    bool operator==(const LlrVector& o) const {
        return resolution_bits == o.resolution_bits && values == o.values;
    }
};

inline BitVector hard_decision(const LlrVector& llr) {
    BitVector r(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i)
        if (llr.values[i] < 0) r.set(i, 1);  // v >= 0 decides bit 0
    return r;
}

/// Saturated LLRs of a codeword, as an error-free channel would emit them.
inline LlrVector noiseless_llr(const BitVector& c, int resolution_bits = 5) {
    LlrVector llr{std::vector<int>(c.size()), resolution_bits};
    int top = llr.max_level();
    for (std::size_t i = 0; i < c.size(); ++i) llr.values[i] = c.get(i) ? -top : top;
    return llr;
}

enum class ChannelKind { bsc, bpsk_awgn };

struct ChannelModel {
    ChannelKind kind = ChannelKind::bsc;
    double crossover_p = 0.0;  // bsc
    double ebn0_db = 0.0;      // bpsk-awgn
    double code_rate = 1.0;    // k/n, used to set the AWGN noise variance
    int llr_resolution_bits = 5;

    static ChannelModel bsc(double p) {
        if (!(p >= 0.0 && p <= 0.5))
            throw ConfigError("ChannelModel: crossover_p must be in [0, 0.5]");
        ChannelModel ch;
        ch.kind = ChannelKind::bsc;
        ch.crossover_p = p;
        return ch;
    }

    static ChannelModel bpsk_awgn(double ebn0_db, double code_rate, int llr_bits = 5) {
        if (!std::isfinite(ebn0_db)) throw ConfigError("ChannelModel: ebn0_db must be finite");
        ChannelModel ch;
        ch.kind = ChannelKind::bpsk_awgn;
        ch.ebn0_db = ebn0_db;
        ch.code_rate = code_rate;
        ch.llr_resolution_bits = llr_bits;
        return ch;
    }

    /// Per-dimension noise variance for BPSK at this Eb/N0 and code rate.
    double noise_variance() const {
        return 1.0 / (2.0 * code_rate * std::pow(10.0, ebn0_db / 10.0));
    }
};

/// BSC transmission. Returns the received vector and the true error vector
/// so experiments can keep ground truth without re-deriving it.
inline std::pair<BitVector, BitVector> transmit_hard(const ChannelModel& ch,
                                                     const BitVector& c, RandomStream& rng) {
    if (ch.kind != ChannelKind::bsc)
        throw ConfigError("transmit_hard: channel kind must be bsc");
    BitVector e(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (rng.bernoulli(ch.crossover_p)) e.set(i, 1);
    return {c ^ e, e};
}

/// BPSK over AWGN with quantized LLR output. Bit 0 maps to +1, bit 1 to -1;
/// LLR = (2/sigma^2)·y, quantized mid-rise with saturation. The step is
/// sized so the mean noiseless LLR magnitude plus four LLR standard
/// deviations lands on the top level.
inline LlrVector transmit_soft(const ChannelModel& ch, const BitVector& c, RandomStream& rng) {
    if (ch.kind != ChannelKind::bpsk_awgn)
        throw ConfigError("transmit_soft: channel kind must be bpsk-awgn");
    double var = ch.noise_variance();
    double sigma = std::sqrt(var);
    double llr_mean = 2.0 / var;
    double llr_sigma = 2.0 / sigma;
    int top = (1 << (ch.llr_resolution_bits - 1)) - 1;
    double step = (llr_mean + 4.0 * llr_sigma) / top;

    LlrVector out{std::vector<int>(c.size()), ch.llr_resolution_bits};
    for (std::size_t i = 0; i < c.size(); ++i) {
        double y = (c.get(i) ? -1.0 : 1.0) + sigma * rng.gaussian();
        double llr = 2.0 * y / var;
        int level = static_cast<int>(std::abs(llr) / step) + 1;  // mid-rise, no zero code
        if (level > top) level = top;
        out.values[i] = llr < 0.0 ? -level : level;
    }
    return out;
}

/// Attacker-side transmission of c ⊕ e_sup, with the natural channel
/// overpowered down to a small residual flip probability.
inline BitVector inject_superficial_error(const BitVector& c, const BitVector& e_sup,
                                          double residual_p, RandomStream& rng) {
    if (c.size() != e_sup.size())
        throw DimensionError("inject_superficial_error: length mismatch");
    BitVector r = c ^ e_sup;
    if (residual_p > 0.0) {
        for (std::size_t i = 0; i < r.size(); ++i)
            if (rng.bernoulli(residual_p)) r.flip(i);
    }
    return r;
}

}  // namespace declab
