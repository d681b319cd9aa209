#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "declab/channel.hpp"
#include "declab/codes.hpp"
#include "declab/decoders.hpp"
#include "declab/error.hpp"
#include "declab/rng.hpp"

namespace declab {

/// A random message and its codeword, the unit of codeword masking.
struct MaskPair {
    BitVector m_x;  // length k
    BitVector c_x;  // length n, == encode(m_x)
};

inline MaskPair draw_mask(const LinearCode& code, RandomStream& rng) {
    auto [m, c] = random_codeword(code, rng);
    return {std::move(m), std::move(c)};
}

/// r' = r ⊕ c_x. Shifts the codeword, leaves the error vector untouched.
inline BitVector mask_hard(const BitVector& r, const MaskPair& mask) {
    if (r.size() != mask.c_x.size()) throw DimensionError("mask_hard: length mismatch");
    return r ^ mask.c_x;
}

/// Soft-domain mask: flip the LLR sign wherever c_x has a 1. Magnitudes are
/// bit-identical, so any decoder that treats codewords equally sees the
/// same reliability profile.
inline LlrVector mask_soft(const LlrVector& llr, const MaskPair& mask) {
    if (llr.size() != mask.c_x.size()) throw DimensionError("mask_soft: length mismatch");
    LlrVector out = llr;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (mask.c_x.get(i)) out.values[i] = -out.values[i];
    return out;
}

inline BitVector unmask_message(const BitVector& shifted, const MaskPair& mask) {
    if (shifted.size() != mask.m_x.size())
        throw DimensionError("unmask_message: length mismatch");
    return shifted ^ mask.m_x;
}

inline DecoderInput mask_input(const DecoderInput& input, const MaskPair& mask) {
    if (const auto* bits = std::get_if<BitVector>(&input)) return mask_hard(*bits, mask);
    return mask_soft(std::get<LlrVector>(input), mask);
}

/// Wrap one decode in a fresh codeword mask: mask the input, run the inner
/// decoder, shift the message back. The inner decoder never sees real
/// traffic; by the codeword-shift property the delivered outcome matches a
/// direct decode.
template <class DecodeFn>
DecodeOutcome enveloped_decode(const LinearCode& code, DecodeFn&& inner,
                               const DecoderInput& input, RandomStream& rng) {
    MaskPair mask = draw_mask(code, rng);
    DecodeOutcome outcome = inner(mask_input(input, mask));
    if (outcome.ok()) outcome.message = unmask_message(outcome.message, mask);
    return outcome;
}

/// Add zero-mean Gaussian dither (in quantizer-code units) and re-clamp to
/// the LLR range. Sign flips are the point: they scramble the error vector
/// a malicious decoder can extract.
inline LlrVector dither_llr(const LlrVector& llr, double sigma, RandomStream& rng) {
    LlrVector out = llr;
    int top = out.max_level();
    for (auto& v : out.values) {
        long d = std::lround(static_cast<double>(v) + sigma * rng.gaussian());
        v = static_cast<int>(std::clamp<long>(d, -top, top));
    }
    return out;
}

/// Retry-with-dither decoding. Every trial decodes a freshly dithered copy
/// of the input (sigma 0 degenerates to a single plain decode); the first
/// success is returned, failure only if all trials fail.
///
/// Dither is applied on the first trial too: a trial the inner decoder
/// sees undithered is a trial a Trojan reads undithered, which would make
/// the countermeasure vacuous whenever the first decode succeeds.
template <class DecodeFn>
DecodeOutcome dithered_decode(DecodeFn&& inner, const LlrVector& llr, int trials,
                              double dither_sigma, RandomStream& rng) {
    if (trials < 1) trials = 1;
    DecodeOutcome last;
    for (int t = 0; t < trials; ++t) {
        DecodeOutcome o =
            dither_sigma > 0.0 ? inner(dither_llr(llr, dither_sigma, rng)) : inner(llr);
        if (o.ok()) return o;
        last = o;
        if (dither_sigma <= 0.0) break;  // retries would repeat the same decode
    }
    return last;
}

/// Redundant-dispatch policy: how many decoder instances, how often an
/// idle instance gets a decoy decode, and the capacity of the input
/// reorder stack (0 = disabled).
struct DispatchPolicy {
    int num_decoders = 1;
    double decoy_rate = 0.0;
    int reorder_depth = 0;

    void validate() const {
        if (num_decoders < 1) throw ConfigError("DispatchPolicy: num_decoders must be >= 1");
        if (decoy_rate < 0.0 || decoy_rate > 1.0)
            throw ConfigError("DispatchPolicy: decoy_rate must be in [0, 1]");
        if (reorder_depth < 0) throw ConfigError("DispatchPolicy: reorder_depth must be >= 0");
    }
};

/// Distribute a block stream over decoder instances. One slot per block:
/// the block goes to a uniformly random instance; every other instance
/// either runs a decoy decode (probability decoy_rate) or idles. With
/// reorder_depth > 0, blocks first pass through a random-pop stack, and
/// outcomes are restored to input order via their sequence tags.
///
/// Decoder needs .decode(const DecoderInput&) -> DecodeOutcome and .idle();
/// make_decoy(rng) must produce inputs statistically matching real traffic.
template <class Decoder, class DecoyGen>
std::vector<DecodeOutcome> dispatch_decode(const DispatchPolicy& policy,
                                           std::vector<Decoder>& decoders,
                                           const std::vector<DecoderInput>& inputs,
                                           DecoyGen&& make_decoy, RandomStream& rng) {
    policy.validate();
    if (static_cast<int>(decoders.size()) != policy.num_decoders)
        throw ConfigError("dispatch_decode: decoder count does not match policy");

    std::vector<DecodeOutcome> outcomes(inputs.size());
    auto dispatch_one = [&](std::size_t tag) {
        std::size_t chosen =
            decoders.size() > 1 ? rng.uniform_below(decoders.size()) : 0;
        for (std::size_t d = 0; d < decoders.size(); ++d) {
            if (d == chosen)
                outcomes[tag] = decoders[d].decode(inputs[tag]);
            else if (policy.decoy_rate > 0.0 && rng.bernoulli(policy.decoy_rate))
                decoders[d].decode(make_decoy(rng));
            else
                decoders[d].idle();
        }
    };

    if (policy.reorder_depth == 0) {
        for (std::size_t i = 0; i < inputs.size(); ++i) dispatch_one(i);
        return outcomes;
    }

    std::vector<std::size_t> stack;
    stack.reserve(static_cast<std::size_t>(policy.reorder_depth) + 1);
    auto pop_random = [&]() {
        std::size_t j = rng.uniform_below(stack.size());
        std::swap(stack[j], stack.back());
        std::size_t tag = stack.back();
        stack.pop_back();
        dispatch_one(tag);
    };
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        stack.push_back(i);
        if (stack.size() > static_cast<std::size_t>(policy.reorder_depth)) pop_random();
    }
    while (!stack.empty()) pop_random();
    return outcomes;
}

}  // namespace declab
