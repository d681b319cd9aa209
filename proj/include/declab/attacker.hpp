#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "declab/channel.hpp"
#include "declab/codes.hpp"
#include "declab/decoders.hpp"
#include "declab/envelope.hpp"
#include "declab/error.hpp"
#include "declab/rng.hpp"
#include "declab/trojans.hpp"

namespace declab {

/// Attacker-side strategy description used by the sweep harness.
struct AttackPlan {
    enum class Kind { sequence_broadcast, superficial_error, fs_signaling };
    Kind kind = Kind::fs_signaling;
    std::vector<BitVector> target_messages;  // sequence-broadcast payload
    BitVector e_sup;                         // superficial-error payload
    std::string fs_payload;                  // fs-signaling payload (f/s)
    int repetition = 1;                      // fs-signaling repetition factor R
    double traffic_ebn0_db = 8.0;            // SNR regime of cover traffic / decoys
};

/// The 5-codeword broadcast of Case I: the target messages encoded in
/// order, transmitted clean (the attacker controls the channel).
inline std::vector<BitVector> craft_sequence_attack(const LinearCode& code,
                                                    const std::vector<BitVector>& targets) {
    if (targets.empty()) throw ConfigError("craft_sequence_attack: no target messages");
    std::vector<BitVector> blocks;
    blocks.reserve(targets.size());
    for (const auto& m : targets) blocks.push_back(encode(code, m));  // length-checked
    return blocks;
}

/// Inputs that force a deterministic decode outcome for a given decoder.
struct ForcingInputs {
    DecoderInput fail_input;
    DecoderInput success_input;
};

/// Find a guaranteed-failure and a guaranteed-success input for the
/// decoder. Soft decoders fail deterministically on an all-zero LLR vector
/// (total erasure); hard decoders are searched exhaustively, and a code
/// whose decoder can never fail (a perfect code under ML or
/// bounded-distance decoding) is reported as a configuration error.
inline ForcingInputs find_forcing_inputs(const LinearCode& code, const DecoderSpec& spec) {
    if (spec.wants_soft_input()) {
        LlrVector fail = LlrVector::zeros(code.n);
        LlrVector success = noiseless_llr(encode(code, BitVector(code.k)));
        if (decode_any(code, spec, fail).ok() || !decode_any(code, spec, success).ok())
            throw ConfigError("find_forcing_inputs: soft forcing inputs did not verify");
        return {std::move(fail), std::move(success)};
    }
    if (code.n > 24)
        throw ConfigError("find_forcing_inputs: exhaustive search infeasible for n > 24");
    BitVector success = encode(code, BitVector(code.k));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << code.n); ++x) {
        BitVector r(code.n);
        for (std::size_t i = 0; i < code.n; ++i)
            if ((x >> i) & 1u) r.set(i, 1);
        if (!decode_any(code, spec, r).ok()) return {std::move(r), std::move(success)};
    }
    throw ConfigError("find_forcing_inputs: no failure-inducing input exists for " +
                      code.name + " with this decoder");
}

/// Expand an f/s payload with repetition coding: every symbol becomes R
/// consecutive blocks that force that outcome on the inner decoder.
inline std::vector<DecoderInput> craft_fs_signal(std::string_view pattern, int repetition,
                                                 const LinearCode& code,
                                                 const DecoderSpec& spec) {
    if (repetition < 1) throw ConfigError("craft_fs_signal: repetition must be >= 1");
    ForcingInputs forcing = find_forcing_inputs(code, spec);
    std::vector<DecoderInput> blocks;
    blocks.reserve(pattern.size() * static_cast<std::size_t>(repetition));
    for (char sym : pattern) {
        if (sym != 'f' && sym != 's')
            throw ConfigError("craft_fs_signal: pattern must contain only f and s");
        const DecoderInput& block = sym == 'f' ? forcing.fail_input : forcing.success_input;
        for (int i = 0; i < repetition; ++i) blocks.push_back(block);
    }
    return blocks;
}

/// What the malicious decoder could reconstruct from its observed slot
/// stream. recovered uses 'f'/'s' plus 'e' for an erased (undecidable)
/// window; an erasure never matches the intended payload.
struct RecoveryReport {
    std::string recovered;
    std::vector<double> per_symbol_confidence;
    bool match = false;
};

/// Collapse an observed f/s/I slot stream back to the payload, one window
/// of R slots per symbol. Without decoys any observed symbol is genuine,
/// so one sighting decides the window; with decoys a majority vote over
/// the non-idle symbols is taken and ties erase.
inline RecoveryReport recover_fs_message(std::string_view observed, int repetition,
                                         bool decoy_aware,
                                         std::string_view expected_payload = {}) {
    if (repetition < 1) throw ConfigError("recover_fs_message: repetition must be >= 1");
    if (observed.size() % static_cast<std::size_t>(repetition) != 0)
        throw DimensionError("recover_fs_message: stream length not a multiple of R");
    RecoveryReport report;
    std::size_t windows = observed.size() / static_cast<std::size_t>(repetition);
    report.recovered.reserve(windows);
    for (std::size_t w = 0; w < windows; ++w) {
        int n_f = 0, n_s = 0;
        for (int j = 0; j < repetition; ++j) {
            char c = observed[w * repetition + j];
            if (c == 'f') ++n_f;
            else if (c == 's') ++n_s;
        }
        char decided;
        if (!decoy_aware)
            decided = n_f > 0 ? 'f' : (n_s > 0 ? 's' : 'e');
        else
            decided = n_f > n_s ? 'f' : (n_s > n_f ? 's' : 'e');
        report.recovered.push_back(decided);
        int votes = n_f + n_s;
        int agree = decided == 'f' ? n_f : (decided == 's' ? n_s : 0);
        report.per_symbol_confidence.push_back(votes ? static_cast<double>(agree) / votes
                                                     : 0.0);
    }
    if (!expected_payload.empty()) report.match = (report.recovered == expected_payload);
    return report;
}

struct SweepPoint {
    int num_decoders = 1;
    double decoy_rate = 0.0;
    int repetition = 1;
    std::uint64_t trials = 0;
    double recovery_rate = 0.0;
    double ci95 = 0.0;
};

struct SweepGrid {
    std::vector<int> num_decoders = {1, 2, 4};
    std::vector<double> decoy_rates = {0.0, 0.25, 0.5, 0.75, 1.0};
};

/// Monte-Carlo sweep of full-message recovery probability over the
/// (num_decoders, decoy_rate) grid for an fs-signaling plan. Decoder 0 is
/// the malicious observer; decoys are fresh traffic at the plan's SNR so
/// their outcome statistics match genuine blocks.
inline std::vector<SweepPoint> attack_success_sweep(const AttackPlan& plan,
                                                    const SweepGrid& grid,
                                                    const DispatchPolicy& base_policy,
                                                    std::uint64_t trials,
                                                    const LinearCode& code,
                                                    const DecoderSpec& spec,
                                                    std::uint64_t master_seed) {
    if (plan.kind != AttackPlan::Kind::fs_signaling)
        throw ConfigError("attack_success_sweep: plan kind must be fs-signaling");
    if (!spec.wants_soft_input())
        throw ConfigError("attack_success_sweep: decoy traffic is soft; use a soft decoder");

    std::vector<DecoderInput> stream =
        craft_fs_signal(plan.fs_payload, plan.repetition, code, spec);
    ChannelModel traffic = ChannelModel::bpsk_awgn(plan.traffic_ebn0_db, code.rate());
    auto make_decoy = [&](RandomStream& r) -> DecoderInput {
        return transmit_soft(traffic, random_codeword(code, r).second, r);
    };

    std::vector<SweepPoint> table;
    std::uint64_t point_id = 0;
    for (int q : grid.num_decoders) {
        for (double decoy_rate : grid.decoy_rates) {
            DispatchPolicy policy = base_policy;
            policy.num_decoders = q;
            policy.decoy_rate = decoy_rate;
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < trials; ++t) {
                RandomStream rng = RandomStream::for_trial(master_seed, point_id, t);
                std::vector<TrojanedDecoder> decoders(static_cast<std::size_t>(q));
                for (auto& d : decoders) {
                    d.code = &code;
                    d.spec = spec;
                }
                decoders[0].state = make_case3_trojan(plan.fs_payload);
                dispatch_decode(policy, decoders, stream, make_decoy, rng);
                RecoveryReport rep =
                    recover_fs_message(decoders[0].state.timing_history, plan.repetition,
                                       decoy_rate > 0.0, plan.fs_payload);
                if (rep.match) ++hits;
            }
            double rate = trials ? static_cast<double>(hits) / trials : 0.0;
            double ci = trials ? 1.96 * std::sqrt(rate * (1.0 - rate) / trials) : 0.0;
            table.push_back({q, decoy_rate, plan.repetition, trials, rate, ci});
            ++point_id;
        }
    }
    return table;
}

}  // namespace declab
