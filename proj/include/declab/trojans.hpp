#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "declab/channel.hpp"
#include "declab/codes.hpp"
#include "declab/decoders.hpp"
#include "declab/error.hpp"

namespace declab {

/// One slot as seen by a decoder instance: a failed decode, a successful
/// decode, or an idle slot (no decode issued).
enum class OutcomeSymbol : char { failure = 'f', success = 's', idle = 'I' };

/// The 88-symbol trigger sequence used in the failure/success examples:
/// fsfsffssfffsssffffssss repeated four times (44 f, 44 s).
inline const std::string kFsTriggerPattern = [] {
    std::string base = "fsfsffssfffsssffffssss";
    std::string p;
    for (int i = 0; i < 4; ++i) p += base;
    return p;
}();

enum class TrojanKind { none, case1, case2, case3 };

/// Trigger-memory retention across power cycles. Volatile memory clears on
/// any power-off; capacitive memory survives idles shorter than hold_us.
struct Retention {
    bool capacitive = false;
    double hold_us = 0.0;

    static Retention volatile_memory() { return {}; }
    static Retention capacitive_memory(double hold_us) { return {true, hold_us}; }
};

/// Persistent trigger state of one malicious decoder instance. Owned by
/// exactly one decoder; never shared across concurrent trials.
struct TrojanState {
    TrojanKind kind = TrojanKind::none;

    // case1: trigger on N consecutive successfully decoded messages
    std::vector<BitVector> target_messages;
    std::deque<BitVector> recent_messages;

    // case2: trigger when the visible error vector equals the target
    BitVector target_error;

    // case3: trigger on a run of failure/success symbols
    std::string target_pattern;
    std::deque<char> recent_symbols;  // plain matcher window, f/s only
    std::string timing_history;       // timing-aware log, f/s/I per slot

    Retention retention;

    bool activated = false;           // latched; models physical damage
    std::uint64_t match_count = 0;    // trigger comparisons that matched
    std::uint64_t decode_count = 0;
    std::uint64_t symbol_count = 0;   // non-idle symbols seen (case3)
    std::uint64_t activation_at = 0;  // decode (case1/2) or symbol (case3) index
};

inline TrojanState make_case1_trojan(std::vector<BitVector> targets,
                                     Retention retention = {}) {
    if (targets.empty()) throw ConfigError("case1 trojan: empty target sequence");
    TrojanState t;
    t.kind = TrojanKind::case1;
    t.target_messages = std::move(targets);
    t.retention = retention;
    return t;
}

inline TrojanState make_case2_trojan(BitVector e_sup, Retention retention = {}) {
    TrojanState t;
    t.kind = TrojanKind::case2;
    t.target_error = std::move(e_sup);
    t.retention = retention;
    return t;
}

inline TrojanState make_case3_trojan(std::string pattern, Retention retention = {}) {
    for (char c : pattern)
        if (c != 'f' && c != 's')
            throw ConfigError("case3 trojan: pattern must contain only f and s");
    if (pattern.empty()) throw ConfigError("case3 trojan: empty target pattern");
    TrojanState t;
    t.kind = TrojanKind::case3;
    t.target_pattern = std::move(pattern);
    t.retention = retention;
    return t;
}

inline TrojanState make_clean_observer() { return TrojanState{}; }

namespace detail {

inline void trigger(TrojanState& state, std::uint64_t at) {
    ++state.match_count;
    if (!state.activated) {
        state.activated = true;
        state.activation_at = at;
    }
}

}  // namespace detail

/// Feed one slot symbol to a case3 trigger's timing-aware history. Idle
/// symbols are recorded but do not advance the plain shift-register
/// matcher; decode symbols advance both.
inline void observe_timing(TrojanState& state, OutcomeSymbol symbol) {
    if (state.kind != TrojanKind::case3)
        throw ConfigError("observe_timing: trojan kind is not case3");
    char c = static_cast<char>(symbol);
    state.timing_history.push_back(c);
    if (symbol == OutcomeSymbol::idle) return;
    ++state.symbol_count;
    state.recent_symbols.push_back(c);
    if (state.recent_symbols.size() > state.target_pattern.size())
        state.recent_symbols.pop_front();
    if (state.recent_symbols.size() == state.target_pattern.size() &&
        std::equal(state.recent_symbols.begin(), state.recent_symbols.end(),
                   state.target_pattern.begin()))
        detail::trigger(state, state.symbol_count);
}

/// Run the inner decoder and update the trigger memory. The returned
/// outcome is always bit-identical to calling the inner decoder directly:
/// the Trojan is stealthy until its physical payload fires, and even then
/// decoding output is unchanged (activation is a latched flag here).
inline DecodeOutcome trojan_decode(TrojanState& state, const LinearCode& code,
                                   const DecoderSpec& inner, const DecoderInput& input) {
    DecodeOutcome outcome = decode_any(code, inner, input);
    ++state.decode_count;
    switch (state.kind) {
        case TrojanKind::none:
            break;
        case TrojanKind::case1:
            if (outcome.ok()) {
                state.recent_messages.push_back(outcome.message);
                if (state.recent_messages.size() > state.target_messages.size())
                    state.recent_messages.pop_front();
                if (state.recent_messages.size() == state.target_messages.size() &&
                    std::equal(state.recent_messages.begin(), state.recent_messages.end(),
                               state.target_messages.begin()))
                    detail::trigger(state, state.decode_count);
            }
            break;
        case TrojanKind::case2:
            // The Trojan sees only the decoder's own input and output, so it
            // reconstructs the error vector as hard(input) + re-encoded output.
            // A failed decode yields no codeword, so matching is skipped.
            if (outcome.ok()) {
                const BitVector* hard = std::get_if<BitVector>(&input);
                BitVector h = hard ? *hard : hard_decision(std::get<LlrVector>(input));
                if ((h ^ encode(code, outcome.message)) == state.target_error)
                    detail::trigger(state, state.decode_count);
            }
            break;
        case TrojanKind::case3:
            observe_timing(state, outcome.ok() ? OutcomeSymbol::success
                                               : OutcomeSymbol::failure);
            break;
    }
    return outcome;
}

/// Power the decoder off for idle_us simulated microseconds. Volatile
/// trigger memory always clears; capacitive memory clears only when the
/// idle is at least the hold time. The activated latch survives: it models
/// physical damage already done.
inline void power_cycle(TrojanState& state, double idle_us) {
    bool cleared = !state.retention.capacitive || idle_us >= state.retention.hold_us;
    if (!cleared) return;
    state.recent_messages.clear();
    state.recent_symbols.clear();
    state.timing_history.clear();
}

/// Explicit experiment reset: fresh trigger memory and a cleared latch.
inline void reset_trojan(TrojanState& state) {
    state.recent_messages.clear();
    state.recent_symbols.clear();
    state.timing_history.clear();
    state.activated = false;
    state.match_count = 0;
    state.decode_count = 0;
    state.symbol_count = 0;
    state.activation_at = 0;
}

/// A decoder instance as dispatch sees it: decodes real or decoy blocks,
/// and is told about its idle slots. `observed` is the lab-side ground
/// truth log of what this instance saw (f/s/I per slot).
struct TrojanedDecoder {
    const LinearCode* code = nullptr;
    DecoderSpec spec;
    TrojanState state;
    std::string observed;

    DecodeOutcome decode(const DecoderInput& input) {
        DecodeOutcome o = trojan_decode(state, *code, spec, input);
        observed.push_back(o.ok() ? 's' : 'f');
        return o;
    }

    void idle() {
        observed.push_back('I');
        if (state.kind == TrojanKind::case3) observe_timing(state, OutcomeSymbol::idle);
    }
};

}  // namespace declab
