#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "declab/attacker.hpp"
#include "declab/channel.hpp"
#include "declab/codes.hpp"
#include "declab/decoders.hpp"
#include "declab/envelope.hpp"
#include "declab/error.hpp"
#include "declab/linkseal.hpp"
#include "declab/rng.hpp"
#include "declab/sim_report.hpp"
#include "declab/stats.hpp"
#include "declab/trojans.hpp"

namespace declab {

/// Log10 probability of observing an exact f/s sequence when each decode
/// fails independently with probability p_f. Exact in the log domain, so
/// million-symbol patterns do not underflow.
inline double sequence_log_probability(std::string_view pattern, double p_f) {
    if (!(p_f > 0.0 && p_f < 1.0))
        throw DomainError("sequence_log_probability: p_f must be in (0, 1)");
    std::uint64_t n_f = 0, n_s = 0;
    for (char c : pattern) {
        if (c == 'f') ++n_f;
        else if (c == 's') ++n_s;
        else throw DomainError("sequence_log_probability: pattern must contain only f and s");
    }
    constexpr double ln10 = 2.302585092994045684;
    return static_cast<double>(n_f) * std::log10(p_f) +
           static_cast<double>(n_s) * (std::log1p(-p_f) / ln10);
}

// ---------------------------------------------------------------------------
// Experiment configuration: flat key=value file plus command-line overrides.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string scenario;  // ber-baseline case1 case2 case3 link-demo seqprob

    std::string code_name = "hamming-7-4";
    std::string decoder = "";  // empty -> scenario default
    int bp_max_iterations = 30;

    std::string channel_kind = "";  // empty -> implied by decoder
    std::vector<double> bsc_p = {0.01};
    std::vector<double> ebn0_db = {5.0};
    int llr_bits = 5;
    double residual_p = 0.0;

    int dither_trials = 4;
    double dither_sigma = 2.0;

    int num_decoders = 1;
    double decoy_rate = 0.0;
    int reorder_depth = 0;
    std::vector<int> sweep_num_decoders = {1, 2, 4};
    std::vector<double> sweep_decoy_rates = {0.0, 0.25, 0.5, 0.75, 1.0};

    std::string case1_targets;  // comma-separated bit strings, empty -> default
    std::string case2_esup;     // bit string, empty -> weight-1 at position 0
    std::string case3_pattern;  // f/s string, empty -> 88-symbol trigger
    std::string retention = "volatile";  // volatile | capacitive:<hold_us>
    double idle_us = 0.0;
    bool power_cycle_each_block = false;

    int repetition = 10;
    double attacker_ebn0_db = 8.0;
    std::uint64_t fs_symbols = 100000;  // case3 part-b stream length

    std::string seq_pattern = kFsTriggerPattern;
    double seq_p_f = 1e-5;

    std::uint64_t seed_length = 1u << 20;
    std::string seal_mode = "seed-cyclic";
    std::uint64_t tap_bits = 1000000;

    std::uint64_t trials = 0;  // 0 -> scenario default
    std::uint64_t master_seed = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": \"" + v + "\"");
    }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        if (v.empty() || v[0] == '-') throw std::invalid_argument(v);
        unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": \"" + v + "\"");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("bad boolean value for " + key + ": \"" + v + "\"");
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& key, const std::string& v, Parse parse) {
    std::vector<T> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse(key, item));
    }
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

}  // namespace detail

/// Apply one "key = value" assignment. Unknown keys are configuration
/// errors so typos fail before any simulation runs.
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
    using namespace detail;
    if (key == "scenario") cfg.scenario = value;
    else if (key == "code") cfg.code_name = value;
    else if (key == "decoder") cfg.decoder = value;
    else if (key == "bp_max_iterations") cfg.bp_max_iterations = static_cast<int>(parse_u64(key, value));
    else if (key == "channel.kind") cfg.channel_kind = value;
    else if (key == "channel.bsc_p") cfg.bsc_p = parse_list<double>(key, value, parse_double);
    else if (key == "channel.ebn0_db") cfg.ebn0_db = parse_list<double>(key, value, parse_double);
    else if (key == "channel.llr_bits") cfg.llr_bits = static_cast<int>(parse_u64(key, value));
    else if (key == "channel.residual_p") cfg.residual_p = parse_double(key, value);
    else if (key == "envelope.dither_trials") cfg.dither_trials = static_cast<int>(parse_u64(key, value));
    else if (key == "envelope.dither_sigma") cfg.dither_sigma = parse_double(key, value);
    else if (key == "policy.num_decoders") cfg.num_decoders = static_cast<int>(parse_u64(key, value));
    else if (key == "policy.decoy_rate") cfg.decoy_rate = parse_double(key, value);
    else if (key == "policy.reorder_depth") cfg.reorder_depth = static_cast<int>(parse_u64(key, value));
    else if (key == "sweep.num_decoders")
        cfg.sweep_num_decoders = parse_list<int>(key, value, [](const std::string& k, const std::string& v) {
            return static_cast<int>(detail::parse_u64(k, v));
        });
    else if (key == "sweep.decoy_rates") cfg.sweep_decoy_rates = parse_list<double>(key, value, parse_double);
    else if (key == "trojan.case1_targets") cfg.case1_targets = value;
    else if (key == "trojan.case2_esup") cfg.case2_esup = value;
    else if (key == "trojan.case3_pattern") cfg.case3_pattern = value;
    else if (key == "trojan.retention") cfg.retention = value;
    else if (key == "trojan.idle_us") cfg.idle_us = parse_double(key, value);
    else if (key == "trojan.power_cycle_each_block") cfg.power_cycle_each_block = parse_bool(key, value);
    else if (key == "attack.repetition") cfg.repetition = static_cast<int>(parse_u64(key, value));
    else if (key == "attack.ebn0_db") cfg.attacker_ebn0_db = parse_double(key, value);
    else if (key == "attack.symbols") cfg.fs_symbols = parse_u64(key, value);
    else if (key == "seq.pattern") cfg.seq_pattern = value;
    else if (key == "seq.p_f") cfg.seq_p_f = parse_double(key, value);
    else if (key == "link.seed_length") cfg.seed_length = parse_u64(key, value);
    else if (key == "link.mode") cfg.seal_mode = value;
    else if (key == "link.tap_bits") cfg.tap_bits = parse_u64(key, value);
    else if (key == "trials") cfg.trials = parse_u64(key, value);
    else if (key == "seed") cfg.master_seed = parse_u64(key, value);
    else throw ConfigError("unknown key \"" + key + "\"");
}

inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("" + path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        apply_config_entry(cfg, detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1)));
    }
}

inline DecoderKind parse_decoder_kind(const std::string& name) {
    if (name == "ml-hard") return DecoderKind::ml_hard;
    if (name == "ml-soft") return DecoderKind::ml_soft;
    if (name == "bounded-distance") return DecoderKind::bounded_distance;
    if (name == "bp-minsum") return DecoderKind::bp_minsum;
    throw ConfigError("unknown decoder \"" + name + "\"");
}

inline Retention parse_retention(const std::string& s) {
    if (s == "volatile") return Retention::volatile_memory();
    if (s.rfind("capacitive:", 0) == 0)
        return Retention::capacitive_memory(
            detail::parse_double("trojan.retention", s.substr(11)));
    throw ConfigError("bad retention \"" + s +
                      "\" (volatile or capacitive:<hold_us>)");
}

// ---------------------------------------------------------------------------
// Scenario implementations. Every loop derives its RandomStream from
// (master_seed, stream_id, trial_index), so results do not depend on
// execution order and trials could run concurrently.
// ---------------------------------------------------------------------------

namespace scenario {

// stream ids, one namespace per experiment so substreams never collide
enum : std::uint64_t {
    kBerStream = 100,
    kCase1Mask = 201,
    kCase2Chan = 300,
    kCase2MaskPlain = 301,
    kCase2MaskDith = 302,
    kCase2Dither = 303,
    kCase3PartA = 401,
    kCase3PartB = 400,
    kLinkSeed = 500,
    kLinkRoundtrip = 501,
    kLinkMismatch = 503,
    kLinkPipeline = 504,
};

struct FrameCounts {
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t message_bits = 0;

    void add(const LinearCode& code, const BitVector& truth, const DecodeOutcome& out) {
        ++frames;
        message_bits += code.k;
        if (!out.ok()) {
            ++frame_errors;
            bit_errors += code.k;  // a lost frame counts all message bits
        } else if (out.message != truth) {
            ++frame_errors;
            bit_errors += hamming_distance(out.message, truth);
        }
    }

    double fer() const { return frames ? double(frame_errors) / double(frames) : 0.0; }
    double ber() const { return message_bits ? double(bit_errors) / double(message_bits) : 0.0; }
};

inline SimReport run_ber(const ExperimentConfig& cfg) {
    LinearCode code = build_named_code(cfg.code_name);
    std::string decoder_name = cfg.decoder.empty() ? "ml-hard" : cfg.decoder;
    DecoderSpec spec{parse_decoder_kind(decoder_name), cfg.bp_max_iterations};
    bool soft = spec.wants_soft_input();
    std::string channel_kind =
        cfg.channel_kind.empty() ? (soft ? "bpsk-awgn" : "bsc") : cfg.channel_kind;
    if (soft != (channel_kind == "bpsk-awgn"))
        throw ConfigError("ber-baseline: decoder " + decoder_name +
                          " needs channel kind " + (soft ? "bpsk-awgn" : "bsc"));
    std::uint64_t blocks = cfg.trials ? cfg.trials : 100000;

    SimReport report;
    report.scenario = "ber-baseline";
    report.columns = {"code", "decoder", "channel", "param", "blocks",
                      "ber",  "fer",     "ber_ci95", "fer_ci95"};
    const std::vector<double>& params = soft ? cfg.ebn0_db : cfg.bsc_p;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        ChannelModel ch = soft ? ChannelModel::bpsk_awgn(params[pi], code.rate(), cfg.llr_bits)
                               : ChannelModel::bsc(params[pi]);
        FrameCounts counts;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            RandomStream rng = RandomStream::for_trial(cfg.master_seed, kBerStream + pi, b);
            auto [m, c] = random_codeword(code, rng);
            DecodeOutcome out;
            if (soft)
                out = decode_any(code, spec, transmit_soft(ch, c, rng));
            else
                out = decode_any(code, spec, transmit_hard(ch, c, rng).first);
            counts.add(code, m, out);
        }
        report.add_row({code.name, decoder_name, channel_kind, format_number(params[pi]),
                        format_number(blocks), format_number(counts.ber()),
                        format_number(counts.fer()),
                        format_number(ci95_halfwidth(counts.ber(), counts.message_bits)),
                        format_number(ci95_halfwidth(counts.fer(), counts.frames))});
    }
    return report;
}

inline std::vector<BitVector> case1_targets(const ExperimentConfig& cfg,
                                            const LinearCode& code) {
    if (!cfg.case1_targets.empty()) {
        std::vector<BitVector> targets;
        std::istringstream ss(cfg.case1_targets);
        std::string item;
        while (std::getline(ss, item, ','))
            targets.push_back(BitVector::from_string(detail::trim(item)));
        return targets;
    }
    // default: five distinct fixed messages
    std::vector<BitVector> targets;
    for (std::uint64_t i = 1; i <= 5; ++i)
        targets.push_back(code.message_from_index(i % (std::uint64_t{1} << code.k)));
    return targets;
}

/// Case I: broadcast the five trigger codewords at an unprotected decoder
/// and at an enveloped one. Trigger memory is reset between attempts, so
/// each attempt is one aligned trigger window. With
/// trojan.power_cycle_each_block the decoder is powered off for
/// trojan.idle_us between blocks, which defeats even the unprotected
/// trigger unless its memory retention outlasts the idle.
inline SimReport run_case1(const ExperimentConfig& cfg) {
    LinearCode code = build_named_code(cfg.code_name);
    DecoderSpec spec{parse_decoder_kind(cfg.decoder.empty() ? "ml-hard" : cfg.decoder),
                     cfg.bp_max_iterations};
    if (spec.wants_soft_input())
        throw ConfigError("case1: the broadcast attack transmits hard codewords; "
                          "use ml-hard or bounded-distance");
    std::vector<BitVector> targets = case1_targets(cfg, code);
    std::vector<BitVector> blocks = craft_sequence_attack(code, targets);
    std::uint64_t attempts = cfg.trials ? cfg.trials : 1000000;
    Retention retention = parse_retention(cfg.retention);

    SimReport report;
    report.scenario = "case1";
    report.columns = {"mode", "attempts", "activations", "first_activation_attempt"};
    for (bool enveloped : {false, true}) {
        std::uint64_t activations = 0, first = 0;
        TrojanState trojan = make_case1_trojan(targets, retention);
        for (std::uint64_t a = 0; a < attempts; ++a) {
            reset_trojan(trojan);
            RandomStream rng = RandomStream::for_trial(cfg.master_seed, kCase1Mask, a);
            for (const BitVector& c : blocks) {
                if (enveloped) {
                    enveloped_decode(
                        code,
                        [&](const DecoderInput& in) {
                            return trojan_decode(trojan, code, spec, in);
                        },
                        c, rng);
                } else {
                    trojan_decode(trojan, code, spec, c);
                }
                if (cfg.power_cycle_each_block) power_cycle(trojan, cfg.idle_us);
            }
            if (trojan.activated) {
                ++activations;
                if (!first) first = a + 1;
            }
            if (!enveloped && a == 0) break;  // deterministic: triggers on attempt 1
        }
        report.add_row({enveloped ? "enveloped" : "unprotected",
                        format_number(enveloped ? attempts : std::uint64_t{1}),
                        format_number(activations), format_number(first)});
    }
    return report;
}

struct Case2Row {
    std::string mode;
    std::uint64_t blocks = 0;
    std::uint64_t extractions = 0;
    FrameCounts counts;
};

/// Case II: superficial-error signaling under masking, without and with
/// dithered retries. The channel draws are paired across modes.
inline SimReport run_case2(const ExperimentConfig& cfg) {
    LinearCode code = build_named_code(cfg.code_name);
    std::string decoder_name = cfg.decoder.empty() ? "ml-soft" : cfg.decoder;
    DecoderSpec spec{parse_decoder_kind(decoder_name), cfg.bp_max_iterations};
    if (!spec.wants_soft_input())
        throw ConfigError("case2: dithering needs a soft decoder (ml-soft or bp-minsum)");
    BitVector e_sup;
    if (!cfg.case2_esup.empty()) {
        e_sup = BitVector::from_string(cfg.case2_esup);
        if (e_sup.size() != code.n) throw ConfigError("case2: e_sup length must equal n");
    } else {
        e_sup = BitVector(code.n);
        e_sup.set(0, 1);
    }
    double ebn0 = cfg.ebn0_db.front();
    ChannelModel ch = ChannelModel::bpsk_awgn(ebn0, code.rate(), cfg.llr_bits);
    std::uint64_t blocks = cfg.trials ? cfg.trials : 100000;

    auto run_mode = [&](const std::string& mode) {
        bool noiseless = mode == "masked-noiseless";
        bool dithered = mode == "masked-dithered";
        Case2Row row;
        row.mode = mode;
        row.blocks = blocks;
        TrojanState trojan = make_case2_trojan(e_sup);
        std::uint64_t mask_stream = dithered ? kCase2MaskDith : kCase2MaskPlain;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            RandomStream chan_rng = RandomStream::for_trial(cfg.master_seed, kCase2Chan, b);
            auto [m, c] = random_codeword(code, chan_rng);
            // noiseless mode: the attacker fully overpowers the channel up to
            // a residual flip probability; channel mode: AWGN supplies the
            // residual noise
            LlrVector llr =
                noiseless
                    ? noiseless_llr(inject_superficial_error(c, e_sup, cfg.residual_p,
                                                             chan_rng),
                                    cfg.llr_bits)
                    : transmit_soft(ch, c ^ e_sup, chan_rng);
            RandomStream mask_rng = RandomStream::for_trial(cfg.master_seed, mask_stream, b);
            RandomStream dith_rng = RandomStream::for_trial(cfg.master_seed, kCase2Dither, b);
            std::uint64_t before = trojan.match_count;
            DecodeOutcome out = enveloped_decode(
                code,
                [&](const DecoderInput& masked) {
                    if (!dithered) return trojan_decode(trojan, code, spec, masked);
                    return dithered_decode(
                        [&](const LlrVector& dl) {
                            return trojan_decode(trojan, code, spec, dl);
                        },
                        std::get<LlrVector>(masked), cfg.dither_trials, cfg.dither_sigma,
                        dith_rng);
                },
                llr, mask_rng);
            if (trojan.match_count > before) ++row.extractions;
            row.counts.add(code, m, out);
        }
        return row;
    };

    SimReport report;
    report.scenario = "case2";
    report.columns = {"mode",     "blocks",  "extraction_rate", "extraction_ci95",
                      "fer",      "fer_ci95", "ebn0_db",        "dither_sigma",
                      "dither_trials"};
    for (const char* mode : {"masked-noiseless", "masked-undithered", "masked-dithered"}) {
        Case2Row row = run_mode(mode);
        bool dithered = row.mode == "masked-dithered";
        bool noiseless = row.mode == "masked-noiseless";
        double rate = row.blocks ? double(row.extractions) / double(row.blocks) : 0.0;
        report.add_row({row.mode, format_number(row.blocks), format_number(rate),
                        format_number(ci95_halfwidth(rate, row.blocks)),
                        format_number(row.counts.fer()),
                        format_number(ci95_halfwidth(row.counts.fer(), row.blocks)),
                        noiseless ? std::string("inf") : format_number(ebn0),
                        format_number(dithered ? cfg.dither_sigma : 0.0),
                        format_number(dithered ? cfg.dither_trials : 1)});
    }
    return report;
}

/// Case III: trigger timing, per-symbol recovery against the analytic
/// value, and the policy sweep. The CSV is the sweep in its canonical
/// column order; parts (a) and (b) are reported as summary notes.
inline SimReport run_case3(const ExperimentConfig& cfg) {
    LinearCode code = build_named_code(cfg.code_name);
    std::string decoder_name = cfg.decoder.empty() ? "ml-soft" : cfg.decoder;
    DecoderSpec spec{parse_decoder_kind(decoder_name), cfg.bp_max_iterations};
    std::string pattern = cfg.case3_pattern.empty() ? kFsTriggerPattern : cfg.case3_pattern;
    ChannelModel traffic = ChannelModel::bpsk_awgn(cfg.attacker_ebn0_db, code.rate(), cfg.llr_bits);
    auto make_decoy = [&](RandomStream& r) -> DecoderInput {
        return transmit_soft(traffic, random_codeword(code, r).second, r);
    };

    SimReport report;
    report.scenario = "case3";
    report.columns = {"num_decoders", "decoy_rate", "R", "trials", "recovery_rate", "ci95"};

    // part (a): single decoder, R = 1: the trigger fires at the last symbol
    {
        std::vector<DecoderInput> stream = craft_fs_signal(pattern, 1, code, spec);
        std::vector<TrojanedDecoder> decoders(1);
        decoders[0] = {&code, spec, make_case3_trojan(pattern), {}};
        RandomStream rng = RandomStream::for_trial(cfg.master_seed, kCase3PartA, 0);
        dispatch_decode(DispatchPolicy{1, 0.0, 0}, decoders, stream, make_decoy, rng);
        report.notes.push_back(
            "part a: single decoder, R=1: trojan " +
            std::string(decoders[0].state.activated ? "activated" : "NOT activated") +
            " at symbol " + std::to_string(decoders[0].state.activation_at) + " of " +
            std::to_string(pattern.size()));
    }

    // part (b): two decoders, no decoys: per-symbol recovery vs 1 - 2^-R
    {
        std::uint64_t symbols = cfg.fs_symbols;
        RandomStream rng = RandomStream::for_trial(cfg.master_seed, kCase3PartB, 0);
        std::string payload;
        payload.reserve(symbols);
        for (std::uint64_t i = 0; i < symbols; ++i) payload.push_back(rng.bit() ? 's' : 'f');
        std::vector<DecoderInput> stream = craft_fs_signal(payload, cfg.repetition, code, spec);
        std::vector<TrojanedDecoder> decoders(2);
        decoders[0] = {&code, spec, make_case3_trojan(pattern), {}};
        decoders[1] = {&code, spec, make_clean_observer(), {}};
        dispatch_decode(DispatchPolicy{2, 0.0, 0}, decoders, stream, make_decoy, rng);
        RecoveryReport rec = recover_fs_message(decoders[0].state.timing_history,
                                                cfg.repetition, false, payload);
        std::uint64_t correct = 0;
        for (std::size_t i = 0; i < payload.size(); ++i)
            if (rec.recovered[i] == payload[i]) ++correct;
        double rate = double(correct) / double(symbols);
        double analytic = 1.0 - std::pow(0.5, cfg.repetition);
        report.notes.push_back("part b: 2 decoders, R=" + std::to_string(cfg.repetition) +
                               ": per-symbol recovery " + format_number(rate) +
                               " vs analytic " + format_number(analytic));
    }

    // part (c): the sweep, written as the CSV
    AttackPlan plan;
    plan.kind = AttackPlan::Kind::fs_signaling;
    plan.fs_payload = pattern;
    plan.repetition = cfg.repetition;
    plan.traffic_ebn0_db = cfg.attacker_ebn0_db;
    SweepGrid grid{cfg.sweep_num_decoders, cfg.sweep_decoy_rates};
    std::uint64_t trials = cfg.trials ? cfg.trials : 400;
    DispatchPolicy base{1, 0.0, cfg.reorder_depth};
    std::vector<SweepPoint> table =
        attack_success_sweep(plan, grid, base, trials, code, spec, cfg.master_seed);
    for (const SweepPoint& pt : table)
        report.add_row({format_number(pt.num_decoders), format_number(pt.decoy_rate),
                        format_number(pt.repetition), format_number(pt.trials),
                        format_number(pt.recovery_rate), format_number(pt.ci95)});
    return report;
}

/// Link-seal demonstration: roundtrip identity, tap statistics of a
/// constant payload in seed-cyclic mode, the mismatched-seed transplant
/// failure, and sealed-vs-direct pipeline equivalence.
inline SimReport run_link_demo(const ExperimentConfig& cfg) {
    LinearCode code = build_named_code(cfg.code_name);
    DecoderSpec spec{parse_decoder_kind(cfg.decoder.empty() ? "ml-hard" : cfg.decoder),
                     cfg.bp_max_iterations};
    SealMode mode = cfg.seal_mode == "stream" ? SealMode::stream
                    : cfg.seal_mode == "seed-cyclic"
                        ? SealMode::seed_cyclic
                        : throw ConfigError("link.mode must be stream or seed-cyclic");
    std::uint64_t trials = cfg.trials ? cfg.trials : 10000;

    RandomStream seed_rng = RandomStream::for_trial(cfg.master_seed, kLinkSeed, 0);
    DeviceSeed seed_a = generate_seed(seed_rng, cfg.seed_length);
    DeviceSeed seed_b = generate_seed(seed_rng, cfg.seed_length);  // a different device

    SimReport report;
    report.scenario = "link-demo";
    report.columns = {"metric", "value"};

    {  // roundtrip identity over random payloads
        SealedLink tx(seed_a, mode), rx(seed_a, mode);
        RandomStream rng = RandomStream::for_trial(cfg.master_seed, kLinkRoundtrip, 0);
        std::uint64_t failures = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            BitVector payload = BitVector::random(1 + rng.uniform_below(256), rng);
            if (rx.unseal(tx.seal(payload)) != payload) ++failures;
        }
        report.add_row({"roundtrip_blocks", format_number(trials)});
        report.add_row({"roundtrip_failures", format_number(failures)});
    }

    {  // tap: constant payload, ciphertext should look uniform
        SealedLink tx(seed_a, mode);
        BitVector payload = encode(code, code.message_from_index(1));
        BitVector tapped(cfg.tap_bits);
        std::uint64_t filled = 0;
        while (filled < cfg.tap_bits) {
            BitVector sealed = tx.seal(payload);
            for (std::size_t i = 0; i < sealed.size() && filled < cfg.tap_bits; ++i)
                tapped.set(filled++, sealed.get(i));
        }
        report.add_row({"tap_bits", format_number(cfg.tap_bits)});
        report.add_row({"tap_monobit_z", format_number(monobit_z(tapped))});
        report.add_row({"tap_runs_z", format_number(runs_z(tapped))});
    }

    {  // transplanted module with the wrong seed: block error rate ~ 1 - 2^-k
        SealedLink tx(seed_a, mode), rx(seed_b, mode);
        RandomStream rng = RandomStream::for_trial(cfg.master_seed, kLinkMismatch, 0);
        std::uint64_t errors = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            auto [m, c] = random_codeword(code, rng);
            DecodeOutcome out = decode_any(code, spec, rx.unseal(tx.seal(c)));
            if (!out.ok() || out.message != m) ++errors;
        }
        report.add_row({"mismatch_blocks", format_number(trials)});
        report.add_row(
            {"mismatch_block_error_rate", format_number(double(errors) / double(trials))});
    }

    {  // sealed pipeline behaves exactly like the direct pipeline
        ChannelModel ch = ChannelModel::bsc(cfg.bsc_p.front());
        SealedLink tx(seed_a, mode), rx(seed_a, mode);
        SealedLink tx2(seed_a, mode), rx2(seed_a, mode);
        std::uint64_t mismatches = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            RandomStream rng = RandomStream::for_trial(cfg.master_seed, kLinkPipeline, t);
            auto [m, c] = random_codeword(code, rng);
            BitVector r = transmit_hard(ch, c, rng).first;
            DecodeOutcome direct = decode_any(code, spec, r);
            DecodeOutcome sealed_out = decode_any(code, spec, rx.unseal(tx.seal(r)));
            if (sealed_out.ok())
                sealed_out.message = rx2.unseal(tx2.seal(sealed_out.message));
            if (!(direct == sealed_out)) ++mismatches;
            (void)m;
        }
        report.add_row({"pipeline_trials", format_number(trials)});
        report.add_row({"pipeline_mismatches", format_number(mismatches)});
    }
    return report;
}

inline SimReport run_seqprob(const ExperimentConfig& cfg) {
    std::uint64_t n_f = 0, n_s = 0;
    for (char c : cfg.seq_pattern) (c == 'f' ? n_f : n_s) += 1;
    double lp = sequence_log_probability(cfg.seq_pattern, cfg.seq_p_f);
    SimReport report;
    report.scenario = "seqprob";
    report.columns = {"pattern_length", "n_f", "n_s", "p_f", "log10_probability"};
    report.add_row({format_number(std::uint64_t{cfg.seq_pattern.size()}), format_number(n_f),
                    format_number(n_s), format_number(cfg.seq_p_f), format_number(lp)});
    return report;
}

}  // namespace scenario

/// Run one experiment. Pure function of (config, master_seed); the report
/// carries wall time for the human summary only.
inline SimReport run_experiment(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SimReport report;
    if (cfg.scenario == "ber-baseline") report = scenario::run_ber(cfg);
    else if (cfg.scenario == "case1") report = scenario::run_case1(cfg);
    else if (cfg.scenario == "case2") report = scenario::run_case2(cfg);
    else if (cfg.scenario == "case3") report = scenario::run_case3(cfg);
    else if (cfg.scenario == "link-demo") report = scenario::run_link_demo(cfg);
    else if (cfg.scenario == "seqprob") report = scenario::run_seqprob(cfg);
    else
        throw ConfigError("unknown scenario \"" + cfg.scenario +
                          "\" (ber-baseline, case1, case2, case3, link-demo, seqprob)");
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace declab
