#include <catch2/catch_amalgamated.hpp>

#include "declab/trojans.hpp"
#include "helpers.hpp"

using namespace declab;

namespace {

std::vector<BitVector> default_targets(const LinearCode& code) {
    std::vector<BitVector> t;
    for (std::uint64_t i = 1; i <= 5; ++i) t.push_back(code.message_from_index(i));
    return t;
}

}  // namespace

TEST_CASE("case1 trigger fires on the exact sequence") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    auto targets = default_targets(code);
    TrojanState trojan = make_case1_trojan(targets);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        CHECK_FALSE(trojan.activated);
        trojan_decode(trojan, code, spec, encode(code, targets[i]));
    }
    CHECK(trojan.activated);
    CHECK(trojan.activation_at == 5);
}

TEST_CASE("case1 near-miss does not fire") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    auto targets = default_targets(code);
    TrojanState trojan = make_case1_trojan(targets);
    for (std::size_t i = 0; i < 4; ++i)
        trojan_decode(trojan, code, spec, encode(code, targets[i]));
    trojan_decode(trojan, code, spec, encode(code, code.message_from_index(9)));
    CHECK_FALSE(trojan.activated);
    // history window stays bounded
    CHECK(trojan.recent_messages.size() == 5);
}

TEST_CASE("stealth: trojan output is bit-identical to the inner decoder") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    TrojanState trojan = make_case1_trojan(default_targets(code));
    for (std::uint64_t x = 0; x < 128; ++x) {
        BitVector r = oracle::bits_of(x, 7);
        DecodeOutcome direct = decode_ml_hard(code, r);
        DecodeOutcome via = trojan_decode(trojan, code, spec, r);
        CHECK(direct == via);
    }
}

TEST_CASE("case1 false-trigger rate on random windows") {
    // reduced 3-message target so the rate 16^-3 is measurable
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    std::vector<BitVector> targets = {code.message_from_index(3), code.message_from_index(7),
                                      code.message_from_index(12)};
    RandomStream rng(31);
    const std::uint64_t windows = 1000000;
    std::uint64_t hits = 0;
    TrojanState trojan = make_case1_trojan(targets);
    for (std::uint64_t w = 0; w < windows; ++w) {
        reset_trojan(trojan);
        for (int i = 0; i < 3; ++i)
            trojan_decode(trojan, code, spec, random_codeword(code, rng).second);
        if (trojan.activated) ++hits;
    }
    double p = std::pow(16.0, -3.0);
    double sd = std::sqrt(p * (1 - p) / windows);
    CHECK(std::abs(double(hits) / windows - p) < 3 * sd);
}

TEST_CASE("case2 extracts the visible error vector") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_soft};
    BitVector e_sup = BitVector::from_string("0010000");
    TrojanState trojan = make_case2_trojan(e_sup);
    RandomStream rng(32);
    SECTION("matching error triggers") {
        auto [m, c] = random_codeword(code, rng);
        trojan_decode(trojan, code, spec, noiseless_llr(c ^ e_sup));
        CHECK(trojan.activated);
        CHECK(trojan.match_count == 1);
    }
    SECTION("clean traffic does not trigger") {
        for (int i = 0; i < 100; ++i) {
            auto [m, c] = random_codeword(code, rng);
            trojan_decode(trojan, code, spec, noiseless_llr(c));
        }
        CHECK_FALSE(trojan.activated);
    }
    SECTION("failed decode skips matching") {
        trojan_decode(trojan, code, spec, LlrVector::zeros(7));
        CHECK_FALSE(trojan.activated);
        CHECK(trojan.decode_count == 1);
    }
}

TEST_CASE("case3 plain matcher fires at the final symbol") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_soft};
    TrojanState trojan = make_case3_trojan(kFsTriggerPattern);
    LlrVector fail_in = LlrVector::zeros(7);
    LlrVector success_in = noiseless_llr(encode(code, BitVector(4)));
    for (std::size_t i = 0; i < kFsTriggerPattern.size(); ++i) {
        CHECK_FALSE(trojan.activated);
        trojan_decode(trojan, code, spec,
                      kFsTriggerPattern[i] == 'f' ? fail_in : success_in);
    }
    CHECK(trojan.activated);
    CHECK(trojan.activation_at == 88);
    CHECK(trojan.recent_symbols.size() == 88);
}

TEST_CASE("observe_timing records idles without advancing the matcher") {
    TrojanState trojan = make_case3_trojan("ff");
    for (char c : std::string("IfIfII"))
        observe_timing(trojan, static_cast<OutcomeSymbol>(c));
    CHECK(trojan.timing_history == "IfIfII");
    CHECK(trojan.activated);  // two non-idle f symbols
    TrojanState idle_only = make_case3_trojan("f");
    for (int i = 0; i < 10; ++i) observe_timing(idle_only, OutcomeSymbol::idle);
    CHECK_FALSE(idle_only.activated);
    CHECK(idle_only.symbol_count == 0);

    TrojanState wrong_kind = make_case2_trojan(BitVector(7));
    CHECK_THROWS_AS(observe_timing(wrong_kind, OutcomeSymbol::idle), ConfigError);
}

TEST_CASE("power_cycle semantics") {
    TrojanState volatile_t = make_case3_trojan("fff");
    observe_timing(volatile_t, OutcomeSymbol::failure);
    power_cycle(volatile_t, 0.1);
    CHECK(volatile_t.recent_symbols.empty());
    CHECK(volatile_t.timing_history.empty());

    TrojanState cap = make_case3_trojan("fff", Retention::capacitive_memory(5.0));
    observe_timing(cap, OutcomeSymbol::failure);
    power_cycle(cap, 2.0);  // shorter than the hold time: memory survives
    CHECK(cap.recent_symbols.size() == 1);
    power_cycle(cap, 10.0);
    CHECK(cap.recent_symbols.empty());
}

TEST_CASE("activation is monotone across power cycles") {
    TrojanState trojan = make_case3_trojan("f");
    observe_timing(trojan, OutcomeSymbol::failure);
    REQUIRE(trojan.activated);
    power_cycle(trojan, 1e6);
    CHECK(trojan.activated);
    reset_trojan(trojan);
    CHECK_FALSE(trojan.activated);  // only the explicit experiment reset clears it
}

TEST_CASE("trojan construction validates targets") {
    CHECK_THROWS_AS(make_case3_trojan("fsx"), ConfigError);
    CHECK_THROWS_AS(make_case3_trojan(""), ConfigError);
    CHECK_THROWS_AS(make_case1_trojan({}), ConfigError);
}
