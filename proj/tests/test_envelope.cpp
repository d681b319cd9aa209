#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "declab/envelope.hpp"
#include "declab/trojans.hpp"
#include "helpers.hpp"

using namespace declab;

TEST_CASE("mask_hard identity, involution, error preservation") {
    LinearCode code = build_named_code("hamming-7-4");
    RandomStream rng(41);
    MaskPair zero{BitVector(4), BitVector(7)};
    BitVector r = BitVector::from_string("1011010");
    CHECK(mask_hard(r, zero) == r);
    MaskPair mask = draw_mask(code, rng);
    CHECK(mask_hard(mask_hard(r, mask), mask) == r);
    CHECK(mask.c_x == encode(code, mask.m_x));
    // r = c + e masked: the error vector is untouched
    BitVector c = encode(code, BitVector::from_string("0110"));
    BitVector e = BitVector::from_string("0100000");
    CHECK((mask_hard(c ^ e, mask) ^ (c ^ mask.c_x)) == e);
}

TEST_CASE("mask_soft flips signs, preserves magnitudes") {
    LinearCode code = build_named_code("hamming-7-4");
    RandomStream rng(42);
    for (int t = 0; t < 200; ++t) {
        // zero-free, as the channel quantizer emits: the hard-decision
        // identity cannot hold at an exact zero under the bit-0 tie rule
        LlrVector llr = oracle::random_llr_nonzero(7, rng);
        MaskPair mask = draw_mask(code, rng);
        LlrVector masked = mask_soft(llr, mask);
        for (std::size_t i = 0; i < 7; ++i) {
            CHECK(std::abs(masked.values[i]) == std::abs(llr.values[i]));
            int expect = mask.c_x.get(i) ? -llr.values[i] : llr.values[i];
            CHECK(masked.values[i] == expect);
        }
        CHECK(hard_decision(masked) == (hard_decision(llr) ^ mask.c_x));
    }
    MaskPair zero{BitVector(4), BitVector(7)};
    LlrVector llr = oracle::random_llr(7, rng);
    CHECK(mask_soft(llr, zero) == llr);
}

TEST_CASE("unmask_message is the inverse shift") {
    RandomStream rng(43);
    BitVector m = BitVector::random(4, rng);
    MaskPair mask{BitVector::random(4, rng), BitVector(7)};
    CHECK(unmask_message(m ^ mask.m_x, mask) == m);
    MaskPair zero{BitVector(4), BitVector(7)};
    CHECK(unmask_message(m, zero) == m);
}

TEST_CASE("mask transparency, exhaustive: mask/decode/unmask equals direct decode") {
    LinearCode code = build_named_code("hamming-7-4");
    for (std::uint64_t x = 0; x < 128; ++x) {
        BitVector r = oracle::bits_of(x, 7);
        DecodeOutcome direct = decode_ml_hard(code, r);
        for (std::uint64_t i = 0; i < 16; ++i) {
            MaskPair mask{code.message_from_index(i), (*code.codebook)[i]};
            DecodeOutcome shifted = decode_ml_hard(code, mask_hard(r, mask));
            REQUIRE(shifted.ok() == direct.ok());
            if (direct.ok())
                CHECK(unmask_message(shifted.message, mask) == direct.message);
        }
    }
}

TEST_CASE("enveloped_decode equals direct decode, random masks") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec hard{DecoderKind::ml_hard};
    DecoderSpec soft{DecoderKind::ml_soft};
    RandomStream rng(44);
    auto inner_hard = [&](const DecoderInput& in) { return decode_any(code, hard, in); };
    auto inner_soft = [&](const DecoderInput& in) { return decode_any(code, soft, in); };
    for (int t = 0; t < 5000; ++t) {
        BitVector r = BitVector::random(7, rng);
        CHECK(enveloped_decode(code, inner_hard, r, rng) == decode_ml_hard(code, r));
        LlrVector llr = oracle::random_llr(7, rng);
        CHECK(enveloped_decode(code, inner_soft, llr, rng) == decode_ml_soft(code, llr));
    }
}

TEST_CASE("masking does not change the extractable error vector") {
    // what a case2 trojan computes, with and without the mask
    LinearCode code = build_named_code("hamming-7-4");
    RandomStream rng(54);
    for (int t = 0; t < 2000; ++t) {
        BitVector r = BitVector::random(7, rng);
        MaskPair mask = draw_mask(code, rng);
        DecodeOutcome direct = decode_ml_hard(code, r);
        DecodeOutcome shifted = decode_ml_hard(code, mask_hard(r, mask));
        REQUIRE(direct.ok());
        REQUIRE(shifted.ok());
        BitVector e_direct = r ^ encode(code, direct.message);
        BitVector e_masked = mask_hard(r, mask) ^ encode(code, shifted.message);
        CHECK(e_direct == e_masked);
    }
}

TEST_CASE("envelope defeats the case1 sequence trigger") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    std::vector<BitVector> targets;
    for (std::uint64_t i = 1; i <= 5; ++i) targets.push_back(code.message_from_index(i));

    TrojanState unprotected = make_case1_trojan(targets);
    for (const auto& m : targets) trojan_decode(unprotected, code, spec, encode(code, m));
    CHECK(unprotected.activated);  // construction: fires on the first attempt

    TrojanState shielded = make_case1_trojan(targets);
    RandomStream rng(45);
    const int attempts = 20000;  // acceptance runs the full 1e6
    for (int a = 0; a < attempts; ++a) {
        reset_trojan(shielded);
        for (const auto& m : targets)
            enveloped_decode(
                code,
                [&](const DecoderInput& in) {
                    return trojan_decode(shielded, code, spec, in);
                },
                encode(code, m), rng);
        CHECK_FALSE(shielded.activated);
    }
}

TEST_CASE("dither: sigma 0 equals a single plain decode") {
    LinearCode code = build_named_code("hamming-7-4");
    RandomStream rng(46);
    auto inner = [&](const LlrVector& l) { return decode_ml_soft(code, l); };
    for (int t = 0; t < 200; ++t) {
        LlrVector llr = oracle::random_llr(7, rng);
        CHECK(dithered_decode(inner, llr, 4, 0.0, rng) == decode_ml_soft(code, llr));
    }
}

TEST_CASE("dither clamps to the llr range") {
    RandomStream rng(47);
    LlrVector llr = oracle::random_llr(96, rng);
    LlrVector d = dither_llr(llr, 50.0, rng);
    for (int v : d.values) {
        CHECK(v >= -15);
        CHECK(v <= 15);
    }
}

TEST_CASE("dithered retries can rescue a failing decode") {
    // all-zero llr always ties for ml-soft; dither breaks the tie
    LinearCode code = build_named_code("hamming-7-4");
    RandomStream rng(48);
    auto inner = [&](const LlrVector& l) { return decode_ml_soft(code, l); };
    LlrVector zeros = LlrVector::zeros(7);
    CHECK_FALSE(decode_ml_soft(code, zeros).ok());
    int rescued = 0;
    for (int t = 0; t < 50; ++t)
        if (dithered_decode(inner, zeros, 8, 2.0, rng).ok()) ++rescued;
    CHECK(rescued > 0);
}

TEST_CASE("dispatch: degenerate policy equals direct decoding") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    RandomStream rng(49);
    std::vector<DecoderInput> inputs;
    for (int i = 0; i < 200; ++i) inputs.emplace_back(BitVector::random(7, rng));
    std::vector<TrojanedDecoder> ds(1);
    ds[0] = {&code, spec, make_clean_observer(), {}};
    auto decoy = [&](RandomStream& r) -> DecoderInput { return BitVector::random(7, r); };
    RandomStream drng(50);
    auto outcomes = dispatch_decode(DispatchPolicy{1, 0.0, 0}, ds, inputs, decoy, drng);
    for (std::size_t i = 0; i < inputs.size(); ++i)
        CHECK(outcomes[i] == decode_any(code, spec, inputs[i]));
    CHECK(ds[0].observed.find('I') == std::string::npos);
}

TEST_CASE("dispatch: outcomes keep input order under reordering") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    RandomStream rng(51);
    // distinct single-flip inputs so each outcome identifies its block
    std::vector<DecoderInput> inputs;
    std::vector<BitVector> truths;
    for (int i = 0; i < 300; ++i) {
        auto [m, c] = random_codeword(code, rng);
        inputs.emplace_back(c);
        truths.push_back(m);
    }
    std::vector<TrojanedDecoder> ds(3);
    for (auto& d : ds) d = {&code, spec, make_clean_observer(), {}};
    auto decoy = [&](RandomStream& r) -> DecoderInput { return BitVector::random(7, r); };
    auto outcomes =
        dispatch_decode(DispatchPolicy{3, 0.5, 8}, ds, inputs, decoy, rng);
    REQUIRE(outcomes.size() == inputs.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        REQUIRE(outcomes[i].ok());
        CHECK(outcomes[i].message == truths[i]);
    }
}

TEST_CASE("dispatch: two decoders see about half idle slots") {
    LinearCode code = build_named_code("hamming-7-4");
    DecoderSpec spec{DecoderKind::ml_hard};
    RandomStream rng(52);
    const int blocks = 10000;
    std::vector<DecoderInput> inputs(blocks, DecoderInput(BitVector(7)));
    std::vector<TrojanedDecoder> ds(2);
    for (auto& d : ds) d = {&code, spec, make_clean_observer(), {}};
    auto decoy = [&](RandomStream& r) -> DecoderInput { return BitVector::random(7, r); };
    dispatch_decode(DispatchPolicy{2, 0.0, 0}, ds, inputs, decoy, rng);
    for (const auto& d : ds) {
        double idle_frac =
            double(std::count(d.observed.begin(), d.observed.end(), 'I')) / blocks;
        CHECK(std::abs(idle_frac - 0.5) < 3 * std::sqrt(0.25 / blocks));
    }
}

TEST_CASE("dispatch validates the policy") {
    LinearCode code = build_named_code("hamming-7-4");
    std::vector<TrojanedDecoder> ds(1);
    ds[0] = {&code, DecoderSpec{DecoderKind::ml_hard}, make_clean_observer(), {}};
    std::vector<DecoderInput> inputs;
    auto decoy = [&](RandomStream& r) -> DecoderInput { return BitVector::random(7, r); };
    RandomStream rng(53);
    CHECK_THROWS_AS(dispatch_decode(DispatchPolicy{2, 0.0, 0}, ds, inputs, decoy, rng),
                    ConfigError);
    CHECK_THROWS_AS(dispatch_decode(DispatchPolicy{1, 1.5, 0}, ds, inputs, decoy, rng),
                    ConfigError);
}
