#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "declab/sim.hpp"
#include "helpers.hpp"

using namespace declab;

TEST_CASE("sequence_log_probability") {
    SECTION("the 88-symbol trigger at p_f = 1e-5") {
        double lp = sequence_log_probability(kFsTriggerPattern, 1e-5);
        CHECK(lp == Catch::Approx(-220.0).margin(0.5));
    }
    SECTION("single symbols") {
        CHECK(sequence_log_probability("f", 0.5) == Catch::Approx(-0.30103).margin(1e-5));
        CHECK(sequence_log_probability("s", 1e-12) == Catch::Approx(0.0).margin(1e-9));
    }
    SECTION("long patterns stay exact in the log domain") {
        std::string big(1000000, 'f');
        CHECK(sequence_log_probability(big, 1e-5) == Catch::Approx(-5000000.0));
    }
    SECTION("domain checks") {
        CHECK_THROWS_AS(sequence_log_probability("fs", 0.0), DomainError);
        CHECK_THROWS_AS(sequence_log_probability("fs", 1.0), DomainError);
        CHECK_THROWS_AS(sequence_log_probability("fx", 0.5), DomainError);
    }
}

TEST_CASE("config parsing") {
    ExperimentConfig cfg;
    apply_config_entry(cfg, "code", "ldpc-small");
    apply_config_entry(cfg, "channel.bsc_p", "0.01, 0.02,0.05");
    apply_config_entry(cfg, "trojan.retention", "capacitive:5.5");
    apply_config_entry(cfg, "seed", "12345");
    CHECK(cfg.code_name == "ldpc-small");
    CHECK(cfg.bsc_p == std::vector<double>{0.01, 0.02, 0.05});
    CHECK(parse_retention(cfg.retention).capacitive);
    CHECK(parse_retention(cfg.retention).hold_us == 5.5);
    CHECK(cfg.master_seed == 12345);
    CHECK_THROWS_AS(apply_config_entry(cfg, "no.such.key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "trials", "abc"), ConfigError);
    CHECK_THROWS_AS(parse_retention("sticky"), ConfigError);
    CHECK_THROWS_AS(parse_decoder_kind("viterbi"), ConfigError);
}

TEST_CASE("config file loading") {
    std::string path = "declab_test_config.tmp";
    {
        std::ofstream f(path);
        f << "# comment\n\nscenario = seqprob\nseq.p_f = 1e-4\n";
    }
    ExperimentConfig cfg;
    load_config_file(cfg, path);
    CHECK(cfg.scenario == "seqprob");
    CHECK(cfg.seq_p_f == 1e-4);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config_file(cfg, "/nonexistent/path.cfg"), IoError);
}

TEST_CASE("invalid scenario fails before simulating") {
    ExperimentConfig cfg;
    cfg.scenario = "warp-drive";
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("ber-baseline: p = 0 gives zero errors") {
    ExperimentConfig cfg;
    cfg.scenario = "ber-baseline";
    cfg.bsc_p = {0.0};
    cfg.trials = 2000;
    SimReport report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0][5] == "0");  // ber
    CHECK(report.rows[0][6] == "0");  // fer
}

TEST_CASE("ber-baseline FER matches the truth-table oracle") {
    // oracle: exhaustive (codeword, error) enumeration weighted by binomial
    // probabilities, computed before the Monte-Carlo run
    LinearCode code = build_named_code("hamming-7-4");
    double p = 0.02;
    double fer_expect = 0.0;
    for (std::uint64_t mi = 0; mi < 16; ++mi) {
        BitVector c = (*code.codebook)[mi];
        for (std::uint64_t e = 0; e < 128; ++e) {
            BitVector ev = oracle::bits_of(e, 7);
            DecodeOutcome out = decode_ml_hard(code, c ^ ev);
            bool frame_error = !out.ok() || out.message != code.message_from_index(mi);
            if (frame_error)
                fer_expect += std::pow(p, double(ev.weight())) *
                              std::pow(1 - p, double(7 - ev.weight())) / 16.0;
        }
    }
    ExperimentConfig cfg;
    cfg.scenario = "ber-baseline";
    cfg.bsc_p = {p};
    cfg.trials = 200000;  // acceptance runs 1e6
    cfg.master_seed = 99;
    SimReport report = run_experiment(cfg);
    double fer = std::stod(report.rows[0][6]);
    double sd = std::sqrt(fer_expect * (1 - fer_expect) / double(cfg.trials));
    CHECK(std::abs(fer - fer_expect) < 3 * sd);
}

TEST_CASE("confidence interval shrinks as 1/sqrt(trials)") {
    ExperimentConfig cfg;
    cfg.scenario = "ber-baseline";
    cfg.bsc_p = {0.05};
    cfg.master_seed = 3;
    cfg.trials = 10000;
    double ci_small = std::stod(run_experiment(cfg).rows[0][8]);
    cfg.trials = 40000;
    double ci_big = std::stod(run_experiment(cfg).rows[0][8]);
    CHECK(ci_small / ci_big == Catch::Approx(2.0).margin(0.25));
}

TEST_CASE("reports are deterministic and roundtrip through CSV") {
    ExperimentConfig cfg;
    cfg.scenario = "ber-baseline";
    cfg.bsc_p = {0.01, 0.05};
    cfg.trials = 5000;
    cfg.master_seed = 42;
    SimReport a = run_experiment(cfg);
    SimReport b = run_experiment(cfg);
    CHECK(a.rows == b.rows);

    std::string p1 = "declab_test_a.csv", p2 = "declab_test_b.csv";
    write_csv(a, p1);
    write_csv(b, p2);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);  // byte-identical

    SimReport back = read_csv(p1);
    CHECK(back.columns == a.columns);
    CHECK(back.rows == a.rows);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("empty report writes a header-only file") {
    SimReport empty;
    empty.columns = {"a", "b"};
    std::string path = "declab_test_empty.csv";
    write_csv(empty, path);
    std::ifstream f(path);
    std::string line, rest;
    std::getline(f, line);
    CHECK(line == "a,b");
    bool has_more = bool(std::getline(f, rest)) && !rest.empty();
    CHECK_FALSE(has_more);
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_csv(empty, "/nonexistent/dir/x.csv"), IoError);
}

TEST_CASE("case1 scenario: unprotected triggers, enveloped survives") {
    ExperimentConfig cfg;
    cfg.scenario = "case1";
    cfg.trials = 5000;  // acceptance runs 1e6
    SimReport report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0][0] == "unprotected");
    CHECK(report.rows[0][2] == "1");  // activations
    CHECK(report.rows[0][3] == "1");  // on the first attempt
    CHECK(report.rows[1][0] == "enveloped");
    CHECK(report.rows[1][2] == "0");
}

TEST_CASE("case2 scenario: masking alone leaks, dither reduces") {
    ExperimentConfig cfg;
    cfg.scenario = "case2";
    cfg.trials = 20000;  // acceptance runs 1e5
    cfg.master_seed = 11;
    SimReport report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 3);
    double noiseless_rate = std::stod(report.rows[0][2]);
    double plain_rate = std::stod(report.rows[1][2]);
    double dithered_rate = std::stod(report.rows[2][2]);
    CHECK(noiseless_rate == 1.0);
    CHECK(dithered_rate < plain_rate);
}

TEST_CASE("link-demo scenario") {
    ExperimentConfig cfg;
    cfg.scenario = "link-demo";
    cfg.trials = 2000;
    cfg.tap_bits = 100000;
    cfg.seed_length = 1 << 18;
    SimReport report = run_experiment(cfg);
    auto value = [&](const std::string& metric) {
        for (const auto& row : report.rows)
            if (row[0] == metric) return std::stod(row[1]);
        FAIL("missing metric " + metric);
        return 0.0;
    };
    CHECK(value("roundtrip_failures") == 0);
    CHECK(std::abs(value("tap_monobit_z")) < 3.0);
    CHECK(std::abs(value("tap_runs_z")) < 3.0);
    CHECK(value("mismatch_block_error_rate") >= 0.9);
    CHECK(value("pipeline_mismatches") == 0);
}

TEST_CASE("seqprob scenario") {
    ExperimentConfig cfg;
    cfg.scenario = "seqprob";
    SimReport report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0][0] == "88");
    CHECK(report.rows[0][1] == "44");
    CHECK(std::stod(report.rows[0][4]) == Catch::Approx(-220.0).margin(0.5));
}
