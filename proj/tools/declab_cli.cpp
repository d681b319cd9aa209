// declab command-line front end: one subcommand per experiment scenario,
// flat key=value config files, --set overrides, CSV output.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "declab/declab.hpp"

namespace {

void print_summary(const declab::SimReport& report, const std::string& out_path) {
    std::printf("scenario: %s\n", report.scenario.c_str());
    for (const auto& note : report.notes) std::printf("  %s\n", note.c_str());
    // header + rows, aligned on column width
    std::vector<std::size_t> width(report.columns.size());
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        width[i] = report.columns[i].size();
    for (const auto& row : report.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    auto print_row = [&](const std::vector<std::string>& row) {
        std::printf(" ");
        for (std::size_t i = 0; i < row.size(); ++i)
            std::printf(" %-*s", static_cast<int>(width[i]), row[i].c_str());
        std::printf("\n");
    };
    print_row(report.columns);
    for (const auto& row : report.rows) print_row(row);
    std::printf("wall time: %.2f s\n", report.wall_seconds);
    if (!out_path.empty()) std::printf("csv written: %s\n", out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"declab: channel-decoder Trojan attack and mitigation laboratory"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    std::string config_path, out_path;
    std::uint64_t seed = 0, trials = 0;
    bool quiet = false;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--seed", seed, "master seed (overrides config)");
    app.add_option("--out", out_path, "CSV output path (default declab_<scenario>.csv)");
    app.add_option("--trials", trials, "trial/attempt/block count (overrides config)");
    app.add_flag("--quiet", quiet, "suppress the human-readable summary");
    app.add_option("--set", overrides, "extra key=value override, repeatable");

    struct Sub {
        const char* name;
        const char* scenario;
        const char* help;
    };
    const Sub subs[] = {
        {"ber", "ber-baseline", "Monte-Carlo BER/FER baseline over a channel sweep"},
        {"case1", "case1", "codeword-sequence trigger vs the stochastic envelope"},
        {"case2", "case2", "superficial-error trigger vs masking and dithering"},
        {"case3", "case3", "failure/success-sequence trigger vs redundant dispatch"},
        {"linkdemo", "link-demo", "seed-based link encryption demonstrations"},
        {"seqprob", "seqprob", "log10 probability of an f/s sequence"},
    };
    // a few ergonomic per-subcommand options on top of --set
    std::string opt_code, opt_decoder, opt_pattern, opt_pf, opt_sigma, opt_rep;
    for (const Sub& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        cmd->add_option("--code", opt_code, "code name");
        cmd->add_option("--decoder", opt_decoder, "decoder kind");
        if (sub.scenario == std::string("seqprob")) {
            cmd->add_option("--pattern", opt_pattern, "f/s pattern");
            cmd->add_option("--pf", opt_pf, "per-decode failure probability");
        }
        if (sub.scenario == std::string("case2"))
            cmd->add_option("--dither-sigma", opt_sigma, "dither sigma in LLR steps");
        if (sub.scenario == std::string("case3"))
            cmd->add_option("--repetition", opt_rep, "attacker repetition factor R");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        declab::ExperimentConfig cfg;
        for (const Sub& sub : subs)
            if (app.get_subcommand(sub.name)->parsed()) cfg.scenario = sub.scenario;
        if (!config_path.empty()) declab::load_config_file(cfg, config_path);
        if (!opt_code.empty()) declab::apply_config_entry(cfg, "code", opt_code);
        if (!opt_decoder.empty()) declab::apply_config_entry(cfg, "decoder", opt_decoder);
        if (!opt_pattern.empty()) declab::apply_config_entry(cfg, "seq.pattern", opt_pattern);
        if (!opt_pf.empty()) declab::apply_config_entry(cfg, "seq.p_f", opt_pf);
        if (!opt_sigma.empty())
            declab::apply_config_entry(cfg, "envelope.dither_sigma", opt_sigma);
        if (!opt_rep.empty()) declab::apply_config_entry(cfg, "attack.repetition", opt_rep);
        for (const std::string& kv : overrides) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw declab::ConfigError("--set expects key=value, got \"" + kv + "\"");
            declab::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (seed) cfg.master_seed = seed;
        if (trials) cfg.trials = trials;

        declab::SimReport report = declab::run_experiment(cfg);
        std::string csv_path = out_path.empty() ? "declab_" + report.scenario + ".csv"
                                                : out_path;
        declab::write_csv(report, csv_path);
        if (!quiet) print_summary(report, csv_path);
        return 0;
    } catch (const declab::ConfigError& e) {
        std::fprintf(stderr, "error: config: %s\n", e.what());
    } catch (const declab::DimensionError& e) {
        std::fprintf(stderr, "error: dimension: %s\n", e.what());
    } catch (const declab::DomainError& e) {
        std::fprintf(stderr, "error: domain: %s\n", e.what());
    } catch (const declab::IoError& e) {
        std::fprintf(stderr, "error: io: %s\n", e.what());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
    }
    return 1;
}
